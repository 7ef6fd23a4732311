#pragma once

// Reduction of positive definite binary quadratic forms, shared between the
// int64 class group engine and the exact-bignum ideal machinery. The
// optional transform accumulates the GL2(Z) substitution so callers can
// recover a short vector (principality witness) from the reduction word.

namespace picard {
namespace detail {

/// Column substitution matrix: f'(x, y) = f(p x + q y, r x + s y).
template <class Z>
struct Transform2 {
  Z p{1}, q{0}, r{0}, s{1};

  void right_translate(const Z& m) {
    // right-multiply by [[1, m], [0, 1]]
    q += p * m;
    s += r * m;
  }
  void right_swap() {
    // right-multiply by [[0, -1], [1, 0]]
    Z np = q, nr = s;
    q = -p;
    s = -r;
    p = np;
    r = nr;
  }
};

template <class Z>
Z fdiv(const Z& a, const Z& b);  // floor division, specialized per Z

/// In-place reduction; terminates with |b| <= a <= c and b >= 0 whenever
/// |b| = a or a = c. U, when non-null, accumulates the substitution.
template <class Z>
void reduce_form(Z& a, Z& b, Z& c, Transform2<Z>* U = nullptr) {
  while (true) {
    if (!(-a < b && b <= a)) {
      Z m = fdiv<Z>(a - b, 2 * a);
      c += (b + a * m) * m;
      b += 2 * a * m;
      if (U) U->right_translate(m);
    }
    if (a > c || (a == c && b < 0)) {
      Z t = a;
      a = c;
      c = t;
      b = -b;
      if (U) U->right_swap();
      continue;
    }
    break;
  }
}

}  // namespace detail
}  // namespace picard
