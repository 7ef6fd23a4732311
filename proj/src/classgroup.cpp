#include "picard/classgroup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "picard/reduction.hpp"

namespace picard {

namespace detail {
template <>
i128 fdiv<i128>(const i128& a, const i128& b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace detail

namespace {

constexpr i64 kMaxAbsDisc = 1L << 40;
constexpr i64 kMaxCoeff = 1L << 62;  // keeps b^2 - 4ac inside 128 bits

void check_coeff_range(i64 a, i64 b, i64 c) {
  if (std::abs(a) >= kMaxCoeff || std::abs(b) >= kMaxCoeff ||
      std::abs(c) >= kMaxCoeff) {
    throw std::invalid_argument("form coefficients exceed supported range");
  }
}

i64 isqrt_i64(i64 n) {
  if (n < 0) return -1;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void validate_form(const QuadraticForm& f) {
  check_coeff_range(f.a, f.b, f.c);
  i128 disc = static_cast<i128>(f.b) * f.b - 4 * static_cast<i128>(f.a) * f.c;
  if (f.a <= 0 || disc >= 0) {
    throw std::invalid_argument("form is not positive definite");
  }
  if (-disc > static_cast<i128>(kMaxAbsDisc)) {
    throw std::invalid_argument("form discriminant exceeds supported bound");
  }
  i64 g = gcd_i64(gcd_i64(f.a, f.b), f.c);
  if (g != 1) throw std::invalid_argument("form is imprimitive");
}

}  // namespace

i64 QuadraticForm::disc() const {
  check_coeff_range(a, b, c);
  i128 d = static_cast<i128>(b) * b - 4 * static_cast<i128>(a) * c;
  return checked_cast_i64(d, "QuadraticForm::disc");
}

FormClass reduce(QuadraticForm f) {
  validate_form(f);
  i128 a = f.a, b = f.b, c = f.c;
  detail::reduce_form<i128>(a, b, c);
  QuadraticForm r{checked_cast_i64(a, "reduce"), checked_cast_i64(b, "reduce"),
                  checked_cast_i64(c, "reduce")};
  return FormClass(r);
}

FormClass principal_form(i64 disc) {
  if (disc >= 0 || mod_floor(disc, 4) > 1) {
    throw std::invalid_argument("principal_form: invalid discriminant");
  }
  if (mod_floor(disc, 2) == 0) return reduce({1, 0, -disc / 4});
  return reduce({1, 1, (1 - disc) / 4});
}

FormClass compose(const FormClass& f, const FormClass& g) {
  if (f.disc() != g.disc()) {
    throw std::invalid_argument("compose: mismatched discriminants");
  }
  i128 a1 = f.form().a, b1 = f.form().b;
  i128 a2 = g.form().a, b2 = g.form().b;
  i128 D = f.disc();
  if (a1 > a2) {
    std::swap(a1, a2);
    std::swap(b1, b2);
  }
  // Classical Gauss composition on primitive reduced inputs.
  auto xg = ext_gcd(static_cast<i64>(a1), static_cast<i64>(a2));
  i128 d1 = xg[0], v = xg[1];
  i128 b3 = v * a1 * (b2 - b1);
  i128 a3 = a1 * a2;
  if (d1 != 1) {
    i64 s = static_cast<i64>((b1 + b2) / 2);
    auto xg2 = ext_gcd(static_cast<i64>(d1), s);
    i128 d = xg2[0], v2 = xg2[1], w2 = xg2[2];
    b3 = (b3 * v2 + w2 * ((D - b1 * b1) / 2)) / d;
    a3 = a3 / (d * d);
  }
  b3 = (b3 + b1) % (2 * a3);
  if (b3 < 0) b3 += 2 * a3;
  if ((b3 * b3 - D) % (4 * a3) != 0) {
    throw internal_error("compose: congruence b^2 = D (mod 4a) broken");
  }
  i128 c3 = (b3 * b3 - D) / (4 * a3);
  detail::reduce_form<i128>(a3, b3, c3);
  QuadraticForm r{checked_cast_i64(a3, "compose"),
                  checked_cast_i64(b3, "compose"),
                  checked_cast_i64(c3, "compose")};
  return reduce(r);
}

FormClass inverse(const FormClass& f) {
  return reduce({f.form().a, -f.form().b, f.form().c});
}

FormClass power(const FormClass& f, i64 e) {
  FormClass r = principal_form(f.disc());
  if (e < 0) return power(inverse(f), -e);
  FormClass base = f;
  while (e > 0) {
    if (e & 1) r = compose(r, base);
    if (e >>= 1) base = compose(base, base);
  }
  return r;
}

FormClass class_action(const FormClass& c, const FormClass& t,
                       std::optional<i64> torsion_bound) {
  if (c.disc() != t.disc()) {
    throw std::invalid_argument("class_action: mismatched discriminants");
  }
  if (torsion_bound) {
    if (*torsion_bound < 2) {
      throw std::invalid_argument("class_action: torsion bound must be >= 2");
    }
    if (power(t, *torsion_bound) != principal_form(t.disc())) {
      throw std::invalid_argument(
          "class_action: t is not torsion of the supplied order");
    }
  }
  return compose(inverse(t), c);
}

namespace {

i64 element_order(const FormClass& f, i64 h,
                  const std::vector<std::pair<i64, int>>& hfac) {
  const FormClass id = principal_form(f.disc());
  i64 o = h;
  for (auto [p, e] : hfac) {
    for (int i = 0; i < e; ++i) o /= p;
    FormClass g = power(f, o);
    while (g != id) {
      g = power(g, p);
      o *= p;
    }
  }
  return o;
}

// Basis of an abelian q-group given as an element list: repeatedly split
// off a cyclic direct factor of maximal order in the current quotient.
std::vector<FormClass> sylow_basis(i64 q, const std::vector<FormClass>& syl,
                                   const FormClass& id) {
  std::vector<FormClass> basis;
  std::set<FormClass> H;
  H.insert(id);
  while (static_cast<i64>(H.size()) < static_cast<i64>(syl.size())) {
    i64 best_ord = 0;
    FormClass best = id;
    for (const FormClass& x : syl) {
      i64 m = 1;
      FormClass y = x;
      while (H.find(y) == H.end()) {
        y = power(y, q);
        m *= q;
      }
      if (m > best_ord) {
        best_ord = m;
        best = x;
      }
    }
    // A representative of the coset with full order exists because the
    // previously extracted factors have maximal orders.
    std::optional<FormClass> rep;
    for (const FormClass& hh : H) {
      FormClass y = compose(best, hh);
      if (power(y, best_ord) == id) {
        bool full = true;
        if (best_ord > 1 && power(y, best_ord / q) == id) full = false;
        if (full) {
          rep = y;
          break;
        }
      }
    }
    if (!rep) throw internal_error("sylow_basis: no full-order representative");
    basis.push_back(*rep);
    std::set<FormClass> bigger = H;
    FormClass t = *rep;
    for (i64 k = 1; k < best_ord; ++k) {
      for (const FormClass& hh : H) bigger.insert(compose(t, hh));
      t = compose(t, *rep);
    }
    H.swap(bigger);
  }
  return basis;  // orders are non-increasing by construction
}

}  // namespace

ClassGroup enumerate_reduced(i64 disc) {
  if (disc >= 0) {
    throw std::invalid_argument("enumerate_reduced: discriminant must be negative");
  }
  if (-disc > kMaxAbsDisc) {
    throw std::invalid_argument("enumerate_reduced: |disc| exceeds supported bound");
  }
  if (!is_fundamental_discriminant(disc)) {
    throw std::invalid_argument("enumerate_reduced: " + std::to_string(disc) +
                                " is not a fundamental discriminant");
  }
  ClassGroup g;
  g.disc = disc;
  const i64 amax = isqrt_i64(-disc / 3);
  const int parity = static_cast<int>(mod_floor(disc, 2));
  for (i64 a = 1; a <= amax; ++a) {
    i64 b0 = -a + 1;
    if (mod_floor(b0, 2) != parity) ++b0;
    for (i64 b = b0; b <= a; b += 2) {
      i64 num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      i64 c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
      g.reduced_forms.push_back(reduce({a, b, c}));
    }
  }
  std::sort(g.reduced_forms.begin(), g.reduced_forms.end());
  g.h = static_cast<i64>(g.reduced_forms.size());

  const auto hfac = factorize(g.h);
  const FormClass id = principal_form(disc);
  g.orders.reserve(g.reduced_forms.size());
  for (const FormClass& f : g.reduced_forms) {
    g.orders.push_back(element_order(f, g.h, hfac));
  }

  // Structure: per-prime Sylow basis, assembled into elementary divisors.
  std::map<i64, std::vector<FormClass>> bases;
  size_t parts = 0;
  for (auto [q, e] : hfac) {
    std::vector<FormClass> syl;
    for (size_t i = 0; i < g.reduced_forms.size(); ++i) {
      i64 o = g.orders[i];
      while (o % q == 0) o /= q;
      if (o == 1) syl.push_back(g.reduced_forms[i]);
    }
    auto basis = sylow_basis(q, syl, id);
    i64 total = 1;
    for (const FormClass& b : basis) total *= element_order(b, g.h, hfac);
    if (total != static_cast<i64>(syl.size())) {
      throw internal_error("enumerate_reduced: Sylow basis size mismatch");
    }
    parts = std::max(parts, basis.size());
    bases[q] = std::move(basis);
  }
  std::vector<i64> divisors_desc(parts, 1);
  std::vector<FormClass> gens_desc(parts, id);
  for (auto& [q, basis] : bases) {
    for (size_t i = 0; i < basis.size(); ++i) {
      divisors_desc[i] *= element_order(basis[i], g.h, hfac);
      gens_desc[i] = compose(gens_desc[i], basis[i]);
    }
  }
  for (size_t i = 0; i < parts; ++i) {
    size_t j = parts - 1 - i;
    g.structure.push_back(divisors_desc[j]);
    g.generators.push_back(gens_desc[j]);
  }
  i64 prod = 1;
  for (size_t i = 0; i < g.structure.size(); ++i) {
    prod *= g.structure[i];
    if (i + 1 < g.structure.size() &&
        g.structure[i + 1] % g.structure[i] != 0) {
      throw internal_error("enumerate_reduced: divisor chain broken");
    }
    if (element_order(g.generators[i], g.h, hfac) != g.structure[i]) {
      throw internal_error("enumerate_reduced: generator order mismatch");
    }
  }
  if (prod != g.h) {
    throw internal_error("enumerate_reduced: structure does not multiply to h");
  }
  return g;
}

i64 ClassGroup::torsion_order(i64 q) const {
  if (q < 2) throw std::invalid_argument("torsion_order: q must be >= 2");
  i64 n = 0;
  for (i64 o : orders) {
    if (q % o == 0) ++n;
  }
  return n;
}

i64 ClassGroup::primary_order(i64 q) const {
  if (q < 2) throw std::invalid_argument("primary_order: q must be >= 2");
  if (!is_prime(q)) {
    // q-Sylow of a composite q: product over prime divisors of q.
    i64 r = 1;
    for (auto [p, e] : factorize(q)) {
      (void)e;
      r *= primary_order(p);
    }
    return r;
  }
  i64 r = 1, hh = h;
  while (hh % q == 0) {
    hh /= q;
    r *= q;
  }
  return r;
}

i64 class_number(i64 disc) { return enumerate_reduced(disc).h; }

i64 torsion_order(i64 disc, i64 q) {
  return enumerate_reduced(disc).torsion_order(q);
}

i64 primary_order(i64 disc, i64 q) {
  return enumerate_reduced(disc).primary_order(q);
}

}  // namespace picard
