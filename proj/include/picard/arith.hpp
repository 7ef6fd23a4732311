#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace picard {

using i64 = long;
using u64 = unsigned long;
using i128 = __int128;
static_assert(sizeof(i64) == 8, "LP64 platform expected");

/// Thrown when a computed quantity violates an invariant the library
/// guarantees (e.g. a divisibility assertion in a cusp formula). The CLI
/// maps this to exit code 2, as opposed to exit code 1 for bad input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline i64 floordiv(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline i64 mod_floor(i64 a, i64 b) { return a - b * floordiv(a, b); }

inline i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Extended gcd: returns {g, x, y} with g = gcd(a,b) >= 0 and a*x + b*y = g.
inline std::array<i64, 3> ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b;
  i64 old_s = 1, s = 0;
  i64 old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline u64 mulmod_u64(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod_u64(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = static_cast<u64>(n - 1);
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL,
                29UL, 31UL, 37UL}) {
    u64 x = powmod_u64(a, d, static_cast<u64>(n));
    if (x == 1 || x == static_cast<u64>(n - 1)) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, static_cast<u64>(n));
      if (x == static_cast<u64>(n - 1)) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline bool is_squarefree(i64 n) {
  if (n <= 0) return false;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % (p * p) == 0) return false;
  }
  return true;
}

/// n divided by its largest square divisor, so Q(sqrt(-n)) = Q(sqrt(-kernel)).
inline i64 squarefree_kernel(i64 n) {
  i64 k = 1;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      if (e % 2 == 1) k *= p;
    }
  }
  return k * n;
}

/// Fundamental discriminant test for negative D: either D ≡ 1 (mod 4)
/// squarefree, or D = 4m with m ≡ 2, 3 (mod 4) squarefree.
inline bool is_fundamental_discriminant(i64 D) {
  if (D >= 0) return false;
  i64 r = mod_floor(D, 4);
  if (r == 1) return is_squarefree(-D);
  if (r == 0) {
    i64 m = -D / 4;
    if (m % 4 == 1 || m % 4 == 2) return is_squarefree(m);
  }
  return false;
}

/// Legendre symbol (a|p) for odd prime p.
inline int legendre(i64 a, i64 p) {
  a = mod_floor(a, p);
  if (a == 0) return 0;
  u64 r = powmod_u64(static_cast<u64>(a), static_cast<u64>((p - 1) / 2),
                     static_cast<u64>(p));
  return r == 1 ? 1 : -1;
}

inline std::vector<std::pair<i64, int>> factorize(i64 n) {
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline i64 checked_cast_i64(i128 v, const char* where) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN)) {
    throw internal_error(std::string("integer overflow in ") + where);
  }
  return static_cast<i64>(v);
}

}  // namespace picard
