#include "picard/modp_orbits.hpp"

#include <array>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace picard {

namespace {

// ---- F_p ----------------------------------------------------------------

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b % p) % p; }
  u64 mul(u64 a, u64 b) const { return mulmod_u64(a, b, p); }
  u64 inv(u64 a) const { return powmod_u64(a, p - 2, p); }
};

i64 primitive_root(i64 p) {
  auto fac = factorize(p - 1);
  for (i64 g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [q, e] : fac) {
      (void)e;
      if (powmod_u64(g, static_cast<u64>((p - 1) / q), static_cast<u64>(p)) ==
          1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw internal_error("primitive_root: none found");
}

// ---- F_{p^2} = F_p(sqrt(r)), r a non-residue ------------------------------

struct Fp2Elt {
  u64 a, b;  // a + b sqrt(r)
  bool operator==(const Fp2Elt& o) const { return a == o.a && b == o.b; }
};

struct Fp2 {
  u64 p, r;

  explicit Fp2(u64 prime) : p(prime) {
    r = 2;
    while (powmod_u64(r, (p - 1) / 2, p) != p - 1) ++r;
  }
  Fp2Elt zero() const { return {0, 0}; }
  Fp2Elt one() const { return {1, 0}; }
  Fp2Elt add(Fp2Elt x, Fp2Elt y) const {
    return {(x.a + y.a) % p, (x.b + y.b) % p};
  }
  Fp2Elt neg(Fp2Elt x) const { return {(p - x.a) % p, (p - x.b) % p}; }
  Fp2Elt mul(Fp2Elt x, Fp2Elt y) const {
    u64 aa = (mulmod_u64(x.a, y.a, p) + mulmod_u64(mulmod_u64(x.b, y.b, p), r, p)) % p;
    u64 bb = (mulmod_u64(x.a, y.b, p) + mulmod_u64(x.b, y.a, p)) % p;
    return {aa, bb};
  }
  /// Frobenius x -> x^p, the nontrivial conjugation of F_{p^2}/F_p.
  Fp2Elt conj(Fp2Elt x) const { return {x.a, (p - x.b) % p}; }
  u64 norm(Fp2Elt x) const {
    return (mulmod_u64(x.a, x.a, p) + p * p -
            mulmod_u64(mulmod_u64(x.b, x.b, p), r, p)) %
           p;
  }
  u64 trace(Fp2Elt x) const { return (2 * x.a) % p; }
  Fp2Elt inv(Fp2Elt x) const {
    u64 n = norm(x);
    u64 ni = powmod_u64(n, p - 2, p);
    Fp2Elt c = conj(x);
    return {mulmod_u64(c.a, ni, p), mulmod_u64(c.b, ni, p)};
  }
  u64 encode(Fp2Elt x) const { return x.a + p * x.b; }
  /// Multiplicative generator of F_{p^2}^*.
  Fp2Elt generator() const {
    u64 n = p * p - 1;
    auto fac = factorize(static_cast<i64>(n));
    for (u64 a = 0; a < p; ++a) {
      for (u64 b = 0; b < p; ++b) {
        Fp2Elt x{a, b};
        if (x == zero()) continue;
        bool ok = true;
        for (auto [q, e] : fac) {
          (void)e;
          Fp2Elt y = one();
          u64 exp = n / static_cast<u64>(q);
          Fp2Elt base = x;
          while (exp) {
            if (exp & 1) y = mul(y, base);
            base = mul(base, base);
            exp >>= 1;
          }
          if (y == one()) {
            ok = false;
            break;
          }
        }
        if (ok) return x;
      }
    }
    throw internal_error("Fp2::generator: none found");
  }
};

// ---- split: SL_3(F_p) on P^2(F_p) ------------------------------------------

using MatP = std::array<u64, 9>;
using VecP = std::array<u64, 3>;

VecP canon_p(const Fp& F, const VecP& v) {
  for (int i = 0; i < 3; ++i) {
    if (v[i]) {
      u64 inv = F.inv(v[i]);
      return {F.mul(v[0], inv), F.mul(v[1], inv), F.mul(v[2], inv)};
    }
  }
  throw internal_error("canon_p: zero vector");
}

u64 encode_p(const Fp& F, const VecP& v) {
  return (v[0] * F.p + v[1]) * F.p + v[2];
}

MatP elementary(const Fp& F, int i, int j, u64 m) {
  MatP e{1, 0, 0, 0, 1, 0, 0, 0, 1};
  e[static_cast<size_t>(3 * i + j)] = m % F.p;
  return e;
}

MatP diag_p(u64 a, u64 b, u64 c) { return {a, 0, 0, 0, b, 0, 0, 0, c}; }

i64 split_orbits(i64 p, ModPSubgroup sub) {
  Fp F{static_cast<u64>(p)};
  std::vector<VecP> points;
  for (u64 a = 0; a < F.p; ++a) {
    for (u64 b = 0; b < F.p; ++b) points.push_back({1, a, b});
  }
  for (u64 b = 0; b < F.p; ++b) points.push_back({0, 1, b});
  points.push_back({0, 0, 1});
  std::unordered_map<u64, unsigned> index;
  for (unsigned i = 0; i < points.size(); ++i) {
    index.emplace(encode_p(F, points[i]), i);
  }

  u64 g = static_cast<u64>(primitive_root(p));
  u64 gi = F.inv(g);
  std::vector<MatP> gens;
  auto add_elem = [&](int i, int j) {
    gens.push_back(elementary(F, i, j, 1));
    gens.push_back(elementary(F, i, j, F.p - 1));
  };
  // Borel part: upper-triangular unipotents and the maximal torus of SL_3.
  add_elem(0, 1);
  add_elem(0, 2);
  add_elem(1, 2);
  gens.push_back(diag_p(g, gi, 1));
  gens.push_back(diag_p(gi, g, 1));
  gens.push_back(diag_p(1, g, gi));
  gens.push_back(diag_p(1, gi, g));
  switch (sub) {
    case ModPSubgroup::Borel:
      break;
    case ModPSubgroup::P1:
      add_elem(1, 0);  // block [[*,*],[*,*]] over the (1,2) plane
      break;
    case ModPSubgroup::P2:
      add_elem(2, 1);  // block over the (2,3) plane
      break;
    case ModPSubgroup::Full:
      add_elem(1, 0);
      add_elem(2, 0);
      add_elem(2, 1);
      break;
  }
  std::vector<bool> seen(points.size(), false);
  i64 orbits = 0;
  std::vector<unsigned> stack;
  for (unsigned start = 0; start < points.size(); ++start) {
    if (seen[start]) continue;
    ++orbits;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      unsigned i = stack.back();
      stack.pop_back();
      const VecP& v = points[i];
      for (const MatP& m : gens) {
        VecP w{0, 0, 0};
        for (int r = 0; r < 3; ++r) {
          u64 s = 0;
          for (int k = 0; k < 3; ++k) {
            s += F.mul(m[static_cast<size_t>(3 * r + k)], v[static_cast<size_t>(k)]);
          }
          w[static_cast<size_t>(r)] = s % F.p;
        }
        unsigned j = index.at(encode_p(F, canon_p(F, w)));
        if (!seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
  }
  return orbits;
}

i64 split_count(i64 p) { return p * p + p + 1; }

// ---- inert: SU(3, F_{p^2}) on the hermitian isotropic points ---------------

using MatP2 = std::array<Fp2Elt, 9>;
using VecP2 = std::array<Fp2Elt, 3>;

bool isotropic2(const Fp2& F, const VecP2& v) {
  // tr(x1 conj(x3)) - N(x2) = 0 in F_p
  u64 t = F.trace(F.mul(v[0], F.conj(v[2])));
  u64 n = F.norm(v[1]);
  return t == n;
}

VecP2 canon2(const Fp2& F, const VecP2& v) {
  for (int i = 0; i < 3; ++i) {
    if (!(v[i] == F.zero())) {
      Fp2Elt inv = F.inv(v[i]);
      return {F.mul(v[0], inv), F.mul(v[1], inv), F.mul(v[2], inv)};
    }
  }
  throw internal_error("canon2: zero vector");
}

u64 encode2(const Fp2& F, const VecP2& v) {
  u64 q = F.p * F.p;
  return (F.encode(v[0]) * q + F.encode(v[1])) * q + F.encode(v[2]);
}

MatP2 su3_unipotent(const Fp2& F, Fp2Elt t, Fp2Elt s) {
  // [[1, conj(t), s], [0, 1, t], [0, 0, 1]] with tr(s) = N(t)
  return {F.one(), F.conj(t), s,       F.zero(), F.one(),
          t,       F.zero(),  F.zero(), F.one()};
}

MatP2 su3_inverse_unipotent(const Fp2& F, Fp2Elt t, Fp2Elt s) {
  Fp2Elt nt{F.norm(t), 0};
  return su3_unipotent(F, F.neg(t), F.add(nt, F.neg(s)));
}

MatP2 su3_torus(const Fp2& F, Fp2Elt u) {
  Fp2Elt ub = F.conj(u);
  Fp2Elt beta = F.mul(ub, F.inv(u));
  Fp2Elt gamma = F.inv(ub);
  return {u,        F.zero(), F.zero(), F.zero(), beta,
          F.zero(), F.zero(), F.zero(), gamma};
}

MatP2 su3_weyl(const Fp2& F) {
  return {F.zero(), F.zero(), F.one(),  F.zero(), F.neg(F.one()),
          F.zero(), F.one(),  F.zero(), F.zero()};
}

i64 inert_orbits(i64 p, bool borel_only, i64* count_out) {
  Fp2 F(static_cast<u64>(p));
  std::vector<VecP2> points;
  std::vector<Fp2Elt> elems;
  for (u64 a = 0; a < F.p; ++a) {
    for (u64 b = 0; b < F.p; ++b) elems.push_back({a, b});
  }
  for (const Fp2Elt& x : elems) {
    for (const Fp2Elt& y : elems) {
      VecP2 v{F.one(), x, y};
      if (isotropic2(F, v)) points.push_back(v);
    }
  }
  for (const Fp2Elt& y : elems) {
    VecP2 v{F.zero(), F.one(), y};
    if (isotropic2(F, v)) points.push_back(v);
  }
  {
    VecP2 v{F.zero(), F.zero(), F.one()};
    if (isotropic2(F, v)) points.push_back(v);
  }
  if (count_out) *count_out = static_cast<i64>(points.size());

  std::unordered_map<u64, unsigned> index;
  for (unsigned i = 0; i < points.size(); ++i) {
    index.emplace(encode2(F, points[i]), i);
  }

  u64 half = (F.p + 1) / 2;  // 1/2 mod p
  auto s_for = [&](Fp2Elt t) -> Fp2Elt {
    return {mulmod_u64(F.norm(t), half, F.p), 0};
  };
  Fp2Elt g2 = F.generator();
  std::vector<MatP2> gens;
  for (Fp2Elt t : {Fp2Elt{1, 0}, g2}) {
    Fp2Elt s = s_for(t);
    gens.push_back(su3_unipotent(F, t, s));
    gens.push_back(su3_inverse_unipotent(F, t, s));
  }
  // center of the unipotent group: trace-zero s
  gens.push_back(su3_unipotent(F, F.zero(), Fp2Elt{0, 1}));
  gens.push_back(su3_unipotent(F, F.zero(), Fp2Elt{0, F.p - 1}));
  gens.push_back(su3_torus(F, g2));
  gens.push_back(su3_torus(F, F.inv(g2)));
  if (!borel_only) gens.push_back(su3_weyl(F));  // involution, self-inverse

  std::vector<bool> seen(points.size(), false);
  i64 orbits = 0;
  std::vector<unsigned> stack;
  for (unsigned start = 0; start < points.size(); ++start) {
    if (seen[start]) continue;
    ++orbits;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      unsigned i = stack.back();
      stack.pop_back();
      const VecP2& v = points[i];
      for (const MatP2& m : gens) {
        VecP2 w{F.zero(), F.zero(), F.zero()};
        for (int r = 0; r < 3; ++r) {
          Fp2Elt s = F.zero();
          for (int k = 0; k < 3; ++k) {
            s = F.add(s, F.mul(m[static_cast<size_t>(3 * r + k)],
                               v[static_cast<size_t>(k)]));
          }
          w[static_cast<size_t>(r)] = s;
        }
        unsigned j = index.at(encode2(F, canon2(F, w)));
        if (!seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
  }
  return orbits;
}

// ---- ramified: SO(3, F_p) on the conic 2 x1 x3 = x2^2 ----------------------

i64 ramified_orbits(i64 p, bool borel_only, i64* count_out) {
  Fp F{static_cast<u64>(p)};
  auto on_conic = [&](const VecP& v) {
    return (2 * F.mul(v[0], v[2])) % F.p == F.mul(v[1], v[1]);
  };
  std::vector<VecP> points;
  for (u64 a = 0; a < F.p; ++a) {
    for (u64 b = 0; b < F.p; ++b) {
      VecP v{1, a, b};
      if (on_conic(v)) points.push_back(v);
    }
  }
  for (u64 b = 0; b < F.p; ++b) {
    VecP v{0, 1, b};
    if (on_conic(v)) points.push_back(v);
  }
  {
    VecP v{0, 0, 1};
    if (on_conic(v)) points.push_back(v);
  }
  if (count_out) *count_out = static_cast<i64>(points.size());

  std::unordered_map<u64, unsigned> index;
  for (unsigned i = 0; i < points.size(); ++i) {
    index.emplace(encode_p(F, points[i]), i);
  }

  u64 g = static_cast<u64>(primitive_root(p));
  u64 half = (F.p + 1) / 2;
  auto so3_unip = [&](u64 t) -> MatP {
    // [[1, t, t^2/2], [0, 1, t], [0, 0, 1]]
    return {1, t, F.mul(F.mul(t, t), half), 0, 1, t, 0, 0, 1};
  };
  std::vector<MatP> gens{so3_unip(1), so3_unip(F.p - 1),
                         diag_p(g, 1, F.inv(g)), diag_p(F.inv(g), 1, g)};
  if (!borel_only) {
    gens.push_back(MatP{0, 0, 1, 0, F.p - 1, 0, 1, 0, 0});
  }

  std::vector<bool> seen(points.size(), false);
  i64 orbits = 0;
  std::vector<unsigned> stack;
  for (unsigned start = 0; start < points.size(); ++start) {
    if (seen[start]) continue;
    ++orbits;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      unsigned i = stack.back();
      stack.pop_back();
      const VecP& v = points[i];
      for (const MatP& m : gens) {
        VecP w{0, 0, 0};
        for (int r = 0; r < 3; ++r) {
          u64 s = 0;
          for (int k = 0; k < 3; ++k) {
            s += F.mul(m[static_cast<size_t>(3 * r + k)],
                       v[static_cast<size_t>(k)]);
          }
          w[static_cast<size_t>(r)] = s % F.p;
        }
        unsigned j = index.at(encode_p(F, canon_p(F, w)));
        if (!seen[j]) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
  }
  return orbits;
}

void validate_p(i64 p, i64 bound) {
  if (p == 2) {
    throw std::invalid_argument("modp oracle: p = 2 is excluded");
  }
  if (!is_prime(p)) {
    throw std::invalid_argument("modp oracle: p must be prime");
  }
  if (p > bound) {
    throw std::invalid_argument("modp oracle: p exceeds the bound " +
                                std::to_string(bound));
  }
}

}  // namespace

ModPModel modp_model(const Field& field, i64 p, i64 bound) {
  validate_p(p, bound);
  SplittingType st = splitting_type(field, p);
  i64 count = 0;
  switch (st) {
    case SplittingType::Split:
      count = split_count(p);
      break;
    case SplittingType::Inert:
      inert_orbits(p, true, &count);
      break;
    case SplittingType::Ramified:
      ramified_orbits(p, true, &count);
      break;
  }
  return ModPModel{p, st, count};
}

i64 modp_isotropic_count(const Field& field, i64 p, i64 bound) {
  return modp_model(field, p, bound).isotropic_count;
}

i64 modp_parabolic_orbits(const Field& field, i64 p, ModPSubgroup sub,
                          i64 bound) {
  validate_p(p, bound);
  SplittingType st = splitting_type(field, p);
  if (st != SplittingType::Split &&
      (sub == ModPSubgroup::P1 || sub == ModPSubgroup::P2)) {
    throw std::invalid_argument(
        "modp_parabolic_orbits: P1/P2 only exist at split primes");
  }
  switch (st) {
    case SplittingType::Split:
      return split_orbits(p, sub);
    case SplittingType::Inert:
      return inert_orbits(p, sub == ModPSubgroup::Borel, nullptr);
    case SplittingType::Ramified:
      return ramified_orbits(p, sub == ModPSubgroup::Borel, nullptr);
  }
  throw internal_error("modp_parabolic_orbits: unreachable");
}

}  // namespace picard
