#include "picard/ideals.hpp"

#include <sstream>
#include <stdexcept>

#include "picard/reduction.hpp"

namespace picard {

namespace detail {
template <>
mpz_class fdiv<mpz_class>(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
}  // namespace detail

namespace {

struct ZPair {
  mpz_class x, y;  // x + y*omega, integral
};

ZPair zmul(const Field& f, const ZPair& u, const ZPair& v) {
  mpz_class t(f.omega_trace()), n(f.omega_norm());
  return {u.x * v.x - n * u.y * v.y, u.x * v.y + u.y * v.x + t * u.y * v.y};
}

mpz_class znorm(const Field& f, const ZPair& u) {
  mpz_class t(f.omega_trace()), n(f.omega_norm());
  return u.x * u.x + t * u.x * u.y + n * u.y * u.y;
}

// Hermite normal form of the Z-module spanned by the pairs: returns
// (C, A, B) with module = Z*(A, 0) + Z*(B, C), C | A, C | B.
struct Hnf {
  mpz_class C, A, B;
};

Hnf hnf_of(const std::vector<ZPair>& vecs) {
  ZPair e2{0, 0};
  for (const ZPair& v : vecs) {
    if (v.y == 0) continue;
    if (e2.y == 0) {
      e2 = v;
    } else {
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(),
                 e2.y.get_mpz_t(), v.y.get_mpz_t());
      e2 = {s * e2.x + t * v.x, g};
    }
  }
  if (e2.y == 0) throw internal_error("hnf_of: module has rank < 2");
  if (e2.y < 0) {
    e2.x = -e2.x;
    e2.y = -e2.y;
  }
  mpz_class A = 0;
  for (const ZPair& v : vecs) {
    mpz_class q = v.y / e2.y;
    mpz_class x = v.x - q * e2.x;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), A.get_mpz_t(), x.get_mpz_t());
    A = g;
  }
  if (A == 0) throw internal_error("hnf_of: module has rank < 2");
  return {e2.y, A, e2.x};
}

mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace

FractionalIdeal::FractionalIdeal(const Field& field, mpq_class scale,
                                 mpz_class a, mpz_class b)
    : field_(field), scale_(std::move(scale)), a_(std::move(a)),
      b_(std::move(b)) {
  scale_.canonicalize();
  if (scale_ <= 0 || a_ <= 0 || b_ < 0 || b_ >= a_) {
    throw internal_error("FractionalIdeal: representation out of range");
  }
  mpz_class nb = znorm(field_, {b_, 1});
  if (nb % a_ != 0) {
    throw internal_error("FractionalIdeal: basis not admissible");
  }
}

FractionalIdeal FractionalIdeal::unit(const Field& field) {
  return FractionalIdeal(field, 1, 1, 0);
}

FractionalIdeal FractionalIdeal::principal(const FieldElement& x) {
  return from_generators(x.field(), {x});
}

FractionalIdeal FractionalIdeal::from_generators(
    const Field& field, const std::vector<FieldElement>& gens) {
  bool any = false;
  mpz_class den = 1;
  for (const FieldElement& g : gens) {
    if (g.field() != field) {
      throw std::invalid_argument("from_generators: mixed fields");
    }
    if (!g.is_zero()) any = true;
    den = lcm_z(den, g.a().get_den());
    den = lcm_z(den, g.b().get_den());
  }
  if (!any) {
    throw std::invalid_argument("from_generators: all generators zero");
  }
  std::vector<ZPair> vecs;
  for (const FieldElement& g : gens) {
    if (g.is_zero()) continue;
    mpz_class x = g.a().get_num() * (den / g.a().get_den());
    mpz_class y = g.b().get_num() * (den / g.b().get_den());
    ZPair v{x, y};
    vecs.push_back(v);
    vecs.push_back(zmul(field, v, {0, 1}));  // omega * g
  }
  Hnf h = hnf_of(vecs);
  if (h.A % h.C != 0 || h.B % h.C != 0) {
    throw internal_error("from_generators: HNF not ideal-shaped");
  }
  mpz_class a = h.A / h.C;
  mpz_class b = h.B / h.C;
  mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
  mpq_class scale(h.C, den);
  return FractionalIdeal(field, scale, a, b);
}

FractionalIdeal FractionalIdeal::prime_above(const Field& field, i64 p) {
  SplittingType st = splitting_type(field, p);  // validates primality
  if (st == SplittingType::Inert) {
    return FractionalIdeal(field, p, 1, 0);
  }
  for (i64 b = 0; b < p; ++b) {
    if (znorm(field, {b, 1}) % p == 0) {
      return FractionalIdeal(field, 1, p, b);
    }
  }
  throw internal_error("prime_above: no root found at non-inert prime");
}

std::string FractionalIdeal::str() const {
  std::ostringstream os;
  os << scale_.get_str() << "*(" << a_.get_str() << ", " << b_.get_str()
     << "+w)";
  return os.str();
}

FractionalIdeal ideal_mul(const FractionalIdeal& I, const FractionalIdeal& J) {
  if (I.field() != J.field()) {
    throw std::invalid_argument("ideal_mul: mixed fields");
  }
  const Field& f = I.field();
  ZPair p1{I.basis_a(), 0}, q1{I.basis_b(), 1};
  ZPair p2{J.basis_a(), 0}, q2{J.basis_b(), 1};
  std::vector<ZPair> vecs;
  for (const ZPair& u : {zmul(f, p1, p2), zmul(f, p1, q2), zmul(f, q1, p2),
                         zmul(f, q1, q2)}) {
    vecs.push_back(u);
    vecs.push_back(zmul(f, u, {0, 1}));
  }
  Hnf h = hnf_of(vecs);
  if (h.A % h.C != 0 || h.B % h.C != 0) {
    throw internal_error("ideal_mul: HNF not ideal-shaped");
  }
  mpz_class a = h.A / h.C;
  mpz_class b = h.B / h.C;
  mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
  return FractionalIdeal(f, I.scale() * J.scale() * mpq_class(h.C), a, b);
}

FractionalIdeal conj_ideal(const FractionalIdeal& I) {
  mpz_class t(I.field().omega_trace());
  mpz_class b = -I.basis_b() - t;
  mpz_fdiv_r(b.get_mpz_t(), b.get_mpz_t(), I.basis_a().get_mpz_t());
  return FractionalIdeal(I.field(), I.scale(), I.basis_a(), b);
}

FractionalIdeal ideal_inverse(const FractionalIdeal& I) {
  // P * conj(P) = (a) for the primitive part, so I^-1 = conj(P) / (s a).
  FractionalIdeal c = conj_ideal(I);
  mpq_class s = 1 / (I.scale() * mpq_class(I.basis_a()));
  return FractionalIdeal(I.field(), s, c.basis_a(), c.basis_b());
}

mpq_class ideal_norm(const FractionalIdeal& I) {
  return I.scale() * I.scale() * mpq_class(I.basis_a());
}

FractionalIdeal ideal_add(const FractionalIdeal& I, const FractionalIdeal& J) {
  if (I.field() != J.field()) {
    throw std::invalid_argument("ideal_add: mixed fields");
  }
  const Field& f = I.field();
  std::vector<FieldElement> gens;
  gens.emplace_back(f, mpq_class(I.scale() * I.basis_a()), mpq_class(0));
  gens.emplace_back(f, mpq_class(I.scale() * I.basis_b()), I.scale());
  gens.emplace_back(f, mpq_class(J.scale() * J.basis_a()), mpq_class(0));
  gens.emplace_back(f, mpq_class(J.scale() * J.basis_b()), J.scale());
  return FractionalIdeal::from_generators(f, gens);
}

FractionalIdeal ideal_intersect(const FractionalIdeal& I,
                                const FractionalIdeal& J) {
  return ideal_inverse(ideal_add(ideal_inverse(I), ideal_inverse(J)));
}

bool ideal_contains(const FractionalIdeal& I, const FieldElement& x) {
  if (I.field() != x.field()) {
    throw std::invalid_argument("ideal_contains: mixed fields");
  }
  // coordinates of x / scale in the basis {a, b + omega}
  mpq_class u = x.a() / I.scale();
  mpq_class v = x.b() / I.scale();
  if (v.get_den() != 1) return false;
  mpq_class w = (u - v * mpq_class(I.basis_b())) / mpq_class(I.basis_a());
  return w.get_den() == 1;
}

namespace {

// The binary quadratic form N(a x + (b + omega) y) / a of the primitive
// part, with its mpz reduction.
struct PrimitiveForm {
  mpz_class a, b, c;
};

PrimitiveForm form_of_primitive_part(const FractionalIdeal& I) {
  const Field& f = I.field();
  mpz_class t(f.omega_trace());
  mpz_class nb = mpz_class(I.basis_b() * I.basis_b()) +
                 t * I.basis_b() + mpz_class(f.omega_norm());
  if (nb % I.basis_a() != 0) {
    throw internal_error("form_of_primitive_part: admissibility broken");
  }
  return {I.basis_a(), 2 * I.basis_b() + t, nb / I.basis_a()};
}

}  // namespace

std::optional<FieldElement> principal_generator(const FractionalIdeal& I) {
  PrimitiveForm f = form_of_primitive_part(I);
  detail::Transform2<mpz_class> U;
  detail::reduce_form<mpz_class>(f.a, f.b, f.c, &U);
  if (f.a != 1) return std::nullopt;
  // (f ∘ U)(1, 0) = 1, so a*U.p + (b + omega)*U.r has norm N(primitive).
  const Field& k = I.field();
  FieldElement gen(k, mpq_class(I.basis_a() * U.p + I.basis_b() * U.r),
                   mpq_class(U.r));
  FieldElement scaled(k, gen.a() * I.scale(), gen.b() * I.scale());
  if (FractionalIdeal::principal(scaled) != I) {
    throw internal_error("principal_generator: witness does not regenerate I");
  }
  return scaled;
}

bool is_principal(const FractionalIdeal& I) {
  return principal_generator(I).has_value();
}

FormClass ideal_to_form_class(const FractionalIdeal& I) {
  PrimitiveForm f = form_of_primitive_part(I);
  detail::reduce_form<mpz_class>(f.a, f.b, f.c);
  if (!f.a.fits_slong_p() || !f.b.fits_slong_p() || !f.c.fits_slong_p()) {
    throw internal_error("ideal_to_form_class: reduced form out of range");
  }
  return reduce({f.a.get_si(), f.b.get_si(), f.c.get_si()});
}

}  // namespace picard
