#include "picard/quadfield.hpp"

#include <sstream>
#include <stdexcept>

namespace picard {

std::string to_string(SplittingType t) {
  switch (t) {
    case SplittingType::Split:
      return "split";
    case SplittingType::Inert:
      return "inert";
    case SplittingType::Ramified:
      return "ramified";
  }
  return "?";
}

Field make_field(i64 d) {
  if (d <= 0) throw std::invalid_argument("make_field: d must be positive");
  std::string note;
  i64 k = squarefree_kernel(d);
  if (k != d) {
    note = "d reduced from " + std::to_string(d) + " to squarefree kernel " +
           std::to_string(k);
    d = k;
  }
  bool omega_half = (d % 4 == 3);
  i64 disc = omega_half ? -d : -4 * d;
  return Field(d, disc, omega_half, note);
}

Field field_from_abs_disc(i64 abs_disc) {
  if (!is_fundamental_discriminant(-abs_disc)) {
    throw std::invalid_argument("field_from_abs_disc: -" +
                                std::to_string(abs_disc) +
                                " is not a fundamental discriminant");
  }
  i64 d = (abs_disc % 4 == 3) ? abs_disc : abs_disc / 4;
  Field f = make_field(d);
  if (f.disc() != -abs_disc) {
    throw internal_error("field_from_abs_disc: discriminant mismatch");
  }
  return f;
}

SplittingType splitting_type(const Field& field, i64 p) {
  if (p < 2 || !is_prime(p)) {
    throw std::invalid_argument("splitting_type: p = " + std::to_string(p) +
                                " is not prime");
  }
  i64 disc = field.disc();
  if (mod_floor(disc, p) == 0) return SplittingType::Ramified;
  if (p == 2) {
    // disc is odd here, hence ≡ 1 (mod 4); split iff disc ≡ 1 (mod 8).
    return mod_floor(disc, 8) == 1 ? SplittingType::Split
                                   : SplittingType::Inert;
  }
  return legendre(disc, p) == 1 ? SplittingType::Split : SplittingType::Inert;
}

namespace {
void require_same_field(const FieldElement& x, const FieldElement& y,
                        const char* op) {
  if (x.field() != y.field()) {
    throw std::invalid_argument(std::string(op) +
                                ": operands from different fields");
  }
}
}  // namespace

int FieldElement::compare(const FieldElement& x, const FieldElement& y) {
  int c = cmp(x.a_, y.a_);
  if (c != 0) return c;
  return cmp(x.b_, y.b_);
}

std::string FieldElement::str() const {
  std::ostringstream os;
  os << a_.get_str();
  if (b_ != 0) os << (b_ > 0 ? "+" : "") << b_.get_str() << "w";
  return os.str();
}

FieldElement elem_add(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y, "elem_add");
  return FieldElement(x.field(), x.a() + y.a(), x.b() + y.b());
}

FieldElement elem_sub(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y, "elem_sub");
  return FieldElement(x.field(), x.a() - y.a(), x.b() - y.b());
}

FieldElement elem_mul(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y, "elem_mul");
  // omega^2 = t*omega - n with t = tr(omega), n = N(omega).
  mpq_class t(x.field().omega_trace());
  mpq_class n(x.field().omega_norm());
  mpq_class bb = x.b() * y.b();
  return FieldElement(x.field(), x.a() * y.a() - n * bb,
                      x.a() * y.b() + x.b() * y.a() + t * bb);
}

FieldElement elem_neg(const FieldElement& x) {
  return FieldElement(x.field(), mpq_class(-x.a()), mpq_class(-x.b()));
}

FieldElement elem_conj(const FieldElement& x) {
  // conj(omega) = t - omega.
  mpq_class t(x.field().omega_trace());
  return FieldElement(x.field(), x.a() + t * x.b(), mpq_class(-x.b()));
}

mpq_class elem_norm(const FieldElement& x) {
  mpq_class t(x.field().omega_trace());
  mpq_class n(x.field().omega_norm());
  return x.a() * x.a() + t * x.a() * x.b() + n * x.b() * x.b();
}

mpq_class elem_trace(const FieldElement& x) {
  mpq_class t(x.field().omega_trace());
  return 2 * x.a() + t * x.b();
}

FieldElement elem_inverse(const FieldElement& x) {
  if (x.is_zero()) throw std::invalid_argument("elem_inverse: zero element");
  mpq_class n = elem_norm(x);
  FieldElement c = elem_conj(x);
  return FieldElement(x.field(), c.a() / n, c.b() / n);
}

FieldElement elem_div(const FieldElement& x, const FieldElement& y) {
  require_same_field(x, y, "elem_div");
  return elem_mul(x, elem_inverse(y));
}

std::vector<FieldElement> unit_group(const Field& field) {
  std::vector<FieldElement> units;
  units.emplace_back(field, 1, 0);
  units.emplace_back(field, -1, 0);
  if (field.d() == 1) {
    units.emplace_back(field, 0, 1);
    units.emplace_back(field, 0, -1);
  } else if (field.d() == 3) {
    // omega = zeta_6; the six units are ±1, ±omega, ±omega^2 = ±(omega - 1).
    units.emplace_back(field, 0, 1);
    units.emplace_back(field, 0, -1);
    units.emplace_back(field, -1, 1);
    units.emplace_back(field, 1, -1);
  }
  return units;
}

}  // namespace picard
