#pragma once

#include <optional>
#include <vector>

#include "picard/arith.hpp"

namespace picard {

/// Primitive positive definite integral binary quadratic form a x^2 + b xy
/// + c y^2. Coefficients are 64-bit; composition uses 128-bit
/// intermediates, which is exact for |disc| up to 2^40 (enforced at
/// validation, far beyond the catalog scale).
struct QuadraticForm {
  i64 a, b, c;
  i64 disc() const;
  bool operator==(const QuadraticForm& o) const {
    return a == o.a && b == o.b && c == o.c;
  }
  bool operator<(const QuadraticForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return c < o.c;
  }
};

/// The unique reduced representative of a form class. Construction goes
/// through reduce(), so a FormClass is always primitive, positive definite
/// and reduced.
class FormClass {
 public:
  const QuadraticForm& form() const { return f_; }
  i64 disc() const { return f_.disc(); }
  bool is_principal() const { return f_.a == 1; }

  bool operator==(const FormClass& o) const { return f_ == o.f_; }
  bool operator!=(const FormClass& o) const { return !(f_ == o.f_); }
  bool operator<(const FormClass& o) const { return f_ < o.f_; }

 private:
  friend FormClass reduce(QuadraticForm f);
  explicit FormClass(QuadraticForm f) : f_(f) {}
  QuadraticForm f_;
};

/// Rejects imprimitive or non positive definite input.
FormClass reduce(QuadraticForm f);

FormClass principal_form(i64 disc);
FormClass compose(const FormClass& f, const FormClass& g);
FormClass inverse(const FormClass& f);
FormClass power(const FormClass& f, i64 e);

/// cl ↦ inverse(t) * cl, the action of a normalizer element built from a
/// torsion ideal class t. When torsion_bound q is supplied, rejects t with
/// t^q != principal.
FormClass class_action(const FormClass& c, const FormClass& t,
                       std::optional<i64> torsion_bound = std::nullopt);

/// The class group of a fundamental discriminant: the full reduced-forms
/// list, the element orders, elementary divisors d1 | d2 | ... and forms
/// generating each cyclic factor.
struct ClassGroup {
  i64 disc;
  std::vector<FormClass> reduced_forms;  // sorted by (a, b, c)
  std::vector<i64> orders;               // orders[i] = order of forms[i]
  std::vector<i64> structure;            // elementary divisors, ascending
  std::vector<FormClass> generators;     // generators[i] has order structure[i]
  i64 h;

  i64 torsion_order(i64 q) const;  // #{c : c^q = principal}
  i64 primary_order(i64 q) const;  // order of the q-Sylow subgroup
};

/// Enumerates all reduced forms of the given fundamental discriminant via
/// the bound a <= sqrt(|disc|/3) and computes the group structure. Rejects
/// positive and non-fundamental discriminants with a specific error.
ClassGroup enumerate_reduced(i64 disc);

i64 class_number(i64 disc);
i64 torsion_order(i64 disc, i64 q);
i64 primary_order(i64 disc, i64 q);

}  // namespace picard
