#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "picard/classgroup.hpp"
#include "picard/quadfield.hpp"

namespace picard {

/// A fractional ideal of O_k in canonical form: a positive rational scale
/// times the primitive integral ideal with Z-basis {a, b + omega}, where
/// a > 0, 0 <= b < a and a | N(b + omega). Two ideals are equal iff their
/// components agree, and norm = scale^2 * a exactly.
class FractionalIdeal {
 public:
  static FractionalIdeal unit(const Field& field);
  static FractionalIdeal principal(const FieldElement& x);
  /// O_k-module generated by the given elements; rejects an all-zero list
  /// and mixed fields.
  static FractionalIdeal from_generators(const Field& field,
                                         const std::vector<FieldElement>& gens);
  /// A prime ideal above p: (p, b + omega) when p splits or ramifies, the
  /// inert (p) otherwise.
  static FractionalIdeal prime_above(const Field& field, i64 p);

  const Field& field() const { return field_; }
  const mpq_class& scale() const { return scale_; }
  const mpz_class& basis_a() const { return a_; }
  const mpz_class& basis_b() const { return b_; }

  bool operator==(const FractionalIdeal& o) const {
    return field_ == o.field_ && scale_ == o.scale_ && a_ == o.a_ &&
           b_ == o.b_;
  }
  bool operator!=(const FractionalIdeal& o) const { return !(*this == o); }

  std::string str() const;

 private:
  FractionalIdeal(const Field& field, mpq_class scale, mpz_class a,
                  mpz_class b);
  friend FractionalIdeal ideal_mul(const FractionalIdeal&,
                                   const FractionalIdeal&);
  friend FractionalIdeal ideal_inverse(const FractionalIdeal&);
  friend FractionalIdeal conj_ideal(const FractionalIdeal&);

  Field field_;
  mpq_class scale_;
  mpz_class a_, b_;
};

FractionalIdeal ideal_mul(const FractionalIdeal& I, const FractionalIdeal& J);
FractionalIdeal ideal_inverse(const FractionalIdeal& I);
mpq_class ideal_norm(const FractionalIdeal& I);
FractionalIdeal conj_ideal(const FractionalIdeal& I);
FractionalIdeal ideal_add(const FractionalIdeal& I, const FractionalIdeal& J);
/// I ∩ J, computed as (I^-1 + J^-1)^-1.
FractionalIdeal ideal_intersect(const FractionalIdeal& I,
                                const FractionalIdeal& J);
bool ideal_contains(const FractionalIdeal& I, const FieldElement& x);

/// Witness generator when I is principal. Implemented by reducing the
/// associated binary quadratic form while tracking the substitution, which
/// yields an element of norm N(I) inside I.
std::optional<FieldElement> principal_generator(const FractionalIdeal& I);
bool is_principal(const FractionalIdeal& I);

/// The reduced form of discriminant d_k attached to the ideal class of I;
/// a group homomorphism onto the form class group with kernel the
/// principal ideals.
FormClass ideal_to_form_class(const FractionalIdeal& I);

}  // namespace picard
