#pragma once

#include <gmpxx.h>

#include <string>

#include "picard/arith.hpp"

namespace picard {

enum class SplittingType { Split, Inert, Ramified };

std::string to_string(SplittingType t);

/// An imaginary quadratic field Q(sqrt(-d)) with d squarefree, carrying the
/// fundamental discriminant and the integral basis {1, omega}, where
/// omega = (1 + sqrt(-d))/2 when d ≡ 3 (mod 4) and omega = sqrt(-d)
/// otherwise. Immutable after construction.
class Field {
 public:
  i64 d() const { return d_; }
  i64 disc() const { return disc_; }
  bool omega_half() const { return omega_half_; }

  /// trace(omega) and norm(omega); every element operation is closed-form
  /// in these two integers.
  i64 omega_trace() const { return omega_half_ ? 1 : 0; }
  i64 omega_norm() const { return omega_half_ ? (1 + d_) / 4 : d_; }

  /// Non-empty when the requested d was not squarefree and was reduced to
  /// its squarefree kernel.
  const std::string& provenance() const { return provenance_; }

  bool operator==(const Field& o) const { return d_ == o.d_; }
  bool operator!=(const Field& o) const { return d_ != o.d_; }

 private:
  friend Field make_field(i64 d);
  Field(i64 d, i64 disc, bool omega_half, std::string provenance)
      : d_(d), disc_(disc), omega_half_(omega_half),
        provenance_(std::move(provenance)) {}

  i64 d_;
  i64 disc_;
  bool omega_half_;
  std::string provenance_;
};

/// Rejects d <= 0. Non-squarefree d is reduced to its squarefree kernel and
/// the reduction recorded in provenance().
Field make_field(i64 d);

/// Field with fundamental discriminant -abs_disc. Rejects non-fundamental
/// values.
Field field_from_abs_disc(i64 abs_disc);

/// Ramified iff p | disc; otherwise Split iff disc is a nonzero quadratic
/// residue mod p (with the usual rule disc ≡ 1 (mod 8) at p = 2).
/// Rejects non-prime p.
SplittingType splitting_type(const Field& field, i64 p);

/// An element a + b*omega with exact rational coordinates.
class FieldElement {
 public:
  FieldElement(const Field& field, const mpq_class& a, const mpq_class& b)
      : field_(field), a_(a), b_(b) {
    a_.canonicalize();
    b_.canonicalize();
  }
  FieldElement(const Field& field, i64 a, i64 b)
      : field_(field), a_(a), b_(b) {}

  const Field& field() const { return field_; }
  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_integral() const {
    return a_.get_den() == 1 && b_.get_den() == 1;
  }

  bool operator==(const FieldElement& o) const {
    return field_ == o.field_ && a_ == o.a_ && b_ == o.b_;
  }
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  /// Total order used for deterministic enumeration and tie-breaking;
  /// compares (a, b) lexicographically.
  static int compare(const FieldElement& x, const FieldElement& y);

  std::string str() const;

 private:
  Field field_;
  mpq_class a_, b_;
};

FieldElement elem_add(const FieldElement& x, const FieldElement& y);
FieldElement elem_sub(const FieldElement& x, const FieldElement& y);
FieldElement elem_mul(const FieldElement& x, const FieldElement& y);
FieldElement elem_neg(const FieldElement& x);
FieldElement elem_conj(const FieldElement& x);
mpq_class elem_norm(const FieldElement& x);
mpq_class elem_trace(const FieldElement& x);
/// Rejects zero divisor.
FieldElement elem_div(const FieldElement& x, const FieldElement& y);
FieldElement elem_inverse(const FieldElement& x);

inline FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  return elem_add(x, y);
}
inline FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  return elem_sub(x, y);
}
inline FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  return elem_mul(x, y);
}
inline FieldElement operator-(const FieldElement& x) { return elem_neg(x); }

/// The units of O_k: {±1} generically, {±1, ±i} for d = 1 and the six
/// sixth roots of unity for d = 3.
std::vector<FieldElement> unit_group(const Field& field);

}  // namespace picard
