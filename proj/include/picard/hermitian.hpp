#pragma once

#include <optional>
#include <string>
#include <vector>

#include "picard/ideals.hpp"

namespace picard {

/// Vector in k^3. The hermitian form is the fixed antidiagonal form with
/// matrix rows (0,0,1), (0,-1,0), (1,0,0), so h(x,x) = tr(x1 conj(x3)) -
/// N(x2), an exact rational.
class Vec3k {
 public:
  Vec3k(FieldElement x1, FieldElement x2, FieldElement x3);

  const Field& field() const { return field_; }
  const FieldElement& operator[](int i) const { return e_[i]; }
  bool is_zero() const;
  bool is_integral() const;
  bool operator==(const Vec3k& o) const { return e_ == o.e_; }
  std::string str() const;

 private:
  Field field_;
  std::vector<FieldElement> e_;
};

mpq_class h0_self(const Vec3k& x);

/// Exact test h0(x, x) = 0. Rejects the zero vector.
bool is_isotropic(const Field& field, const Vec3k& x);

/// An isotropic line in k^3 with a canonical integral representative.
/// Canonicalization: divide by the first nonzero coordinate, clear
/// denominators to a rationally primitive integral vector, divide by a
/// generator of the content ideal when that ideal is principal, then take
/// the lexicographically least unit multiple. Deterministic, so equal
/// lines compare equal componentwise.
class IsotropicLine {
 public:
  static IsotropicLine from_vector(const Field& field, const Vec3k& x);

  const Field& field() const { return field_; }
  const Vec3k& representative() const { return rep_; }
  bool operator==(const IsotropicLine& o) const { return rep_ == o.rep_; }
  bool operator!=(const IsotropicLine& o) const { return !(rep_ == o.rep_); }
  std::string str() const { return rep_.str(); }

 private:
  IsotropicLine(const Field& field, Vec3k rep)
      : field_(field), rep_(std::move(rep)) {}
  Field field_;
  Vec3k rep_;
};

/// I_x = {alpha in k : alpha x in O_k^3}, the intersection of the ideals
/// x_i^{-1} O_k over the nonzero coordinates.
FractionalIdeal line_denominator_ideal(const IsotropicLine& line);

/// cl(line) = class of I_x; independent of the representative.
FormClass ideal_class_of_line(const IsotropicLine& line);

struct LineSearchResult {
  IsotropicLine line;
  Vec3k vector;  // the primitive integral witness found by the search
  i64 height;    // max over coordinates of N(x_i)
};

/// Enumerates primitive integral isotropic vectors with all coordinate
/// norms <= height_bound, ordered by (height, rank of x1, x2, x3) where
/// elements are ranked by (norm, a, b); returns the first line of class c.
/// An empty result only means "not within the bound".
std::optional<LineSearchResult> find_line_with_class(const Field& field,
                                                     const FormClass& c,
                                                     i64 height_bound);

/// One enumeration pass recording, for every ideal class, the first line
/// found with that class; entry i corresponds to group.reduced_forms[i].
std::vector<std::optional<LineSearchResult>> zink_search(const Field& field,
                                                         i64 height_bound);

/// 3x3 matrix over k with membership flags for the standard Picard modular
/// group, all verified at construction: preserves_h0 means conj(M)^T h0 M
/// = h0, integral means all entries lie in O_k, det_one means det M = 1.
class UnitaryMatrix {
 public:
  UnitaryMatrix(const Field& field, std::vector<FieldElement> entries);

  static UnitaryMatrix identity(const Field& field);
  /// The antidiagonal involution (1, -1, 1); equals the form matrix.
  static UnitaryMatrix weyl(const Field& field);
  /// diag(u, conj(u)/u, conj(u)^{-1}) for a unit u.
  static UnitaryMatrix diagonal_unit(const Field& field,
                                     const FieldElement& u);
  /// Upper unipotent [[1, conj(t), s], [0, 1, t], [0, 0, 1]]; requires the
  /// h0 constraint tr(s) = N(t), which is re-verified at construction.
  static UnitaryMatrix heisenberg(const Field& field, const FieldElement& t,
                                  const FieldElement& s);

  const Field& field() const { return field_; }
  const FieldElement& at(int i, int j) const { return e_[3 * i + j]; }
  bool preserves_h0() const { return preserves_h0_; }
  bool integral() const { return integral_; }
  bool det_one() const { return det_one_; }
  bool in_gamma_std() const {
    return preserves_h0_ && integral_ && det_one_;
  }

  Vec3k apply(const Vec3k& v) const;
  UnitaryMatrix mul(const UnitaryMatrix& o) const;
  UnitaryMatrix inverse() const;
  FieldElement det() const;

  bool operator==(const UnitaryMatrix& o) const { return e_ == o.e_; }
  std::string str() const;

 private:
  Field field_;
  std::vector<FieldElement> e_;  // row-major
  bool preserves_h0_, integral_, det_one_;
};

/// A finite sample of the standard Picard modular group: the identity, the
/// antidiagonal involution w, the diagonal matrices from units, and the
/// Heisenberg unipotents N(t, s) with N(t), N(s) <= norm_bound, together
/// with their w-conjugates (lower unipotents). Every element passes all
/// three membership flags. No generation claim is made.
std::vector<UnitaryMatrix> gamma_std_sample(const Field& field,
                                            i64 norm_bound);

/// Doubles the norm bound until the sample has at least min_count
/// elements.
std::vector<UnitaryMatrix> gamma_std_sample_at_least(const Field& field,
                                                     int min_count);

/// True iff cl(gamma * line) = cl(line) for every word gamma of length <=
/// word_length over the sample. A false return indicates a bug in the
/// ideal class machinery.
bool class_invariance_check(const Field& field, const IsotropicLine& line,
                            const std::vector<UnitaryMatrix>& sample,
                            int word_length);

/// Best-effort bidirectional search for a word w = g_{i_k} ... g_{i_1}
/// over the sample with w(line1) = line2. The returned indices are in
/// application order. An empty result is inconclusive.
std::optional<std::vector<int>> equivalence_search(
    const Field& field, const IsotropicLine& line1, const IsotropicLine& line2,
    const std::vector<UnitaryMatrix>& sample, int word_length);

/// Integral elements of norm <= bound, sorted by (norm, a, b).
std::vector<FieldElement> elements_of_norm_up_to(const Field& field,
                                                 i64 bound);

}  // namespace picard
