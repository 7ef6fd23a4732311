#pragma once

#include <gmpxx.h>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "picard/classgroup.hpp"
#include "picard/quadfield.hpp"

namespace picard {

/// Which reading of h_{k,q} a formula uses: the order of the q-torsion
/// subgroup #Cl[q] (default everywhere) or the order of the q-Sylow
/// subgroup. The two differ exactly when the q-Sylow is not elementary
/// abelian; the catalog scan reports every discriminant where they
/// disagree.
enum class TorsionConvention { Torsion, Primary };

enum class LocalType { HyperspecialV0, OtherVertexV1, OtherVertexV2, Iwahori };

/// Per-prime local level data: the parahoric type at each prime (every
/// unlisted prime is the hyperspecial vertex) plus the subset Xi of the
/// Iwahori primes. Validation: Iwahori and OtherVertexV2 entries only at
/// split primes, Xi inside the Iwahori set.
class KfConfig {
 public:
  KfConfig(const Field& field, std::map<i64, LocalType> local_types,
           std::set<i64> xi);

  const Field& field() const { return field_; }
  const std::map<i64, LocalType>& local_types() const { return local_; }
  const std::set<i64>& xi() const { return xi_; }

  std::set<i64> iwahori_primes() const;
  /// m_{K_f} = |I \ Xi|.
  i64 m() const;

 private:
  Field field_;
  std::map<i64, LocalType> local_;
  std::set<i64> xi_;
};

/// Congruence level data (P1, P2, B) with B partitioned by splitting type.
/// P1, P2, B are pairwise disjoint and P1, P2 contain only split primes.
class CongruenceLevel {
 public:
  CongruenceLevel(const Field& field, std::set<i64> p1, std::set<i64> p2,
                  std::set<i64> b);

  const Field& field() const { return field_; }
  const std::set<i64>& p1() const { return p1_; }
  const std::set<i64>& p2() const { return p2_; }
  const std::set<i64>& b_split() const { return b_split_; }
  const std::set<i64>& b_inert() const { return b_inert_; }
  const std::set<i64>& b_ramified() const { return b_ramified_; }

 private:
  Field field_;
  std::set<i64> p1_, p2_, b_split_, b_inert_, b_ramified_;
};

/// Cusp count of the standard group: h_k.
mpz_class cusps_std(const Field& field);
mpz_class cusps_std(const ClassGroup& group);

/// Cusp count of the congruence subgroup attached to the level:
/// 2^{|P1|+|P2|+|B^i|+|B^r|} * 3^{|B^s|} * h_k.
mpz_class cusps_congruence(const CongruenceLevel& level);

/// The level cut out by intersecting the maximal lattice of a
/// configuration with the standard group: v1/v2 vertices at split primes
/// land in P1/P2, Iwahori primes and nonsplit non-hyperspecial vertices
/// land in B.
CongruenceLevel congruence_from_config(const KfConfig& config);

/// Cusp count of the maximal lattice: 3^{m} * h / h_{k,3}, asserting exact
/// divisibility.
mpz_class cusps_maximal(const KfConfig& config,
                        TorsionConvention conv = TorsionConvention::Torsion);

/// Index of the normalizer of the standard group: 3 h_{k,3}.
mpz_class normalizer_index_std(
    const Field& field, TorsionConvention conv = TorsionConvention::Torsion);

/// Upper bound 3^{1+|I|} h_{k,3} for the normalizer index of the lattice
/// attached to the configuration (a bound, not an equality).
mpz_class normalizer_index_bound(
    const KfConfig& config, TorsionConvention conv = TorsionConvention::Torsion);

/// Higher-rank standard count: h^r for lattices in SU(r+1, r).
mpz_class cusps_std_higher(const Field& field, i64 r);

/// Higher-rank maximal count with q = 2r+1: q^m h^r / h_{k,q}, asserting
/// divisibility. For composite q the simple-type classification is not
/// exhaustive; responses carry a flag (see CuspResult).
mpz_class cusps_higher(const Field& field, i64 r, const KfConfig& config,
                       TorsionConvention conv = TorsionConvention::Torsion);

/// Result record carried to the CLI: formula tag, inputs, exact value,
/// caveat flags, citation label.
struct CuspResult {
  std::string formula;
  std::vector<std::pair<std::string, std::string>> inputs;
  mpz_class value;
  std::vector<std::string> flags;
  std::string citation;
};

CuspResult cusps_std_result(const Field& field);
CuspResult cusps_congruence_result(const CongruenceLevel& level);
CuspResult cusps_maximal_result(const KfConfig& config, TorsionConvention conv);
CuspResult normalizer_index_std_result(const Field& field,
                                       TorsionConvention conv);
CuspResult normalizer_index_bound_result(const KfConfig& config,
                                         TorsionConvention conv);
CuspResult cusps_std_higher_result(const Field& field, i64 r);
CuspResult cusps_higher_result(const Field& field, i64 r,
                               const KfConfig& config, TorsionConvention conv);

}  // namespace picard
