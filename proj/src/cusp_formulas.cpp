#include "picard/cusp_formulas.hpp"

#include <stdexcept>

namespace picard {

namespace {

mpz_class pow_z(i64 base, i64 exp) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return r;
}

i64 h_kq(const ClassGroup& g, i64 q, TorsionConvention conv) {
  return conv == TorsionConvention::Torsion ? g.torsion_order(q)
                                            : g.primary_order(q);
}

std::string join_set(const std::set<i64>& s) {
  std::string out;
  for (i64 p : s) {
    if (!out.empty()) out += ",";
    out += std::to_string(p);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

KfConfig::KfConfig(const Field& field, std::map<i64, LocalType> local_types,
                   std::set<i64> xi)
    : field_(field), local_(std::move(local_types)), xi_(std::move(xi)) {
  for (const auto& [p, type] : local_) {
    SplittingType st = splitting_type(field_, p);  // validates primality
    if (type == LocalType::Iwahori && st != SplittingType::Split) {
      throw std::invalid_argument("KfConfig: Iwahori entry at nonsplit prime " +
                                  std::to_string(p));
    }
    if (type == LocalType::OtherVertexV2 && st != SplittingType::Split) {
      throw std::invalid_argument(
          "KfConfig: vertex v2 does not exist at nonsplit prime " +
          std::to_string(p));
    }
  }
  for (i64 p : xi_) {
    auto it = local_.find(p);
    if (it == local_.end() || it->second != LocalType::Iwahori) {
      throw std::invalid_argument("KfConfig: Xi member " + std::to_string(p) +
                                  " is not an Iwahori prime");
    }
  }
}

std::set<i64> KfConfig::iwahori_primes() const {
  std::set<i64> out;
  for (const auto& [p, type] : local_) {
    if (type == LocalType::Iwahori) out.insert(p);
  }
  return out;
}

i64 KfConfig::m() const {
  i64 m = 0;
  for (const auto& [p, type] : local_) {
    if (type == LocalType::Iwahori && xi_.find(p) == xi_.end()) ++m;
  }
  return m;
}

CongruenceLevel::CongruenceLevel(const Field& field, std::set<i64> p1,
                                 std::set<i64> p2, std::set<i64> b)
    : field_(field), p1_(std::move(p1)), p2_(std::move(p2)) {
  for (i64 p : p1_) {
    if (splitting_type(field_, p) != SplittingType::Split) {
      throw std::invalid_argument("CongruenceLevel: P1 member " +
                                  std::to_string(p) + " is not split");
    }
    if (p2_.count(p) || b.count(p)) {
      throw std::invalid_argument("CongruenceLevel: sets are not disjoint");
    }
  }
  for (i64 p : p2_) {
    if (splitting_type(field_, p) != SplittingType::Split) {
      throw std::invalid_argument("CongruenceLevel: P2 member " +
                                  std::to_string(p) + " is not split");
    }
    if (b.count(p)) {
      throw std::invalid_argument("CongruenceLevel: sets are not disjoint");
    }
  }
  for (i64 p : b) {
    switch (splitting_type(field_, p)) {
      case SplittingType::Split:
        b_split_.insert(p);
        break;
      case SplittingType::Inert:
        b_inert_.insert(p);
        break;
      case SplittingType::Ramified:
        b_ramified_.insert(p);
        break;
    }
  }
}

mpz_class cusps_std(const Field& field) {
  return mpz_class(class_number(field.disc()));
}

mpz_class cusps_std(const ClassGroup& group) { return mpz_class(group.h); }

mpz_class cusps_congruence(const CongruenceLevel& level) {
  i64 e2 = static_cast<i64>(level.p1().size() + level.p2().size() +
                            level.b_inert().size() + level.b_ramified().size());
  i64 e3 = static_cast<i64>(level.b_split().size());
  return pow_z(2, e2) * pow_z(3, e3) * cusps_std(level.field());
}

CongruenceLevel congruence_from_config(const KfConfig& config) {
  std::set<i64> p1, p2, b;
  for (const auto& [p, type] : config.local_types()) {
    SplittingType st = splitting_type(config.field(), p);
    switch (type) {
      case LocalType::HyperspecialV0:
        break;
      case LocalType::OtherVertexV1:
        if (st == SplittingType::Split) {
          p1.insert(p);
        } else {
          b.insert(p);  // nonsplit vertex stabilizer contains a Borel mod p
        }
        break;
      case LocalType::OtherVertexV2:
        p2.insert(p);
        break;
      case LocalType::Iwahori:
        b.insert(p);
        break;
    }
  }
  return CongruenceLevel(config.field(), p1, p2, b);
}

mpz_class cusps_maximal(const KfConfig& config, TorsionConvention conv) {
  ClassGroup g = enumerate_reduced(config.field().disc());
  i64 h3 = h_kq(g, 3, conv);
  if (g.h % h3 != 0) {
    throw internal_error("cusps_maximal: h_{k,3} does not divide h");
  }
  return pow_z(3, config.m()) * mpz_class(g.h / h3);
}

mpz_class normalizer_index_std(const Field& field, TorsionConvention conv) {
  ClassGroup g = enumerate_reduced(field.disc());
  return 3 * mpz_class(h_kq(g, 3, conv));
}

mpz_class normalizer_index_bound(const KfConfig& config,
                                 TorsionConvention conv) {
  ClassGroup g = enumerate_reduced(config.field().disc());
  i64 iwahori = static_cast<i64>(config.iwahori_primes().size());
  return pow_z(3, 1 + iwahori) * mpz_class(h_kq(g, 3, conv));
}

mpz_class cusps_std_higher(const Field& field, i64 r) {
  if (r < 1) throw std::invalid_argument("cusps_std_higher: r must be >= 1");
  mpz_class h = cusps_std(field);
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(r));
  return out;
}

mpz_class cusps_higher(const Field& field, i64 r, const KfConfig& config,
                       TorsionConvention conv) {
  if (r < 1) throw std::invalid_argument("cusps_higher: r must be >= 1");
  if (config.field() != field) {
    throw std::invalid_argument("cusps_higher: config field mismatch");
  }
  i64 q = 2 * r + 1;
  ClassGroup g = enumerate_reduced(field.disc());
  i64 hq = h_kq(g, q, conv);
  mpz_class hr;
  mpz_class h(g.h);
  mpz_pow_ui(hr.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(r));
  if (hr % hq != 0) {
    throw internal_error("cusps_higher: h_{k,q} does not divide h^r");
  }
  return pow_z(q, config.m()) * (hr / hq);
}

namespace {

void add_field_inputs(CuspResult& r, const Field& field) {
  r.inputs.emplace_back("disc", std::to_string(field.disc()));
  r.inputs.emplace_back("d", std::to_string(field.d()));
}

void add_config_inputs(CuspResult& r, const KfConfig& config) {
  r.inputs.emplace_back("iwahori", join_set(config.iwahori_primes()));
  r.inputs.emplace_back("xi", join_set(config.xi()));
  r.inputs.emplace_back("m", std::to_string(config.m()));
}

void add_convention_flag(CuspResult& r, TorsionConvention conv) {
  if (conv == TorsionConvention::Primary) {
    r.flags.push_back("torsion_convention=primary");
  }
}

// The orbit oracle excludes p = 2; level data naming 2 is computed like
// any other prime but tagged.
void add_prime2_flag(CuspResult& r, bool has_two) {
  if (has_two) r.flags.push_back("prime_2_untested_by_oracle");
}

}  // namespace

CuspResult cusps_std_result(const Field& field) {
  CuspResult r;
  r.formula = "cusps_std";
  add_field_inputs(r, field);
  r.value = cusps_std(field);
  r.citation = "Cor 4.3";
  return r;
}

CuspResult cusps_congruence_result(const CongruenceLevel& level) {
  CuspResult r;
  r.formula = "cusps_congruence";
  add_field_inputs(r, level.field());
  r.inputs.emplace_back("p1", join_set(level.p1()));
  r.inputs.emplace_back("p2", join_set(level.p2()));
  std::set<i64> b = level.b_split();
  b.insert(level.b_inert().begin(), level.b_inert().end());
  b.insert(level.b_ramified().begin(), level.b_ramified().end());
  r.inputs.emplace_back("b", join_set(b));
  r.value = cusps_congruence(level);
  add_prime2_flag(r, level.p1().count(2) || level.p2().count(2) ||
                         level.b_split().count(2) || level.b_inert().count(2) ||
                         level.b_ramified().count(2));
  r.citation = "Prop 4.4";
  return r;
}

CuspResult cusps_maximal_result(const KfConfig& config,
                                TorsionConvention conv) {
  CuspResult r;
  r.formula = "cusps_maximal";
  add_field_inputs(r, config.field());
  add_config_inputs(r, config);
  r.value = cusps_maximal(config, conv);
  add_convention_flag(r, conv);
  add_prime2_flag(r, config.local_types().count(2) > 0);
  r.flags.push_back("xi_realizability_assumed");
  r.citation = "Thm 4.8";
  return r;
}

CuspResult normalizer_index_std_result(const Field& field,
                                       TorsionConvention conv) {
  CuspResult r;
  r.formula = "normalizer_index_std";
  add_field_inputs(r, field);
  r.value = normalizer_index_std(field, conv);
  add_convention_flag(r, conv);
  r.citation = "Prop 4.6";
  return r;
}

CuspResult normalizer_index_bound_result(const KfConfig& config,
                                         TorsionConvention conv) {
  CuspResult r;
  r.formula = "normalizer_index_bound";
  add_field_inputs(r, config.field());
  add_config_inputs(r, config);
  r.value = normalizer_index_bound(config, conv);
  add_convention_flag(r, conv);
  r.flags.push_back("upper_bound_only");
  r.citation = "Prop 3.1";
  return r;
}

CuspResult cusps_std_higher_result(const Field& field, i64 r_rank) {
  CuspResult r;
  r.formula = "cusps_std_higher";
  add_field_inputs(r, field);
  r.inputs.emplace_back("r", std::to_string(r_rank));
  r.value = cusps_std_higher(field, r_rank);
  r.citation = "Thm 5.2";
  return r;
}

CuspResult cusps_higher_result(const Field& field, i64 r_rank,
                               const KfConfig& config,
                               TorsionConvention conv) {
  CuspResult r;
  r.formula = "cusps_higher";
  add_field_inputs(r, field);
  r.inputs.emplace_back("r", std::to_string(r_rank));
  r.inputs.emplace_back("q", std::to_string(2 * r_rank + 1));
  add_config_inputs(r, config);
  r.value = cusps_higher(field, r_rank, config, conv);
  add_convention_flag(r, conv);
  add_prime2_flag(r, config.local_types().count(2) > 0);
  if (!is_prime(2 * r_rank + 1)) {
    r.flags.push_back("q_composite_simple_type_only");
  }
  r.flags.push_back("xi_realizability_assumed");
  r.citation = "Thm 5.3";
  return r;
}

}  // namespace picard
