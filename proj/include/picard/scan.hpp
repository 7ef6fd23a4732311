#pragma once

#include <optional>
#include <string>
#include <vector>

#include "picard/cusp_formulas.hpp"

namespace picard {

/// One catalog entry per fundamental discriminant. h3 is the 3-torsion
/// order #Cl[3], h3_primary the 3-Sylow order; min_cusps = h/h3 is the
/// cusp count of the minimal lattice over that field (Iwahori set = Xi).
struct ScanRecord {
  i64 abs_disc = 0;
  i64 d = 0;
  i64 h = 0;
  i64 h3 = 0;
  i64 h3_primary = 0;
  std::vector<i64> structure;
  i64 min_cusps = 0;
  bool one_cusped = false;
  bool convention_mismatch = false;

  bool operator==(const ScanRecord& o) const = default;
};

/// h_{k,q} of a record under either convention, from the elementary
/// divisors: #Cl[q] = prod gcd(d_i, q), Sylow order = prod q^{v_q(d_i)}.
i64 record_torsion(const ScanRecord& rec, i64 q, TorsionConvention conv);

ScanRecord scan_record_for(i64 abs_disc);

std::vector<i64> fundamental_abs_discs(i64 lo, i64 hi);

/// Serial reference kernel, kept for testing and benchmarking.
std::vector<ScanRecord> scan_range_serial(i64 lo, i64 hi);
/// OpenMP kernel over discriminant blocks; the output order is restored by
/// index, so results are identical to the serial kernel.
std::vector<ScanRecord> scan_range_parallel(i64 lo, i64 hi);

/// Append-only line cache, decimal integers only:
///   abs_disc d h h3 h3_primary k d_1 ... d_k
class ScanCache {
 public:
  static ScanCache load(const std::string& path);

  bool lookup(i64 abs_disc, ScanRecord* out) const;
  size_t size() const { return records_.size(); }

  /// Single-merger write: appends the fresh records in ascending order.
  static void append(const std::string& path,
                     const std::vector<ScanRecord>& fresh);

 private:
  std::vector<ScanRecord> records_;  // sorted by abs_disc
};

struct ScanOptions {
  std::optional<std::string> cache_path;
  bool use_cache = true;  // false under --no-cache: recompute, do not write
  bool parallel = true;
};

/// All records for fundamental |disc| in [lo, hi], cache-aware.
std::vector<ScanRecord> scan_records(i64 lo, i64 hi, const ScanOptions& opt);

std::vector<ScanRecord> scan_one_cusped(
    i64 max_abs_disc, const ScanOptions& opt = {},
    TorsionConvention conv = TorsionConvention::Torsion);

struct NCuspedReport {
  std::vector<ScanRecord> records;
  std::optional<i64> max_attaining;  // largest |disc| with min_cusps <= N
};

NCuspedReport scan_n_cusped(i64 n, i64 max_abs_disc,
                            const ScanOptions& opt = {},
                            TorsionConvention conv = TorsionConvention::Torsion);

struct GrowthRange {
  i64 lo, hi;
};

struct GrowthRow {
  i64 lo, hi;
  i64 min_ratio;
  i64 attained_at;
  bool nondecreasing_from_prev;
};

/// Per-range minimum of h/h_{k,3}; ranges must be nonempty, increasing and
/// disjoint. Reports only; asserts nothing about completeness.
std::vector<GrowthRow> growth_report(
    const std::vector<GrowthRange>& ranges, const ScanOptions& opt = {},
    TorsionConvention conv = TorsionConvention::Torsion);

/// Fields whose higher-rank maximal lattices (rank r, m = 0) have one
/// cusp; by the divisibility invariants this is exactly the h = 1 list.
std::vector<ScanRecord> higher_one_cusped(
    i64 r, i64 max_abs_disc, const ScanOptions& opt = {},
    TorsionConvention conv = TorsionConvention::Torsion);

}  // namespace picard
