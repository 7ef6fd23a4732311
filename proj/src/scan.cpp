#include "picard/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace picard {

i64 record_torsion(const ScanRecord& rec, i64 q, TorsionConvention conv) {
  i64 out = 1;
  for (i64 dvr : rec.structure) {
    if (conv == TorsionConvention::Torsion) {
      out *= gcd_i64(dvr, q);
    } else {
      for (auto [p, e] : factorize(q)) {
        (void)e;
        while (dvr % p == 0) {
          dvr /= p;
          out *= p;
        }
      }
    }
  }
  return out;
}

ScanRecord scan_record_for(i64 abs_disc) {
  ClassGroup g = enumerate_reduced(-abs_disc);
  ScanRecord rec;
  rec.abs_disc = abs_disc;
  rec.d = (abs_disc % 4 == 3) ? abs_disc : abs_disc / 4;
  rec.h = g.h;
  rec.structure = g.structure;
  rec.h3 = record_torsion(rec, 3, TorsionConvention::Torsion);
  rec.h3_primary = record_torsion(rec, 3, TorsionConvention::Primary);
  if (rec.h3 != g.torsion_order(3) || rec.h3_primary != g.primary_order(3)) {
    throw internal_error("scan_record_for: torsion derivation mismatch");
  }
  if (rec.h % rec.h3 != 0) {
    throw internal_error("scan_record_for: h3 does not divide h");
  }
  rec.min_cusps = rec.h / rec.h3;
  rec.one_cusped = (rec.min_cusps == 1);
  rec.convention_mismatch = (rec.h3 != rec.h3_primary);
  return rec;
}

std::vector<i64> fundamental_abs_discs(i64 lo, i64 hi) {
  std::vector<i64> out;
  for (i64 n = std::max<i64>(lo, 3); n <= hi; ++n) {
    if (is_fundamental_discriminant(-n)) out.push_back(n);
  }
  return out;
}

namespace {

template <bool Parallel>
std::vector<ScanRecord> scan_kernel(const std::vector<i64>& discs) {
  std::vector<ScanRecord> out(discs.size());
  std::exception_ptr err;
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
    for (size_t i = 0; i < discs.size(); ++i) {
      try {
        out[i] = scan_record_for(discs[i]);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
  } else {
    for (size_t i = 0; i < discs.size(); ++i) out[i] = scan_record_for(discs[i]);
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace

std::vector<ScanRecord> scan_range_serial(i64 lo, i64 hi) {
  return scan_kernel<false>(fundamental_abs_discs(lo, hi));
}

std::vector<ScanRecord> scan_range_parallel(i64 lo, i64 hi) {
  return scan_kernel<true>(fundamental_abs_discs(lo, hi));
}

ScanCache ScanCache::load(const std::string& path) {
  ScanCache cache;
  std::ifstream in(path);
  if (!in) return cache;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream is(line);
    ScanRecord rec;
    i64 k = 0;
    if (!(is >> rec.abs_disc >> rec.d >> rec.h >> rec.h3 >> rec.h3_primary >>
          k) ||
        k < 0) {
      throw std::invalid_argument("cache: malformed line " +
                                  std::to_string(lineno) + " in " + path);
    }
    for (i64 i = 0; i < k; ++i) {
      i64 dvr;
      if (!(is >> dvr)) {
        throw std::invalid_argument("cache: malformed line " +
                                    std::to_string(lineno) + " in " + path);
      }
      rec.structure.push_back(dvr);
    }
    rec.min_cusps = rec.h / rec.h3;
    rec.one_cusped = (rec.min_cusps == 1);
    rec.convention_mismatch = (rec.h3 != rec.h3_primary);
    cache.records_.push_back(std::move(rec));
  }
  std::sort(cache.records_.begin(), cache.records_.end(),
            [](const ScanRecord& a, const ScanRecord& b) {
              return a.abs_disc < b.abs_disc;
            });
  return cache;
}

bool ScanCache::lookup(i64 abs_disc, ScanRecord* out) const {
  auto it = std::lower_bound(records_.begin(), records_.end(), abs_disc,
                             [](const ScanRecord& r, i64 n) {
                               return r.abs_disc < n;
                             });
  if (it == records_.end() || it->abs_disc != abs_disc) return false;
  if (out) *out = *it;
  return true;
}

void ScanCache::append(const std::string& path,
                       const std::vector<ScanRecord>& fresh) {
  if (fresh.empty()) return;
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw std::invalid_argument("cache: cannot open " + path + " for append");
  }
  for (const ScanRecord& r : fresh) {
    out << r.abs_disc << " " << r.d << " " << r.h << " " << r.h3 << " "
        << r.h3_primary << " " << r.structure.size();
    for (i64 dvr : r.structure) out << " " << dvr;
    out << "\n";
  }
}

std::vector<ScanRecord> scan_records(i64 lo, i64 hi, const ScanOptions& opt) {
  std::vector<i64> discs = fundamental_abs_discs(lo, hi);
  const bool caching = opt.cache_path.has_value() && opt.use_cache;
  ScanCache cache;
  if (caching) cache = ScanCache::load(*opt.cache_path);
  std::vector<ScanRecord> out(discs.size());
  std::vector<char> hit(discs.size(), 0);
  std::vector<i64> missing;
  for (size_t i = 0; i < discs.size(); ++i) {
    if (caching && cache.lookup(discs[i], &out[i])) {
      hit[i] = 1;
    } else {
      missing.push_back(discs[i]);
    }
  }
  std::vector<ScanRecord> fresh =
      opt.parallel ? scan_kernel<true>(missing) : scan_kernel<false>(missing);
  size_t j = 0;
  for (size_t i = 0; i < discs.size(); ++i) {
    if (!hit[i]) out[i] = fresh[j++];
  }
  if (j != fresh.size()) throw internal_error("scan_records: merge mismatch");
  if (caching) ScanCache::append(*opt.cache_path, fresh);
  return out;
}

std::vector<ScanRecord> scan_one_cusped(i64 max_abs_disc,
                                        const ScanOptions& opt,
                                        TorsionConvention conv) {
  if (max_abs_disc < 3) {
    throw std::invalid_argument("scan_one_cusped: max must be >= 3");
  }
  std::vector<ScanRecord> out;
  for (ScanRecord& rec : scan_records(3, max_abs_disc, opt)) {
    if (rec.h == record_torsion(rec, 3, conv)) out.push_back(std::move(rec));
  }
  return out;
}

NCuspedReport scan_n_cusped(i64 n, i64 max_abs_disc, const ScanOptions& opt,
                            TorsionConvention conv) {
  if (n < 1) throw std::invalid_argument("scan_n_cusped: N must be >= 1");
  NCuspedReport rep;
  for (ScanRecord& rec : scan_records(3, max_abs_disc, opt)) {
    i64 ratio = rec.h / record_torsion(rec, 3, conv);
    if (ratio <= n) {
      rep.max_attaining = rec.abs_disc;
      rep.records.push_back(std::move(rec));
    }
  }
  return rep;
}

std::vector<GrowthRow> growth_report(const std::vector<GrowthRange>& ranges,
                                     const ScanOptions& opt,
                                     TorsionConvention conv) {
  i64 prev_hi = 0;
  for (const GrowthRange& r : ranges) {
    if (r.lo > r.hi) throw std::invalid_argument("growth_report: empty range");
    if (r.lo < prev_hi) {
      throw std::invalid_argument(
          "growth_report: ranges must be increasing and disjoint");
    }
    prev_hi = r.hi;
  }
  std::vector<GrowthRow> rows;
  for (const GrowthRange& r : ranges) {
    GrowthRow row{r.lo, r.hi, 0, 0, true};
    for (const ScanRecord& rec : scan_records(r.lo, r.hi, opt)) {
      i64 ratio = rec.h / record_torsion(rec, 3, conv);
      if (row.min_ratio == 0 || ratio < row.min_ratio) {
        row.min_ratio = ratio;
        row.attained_at = rec.abs_disc;
      }
    }
    if (row.min_ratio == 0) {
      throw std::invalid_argument(
          "growth_report: no fundamental discriminant in range");
    }
    if (!rows.empty()) {
      row.nondecreasing_from_prev = row.min_ratio >= rows.back().min_ratio;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<ScanRecord> higher_one_cusped(i64 r, i64 max_abs_disc,
                                          const ScanOptions& opt,
                                          TorsionConvention conv) {
  if (r < 2) throw std::invalid_argument("higher_one_cusped: r must be >= 2");
  i64 q = 2 * r + 1;
  std::vector<ScanRecord> out;
  for (ScanRecord& rec : scan_records(3, max_abs_disc, opt)) {
    // q^0 * h^r / h_{k,q} = 1 with h_{k,q} <= h forces h = 1
    mpz_class hr;
    mpz_class h(rec.h);
    mpz_pow_ui(hr.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(r));
    if (hr == record_torsion(rec, q, conv)) out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace picard
