// Acceptance suite: runs every catalog-level requirement end to end and
// prints one pass/fail line per criterion. Exit code = number of failed
// criteria.

#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "picard/cli.hpp"
#include "picard/hermitian.hpp"
#include "picard/modp_orbits.hpp"
#include "picard/report.hpp"
#include "picard/scan.hpp"
#include "oracles.hpp"

using namespace picard;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
  int id;
  std::string name;
  bool passed;
  double seconds;
  std::string detail;
};

std::vector<Criterion> results;

void report(int id, const std::string& name, bool passed, double secs,
            const std::string& detail = "") {
  results.push_back({id, name, passed, secs, detail});
  std::cout << (passed ? "[PASS]" : "[FAIL]") << " criterion " << id << ": "
            << name << " (" << secs << "s)";
  if (!detail.empty()) std::cout << "  -- " << detail;
  std::cout << "\n" << std::flush;
}

// ---------------------------------------------------------------------------
// 1. Table reproduction, exact set equality, single-threaded, < 30 s.
// ---------------------------------------------------------------------------
void criterion1() {
  auto t0 = Clock::now();
  ScanOptions serial;
  serial.parallel = false;
  bool ok = true;
  std::ostringstream detail;

  auto records = scan_one_cusped(1000, serial);
  std::vector<i64> h1, h3;
  for (const auto& r : records) {
    if (r.h == 1) h1.push_back(r.abs_disc);
    if (r.h == 3) h3.push_back(r.abs_disc);
  }
  const std::vector<i64> h1_expected{3, 4, 7, 8, 11, 19, 43, 67, 163};
  const std::vector<i64> h3_expected{23,  31,  59,  83,  107, 139, 211, 283,
                                     307, 331, 379, 499, 547, 643, 883, 907};
  if (records.size() != 25 || h1 != h1_expected || h3 != h3_expected) {
    ok = false;
    detail << "max 1000 gave " << records.size() << " records; ";
  }

  auto wide = scan_one_cusped(4100, serial);
  bool found4027 = false;
  for (const auto& r : wide) {
    if (r.abs_disc == 4027) {
      found4027 = r.h == 9 && r.structure == std::vector<i64>{3, 3};
    } else if (r.abs_disc > 1000) {
      ok = false;
      detail << "unexpected catalog entry " << r.abs_disc << "; ";
    }
  }
  if (!found4027) {
    ok = false;
    detail << "4027 missing or wrong structure; ";
  }
  if (wide.size() != 26) {
    ok = false;
    detail << "max 4100 gave " << wide.size() << " records; ";
  }

  double secs = seconds_since(t0);
  if (secs >= 30.0) {
    ok = false;
    detail << "exceeded the 30 s budget";
  }
  report(1, "one-cusped catalog reproduction (exact)", ok, secs, detail.str());
}

// ---------------------------------------------------------------------------
// 2. Local orbit oracle vs formula exponents, exact, < 60 s.
// ---------------------------------------------------------------------------
void criterion2() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;

  struct Case {
    i64 d, p;
  };
  // split ladder (1, 2, 2, 3) and point count p^2 + p + 1
  for (Case c : {Case{1, 5}, Case{3, 7}, Case{7, 11}, Case{1, 13}}) {
    Field f = make_field(c.d);
    if (splitting_type(f, c.p) != SplittingType::Split ||
        modp_isotropic_count(f, c.p) != c.p * c.p + c.p + 1 ||
        modp_parabolic_orbits(f, c.p, ModPSubgroup::Full) != 1 ||
        modp_parabolic_orbits(f, c.p, ModPSubgroup::P1) != 2 ||
        modp_parabolic_orbits(f, c.p, ModPSubgroup::P2) != 2 ||
        modp_parabolic_orbits(f, c.p, ModPSubgroup::Borel) != 3) {
      ok = false;
      detail << "split p=" << c.p << " failed; ";
    }
  }
  // inert (1, 2) and p^3 + 1
  for (Case c : {Case{1, 3}, Case{1, 7}}) {
    Field f = make_field(c.d);
    if (splitting_type(f, c.p) != SplittingType::Inert ||
        modp_isotropic_count(f, c.p) != c.p * c.p * c.p + 1 ||
        modp_parabolic_orbits(f, c.p, ModPSubgroup::Full) != 1 ||
        modp_parabolic_orbits(f, c.p, ModPSubgroup::Borel) != 2) {
      ok = false;
      detail << "inert p=" << c.p << " failed; ";
    }
  }
  // ramified (1, 2) and p + 1
  for (Case c : {Case{5, 5}, Case{7, 7}, Case{3, 3}}) {
    Field f = make_field(c.d);
    if (splitting_type(f, c.p) != SplittingType::Ramified ||
        modp_isotropic_count(f, c.p) != c.p + 1 ||
        modp_parabolic_orbits(f, c.p, ModPSubgroup::Full) != 1 ||
        modp_parabolic_orbits(f, c.p, ModPSubgroup::Borel) != 2) {
      ok = false;
      detail << "ramified p=" << c.p << " failed; ";
    }
  }

  double secs = seconds_since(t0);
  if (secs >= 60.0) {
    ok = false;
    detail << "exceeded the 60 s budget";
  }
  report(2, "mod-p orbit counts confirm every formula exponent", ok, secs,
         detail.str());
}

// ---------------------------------------------------------------------------
// 3. Every ideal class realized by an isotropic line for |disc| <= 200,
//    and cl is invariant under sample words of length 3. < 300 s.
// ---------------------------------------------------------------------------
void criterion3() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;
  i64 worst_height = 0, worst_disc = 0;

  for (i64 n : fundamental_abs_discs(3, 200)) {
    Field f = field_from_abs_disc(n);
    std::vector<std::optional<LineSearchResult>> found;
    for (i64 bound = 8; bound <= 512; bound *= 2) {
      found = zink_search(f, bound);
      bool all = true;
      for (const auto& r : found) {
        if (!r) all = false;
      }
      if (all) break;
    }
    auto sample = gamma_std_sample_at_least(f, 20);
    for (const auto& r : found) {
      if (!r) {
        ok = false;
        detail << "|disc|=" << n << ": class not realized within 512; ";
        continue;
      }
      if (r->height > worst_height) {
        worst_height = r->height;
        worst_disc = n;
      }
      if (!class_invariance_check(f, r->line, sample, 3)) {
        ok = false;
        detail << "|disc|=" << n << ": invariance failed; ";
      }
    }
  }

  double secs = seconds_since(t0);
  std::ostringstream summary;
  summary << "max height " << worst_height << " at |disc|=" << worst_disc;
  if (secs >= 300.0) {
    ok = false;
    summary << "; exceeded the 300 s budget";
  }
  report(3, "line search surjectivity and class invariance, |disc| <= 200",
         ok, secs, detail.str() + summary.str());
}

// ---------------------------------------------------------------------------
// 4. Formula consistency: (a) minimal count = h/h3 integral to 1e4;
//    (b) r=1 higher count = maximal count on 500 random configs;
//    (c) higher one-cusped lists for r=2..5 are the nine h=1 fields.
// ---------------------------------------------------------------------------
void criterion4() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;

  ScanOptions opt;
  auto records = scan_records(3, 10000, opt);
  for (const auto& rec : records) {
    if (rec.h % rec.h3 != 0) {
      ok = false;
      detail << "h3 does not divide h at " << rec.abs_disc << "; ";
      break;
    }
  }
  // (a) the formula against the records on every field
  for (const auto& rec : records) {
    Field f = field_from_abs_disc(rec.abs_disc);
    mpz_class v = cusps_maximal(KfConfig(f, {}, {}));
    if (v != rec.h / rec.h3 || v < 1) {
      ok = false;
      detail << "cusps_maximal mismatch at " << rec.abs_disc << "; ";
      break;
    }
  }

  // (b) 500 random configs
  std::mt19937_64 rng(777);
  std::vector<i64> pool;
  for (const auto& rec : records) {
    if (rec.abs_disc <= 500) pool.push_back(rec.abs_disc);
  }
  for (int trial = 0; trial < 500; ++trial) {
    i64 n = pool[rng() % pool.size()];
    Field f = field_from_abs_disc(n);
    std::map<i64, LocalType> local;
    std::set<i64> xi;
    int want = static_cast<int>(rng() % 3);
    for (i64 p = 2; want > 0 && p < 60; ++p) {
      if (is_prime(p) && splitting_type(f, p) == SplittingType::Split) {
        local[p] = LocalType::Iwahori;
        if (rng() % 2) xi.insert(p);
        --want;
      }
    }
    KfConfig config(f, local, xi);
    if (cusps_higher(f, 1, config) != cusps_maximal(config)) {
      ok = false;
      detail << "r=1 mismatch at " << n << "; ";
      break;
    }
  }

  // (c) nine class-number-one fields, any rank
  const std::vector<i64> nine{3, 4, 7, 8, 11, 19, 43, 67, 163};
  for (i64 r = 2; r <= 5; ++r) {
    auto lists = higher_one_cusped(r, 10000, opt);
    std::vector<i64> got;
    for (const auto& rec : lists) got.push_back(rec.abs_disc);
    if (got != nine) {
      ok = false;
      detail << "rank " << r << " list wrong (" << got.size() << " entries); ";
    }
  }

  report(4, "formula consistency suite", ok, seconds_since(t0), detail.str());
}

// ---------------------------------------------------------------------------
// 5. Growth substitute property over [1e3, 1e4] and [1e4, 1e5]:
//    minima nondecreasing, and the last decade's minimum >= 3.
//    The scan is the oracle here; failures are reported as data.
// ---------------------------------------------------------------------------
void criterion5() {
  auto t0 = Clock::now();
  std::ostringstream detail;

  auto rows = growth_report({{1000, 10000}, {10000, 100000}});
  bool nondecreasing = true;
  for (const auto& row : rows) {
    if (!row.nondecreasing_from_prev) nondecreasing = false;
  }
  bool last_at_least_3 = rows.back().min_ratio >= 3;
  detail << "minima: ";
  for (const auto& row : rows) {
    detail << "[" << row.lo << "," << row.hi << "] -> " << row.min_ratio
           << " at |disc|=" << row.attained_at << "; ";
  }

  // The computed minima are frozen as the regression bound the scan
  // establishes: 1 at 4027 (a one-cusped field) and 2 at 12067
  // (h = 18, Cl = Z/3 x Z/6, so h/h_{k,3} = 2 under both conventions).
  bool frozen = rows.size() == 2 && rows[0].min_ratio == 1 &&
                rows[0].attained_at == 4027 && rows[1].min_ratio == 2 &&
                rows[1].attained_at == 12067;
  if (!frozen) detail << "regression minima drifted; ";

  double secs = seconds_since(t0);
  bool ok = nondecreasing && last_at_least_3 && frozen;
  if (secs >= 600.0) {
    ok = false;
    detail << "exceeded the 600 s budget; ";
  }
  if (!last_at_least_3) {
    detail << "the >= 3 threshold is not attained: the last decade's true "
              "minimum is "
           << rows.back().min_ratio;
  }
  report(5, "growth property: per-decade minima of h/h_{k,3}", ok, secs,
         detail.str());
}

// ---------------------------------------------------------------------------
// 6. Class group engine: group laws, torsion divisibility, ideal-form
//    homomorphism. Exhaustive to 300, random at 1e5 scale.
// ---------------------------------------------------------------------------
void criterion6() {
  auto t0 = Clock::now();
  bool ok = true;
  std::ostringstream detail;

  for (i64 n : fundamental_abs_discs(3, 300)) {
    ClassGroup g = enumerate_reduced(-n);
    FormClass id = principal_form(-n);
    if (g.torsion_order(g.h == 1 ? 2 : g.h) != g.h ||
        g.h % g.torsion_order(3) != 0) {
      ok = false;
      detail << "torsion arithmetic broken at " << n << "; ";
    }
    for (const auto& x : g.reduced_forms) {
      if (compose(x, inverse(x)) != id || compose(id, x) != x) {
        ok = false;
        detail << "identity/inverse law broken at " << n << "; ";
      }
      for (const auto& y : g.reduced_forms) {
        if (compose(x, y) != compose(y, x)) {
          ok = false;
          detail << "commutativity broken at " << n << "; ";
        }
        for (const auto& z : g.reduced_forms) {
          if (compose(compose(x, y), z) != compose(x, compose(y, z))) {
            ok = false;
            detail << "associativity broken at " << n << "; ";
          }
        }
      }
    }
  }

  std::mt19937_64 rng(5);
  std::vector<i64> big;
  while (big.size() < 6) {
    i64 n = 90000 + static_cast<i64>(rng() % 10000);
    if (is_fundamental_discriminant(-n)) big.push_back(n);
  }
  for (i64 n : big) {
    ClassGroup g = enumerate_reduced(-n);
    if (g.h != test_oracle::class_number_analytic(-n)) {
      ok = false;
      detail << "h disagrees with the analytic formula at " << n << "; ";
    }
    for (int i = 0; i < 500; ++i) {
      const FormClass& x = g.reduced_forms[rng() % g.h];
      const FormClass& y = g.reduced_forms[rng() % g.h];
      const FormClass& z = g.reduced_forms[rng() % g.h];
      if (compose(compose(x, y), z) != compose(x, compose(y, z))) {
        ok = false;
        detail << "random associativity broken at " << n << "; ";
      }
    }
    for (i64 q : {2, 3, 5}) {
      i64 t = g.torsion_order(q), pr = g.primary_order(q);
      if (g.h % t != 0 || pr % t != 0) {
        ok = false;
        detail << "torsion divisibility broken at " << n << "; ";
      }
    }
  }

  // ideal-to-form homomorphism on 200 random pairs across fields
  std::mt19937_64 rng2(6);
  std::vector<i64> ds{5, 14, 23, 199};
  for (int trial = 0; trial < 200; ++trial) {
    Field f = make_field(ds[rng2() % ds.size()]);
    auto random_ideal = [&]() {
      FractionalIdeal I = FractionalIdeal::unit(f);
      for (int i = 0; i < 2; ++i) {
        i64 p = 2 + static_cast<i64>(rng2() % 28);
        while (!is_prime(p)) ++p;
        I = ideal_mul(I, FractionalIdeal::prime_above(f, p));
      }
      if (rng2() % 3 == 0) I = ideal_inverse(I);
      return I;
    };
    FractionalIdeal A = random_ideal(), B = random_ideal();
    if (ideal_to_form_class(ideal_mul(A, B)) !=
        compose(ideal_to_form_class(A), ideal_to_form_class(B))) {
      ok = false;
      detail << "ideal-form homomorphism broken; ";
      break;
    }
  }

  report(6, "class group engine laws and homomorphisms", ok,
         seconds_since(t0), detail.str());
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();

  int failures = 0;
  for (const auto& c : results) {
    if (!c.passed) ++failures;
  }
  std::cout << "acceptance: " << (results.size() - failures) << "/"
            << results.size() << " criteria passed\n";
  return failures;
}
