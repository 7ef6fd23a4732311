#include "picard/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "picard/hermitian.hpp"
#include "picard/modp_orbits.hpp"
#include "picard/report.hpp"
#include "picard/scan.hpp"

namespace picard {

namespace {

std::set<i64> parse_prime_list(const std::string& csv) {
  std::set<i64> out;
  if (csv.empty() || csv == "-") return out;
  std::istringstream is(csv);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    out.insert(std::stol(tok));
  }
  return out;
}

std::vector<GrowthRange> parse_ranges(const std::string& list) {
  std::vector<GrowthRange> out;
  std::istringstream is(list);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("ranges: expected LO:HI, got " + tok);
    }
    out.push_back(
        {std::stol(tok.substr(0, colon)), std::stol(tok.substr(colon + 1))});
  }
  if (out.empty()) throw std::invalid_argument("ranges: empty list");
  return out;
}

struct GlobalOpts {
  std::string format = "md";
  std::string cache_flag;
  bool no_cache = false;
  std::string convention = "torsion";
  bool serial = false;

  ReportFormat fmt() const { return parse_format(format); }
  TorsionConvention conv() const {
    if (convention == "torsion") return TorsionConvention::Torsion;
    if (convention == "primary") return TorsionConvention::Primary;
    throw std::invalid_argument("unknown torsion convention: " + convention);
  }
  ScanOptions scan_options() const {
    ScanOptions opt;
    if (!cache_flag.empty()) {
      opt.cache_path = cache_flag;
    } else if (const char* env = std::getenv("PICARD_CACHE")) {
      if (*env) opt.cache_path = std::string(env);
    }
    opt.use_cache = !no_cache;
    opt.parallel = !serial;
    return opt;
  }
};

Field field_of_disc_arg(i64 disc) {
  return field_from_abs_disc(disc < 0 ? -disc : disc);
}

KfConfig config_from_flags(const Field& field, const std::string& iwahori,
                           const std::string& xi) {
  std::map<i64, LocalType> local;
  for (i64 p : parse_prime_list(iwahori)) local[p] = LocalType::Iwahori;
  return KfConfig(field, local, parse_prime_list(xi));
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"exact cusp counts for Picard modular surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--format", g.format, "output format: json, csv or md")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  app.add_option("--cache", g.cache_flag,
                 "scan cache file (default: $PICARD_CACHE)");
  app.add_flag("--no-cache", g.no_cache,
               "recompute everything; leave the cache untouched");
  app.add_option("--torsion-convention", g.convention,
                 "reading of h_{k,q}: torsion (#Cl[q]) or primary (Sylow)")
      ->check(CLI::IsMember({"torsion", "primary"}));
  app.add_flag("--serial", g.serial, "single-threaded scan kernel");

  // classgroup
  auto* cg = app.add_subcommand("classgroup", "class group of one field");
  i64 cg_disc = 0;
  cg->add_option("--disc", cg_disc, "fundamental discriminant (sign ignored)")
      ->required();

  // cusps
  auto* cusps = app.add_subcommand("cusps", "cusp count formulas");
  cusps->require_subcommand(1);
  i64 disc = 0;
  i64 rank = 2;
  std::string p1s, p2s, bs, iwahoris, xis;
  auto* c_std = cusps->add_subcommand("std", "standard group: h_k");
  c_std->add_option("--disc", disc)->required();
  auto* c_cong = cusps->add_subcommand(
      "congruence", "congruence subgroup of level (P1, P2, B)");
  c_cong->add_option("--disc", disc)->required();
  c_cong->add_option("--p1", p1s, "split primes, comma separated");
  c_cong->add_option("--p2", p2s, "split primes, comma separated");
  c_cong->add_option("--b", bs, "primes, comma separated");
  auto* c_max = cusps->add_subcommand("maximal", "maximal lattice");
  c_max->add_option("--disc", disc)->required();
  c_max->add_option("--iwahori", iwahoris, "Iwahori primes (split)");
  c_max->add_option("--xi", xis, "subset Xi of the Iwahori primes");
  auto* c_high = cusps->add_subcommand("higher", "SU(r+1, r) maximal lattice");
  c_high->add_option("--disc", disc)->required();
  c_high->add_option("--r", rank, "rank r >= 1")->required();
  c_high->add_option("--iwahori", iwahoris, "Iwahori primes (split)");
  c_high->add_option("--xi", xis, "subset Xi of the Iwahori primes");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force verification");
  oracle->require_subcommand(1);
  i64 o_disc = 0, o_p = 5, o_bound = kModPDefaultBound, o_height = 32;
  std::string o_sub = "borel";
  auto* o_modp = oracle->add_subcommand("modp", "mod-p orbit counts");
  o_modp->add_option("--disc", o_disc)->required();
  o_modp->add_option("--p", o_p, "odd prime")->required();
  o_modp->add_option("--subgroup", o_sub, "full, p1, p2 or borel")
      ->check(CLI::IsMember({"full", "p1", "p2", "borel"}));
  o_modp->add_option("--bound", o_bound, "largest admissible p");
  auto* o_zink = oracle->add_subcommand(
      "zink", "isotropic line search realizing every ideal class");
  o_zink->add_option("--disc", o_disc)->required();
  o_zink->add_option("--height", o_height, "height bound for the search");

  // scan
  auto* scan = app.add_subcommand("scan", "catalog scans");
  scan->require_subcommand(1);
  i64 s_max = 1000, s_n = 1, s_r = 2;
  std::string s_ranges = "1000:10000,10000:100000";
  auto* s_one = scan->add_subcommand("one-cusped", "fields with h = h_{k,3}");
  s_one->add_option("--max", s_max, "largest |disc|")->required();
  auto* s_n_sub = scan->add_subcommand("n-cusped", "fields with h/h_{k,3} <= N");
  s_n_sub->add_option("--n", s_n, "cusp bound N")->required();
  s_n_sub->add_option("--max", s_max)->required();
  auto* s_growth = scan->add_subcommand("growth", "per-range minima of h/h_{k,3}");
  s_growth->add_option("--ranges", s_ranges, "comma list of LO:HI ranges");
  auto* s_high = scan->add_subcommand("higher", "one-cusped at rank r");
  s_high->add_option("--r", s_r, "rank r >= 2")->required();
  s_high->add_option("--max", s_max)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);  // exit 0 with help on stdout
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return 1;
  }

  try {
    ReportFormat fmt = g.fmt();
    TorsionConvention conv = g.conv();

    if (*cg) {
      ClassGroup grp = enumerate_reduced(-std::abs(cg_disc));
      std::string forms;
      for (const FormClass& f : grp.reduced_forms) {
        if (!forms.empty()) forms += ";";
        forms += "(" + std::to_string(f.form().a) + "," +
                 std::to_string(f.form().b) + "," + std::to_string(f.form().c) +
                 ")";
      }
      Row row{{"abs_disc", std::to_string(-grp.disc)},
              {"h", std::to_string(grp.h)},
              {"structure", structure_str(grp.structure)},
              {"h3", std::to_string(grp.torsion_order(3))},
              {"h3_primary", std::to_string(grp.primary_order(3))},
              {"forms", forms}};
      out << render_rows({row}, fmt);
      return 0;
    }

    if (*cusps) {
      Field field = field_of_disc_arg(disc);
      CuspResult res;
      if (*c_std) {
        res = cusps_std_result(field);
      } else if (*c_cong) {
        CongruenceLevel level(field, parse_prime_list(p1s),
                              parse_prime_list(p2s), parse_prime_list(bs));
        res = cusps_congruence_result(level);
      } else if (*c_max) {
        res = cusps_maximal_result(config_from_flags(field, iwahoris, xis),
                                   conv);
      } else {
        res = cusps_higher_result(field, rank,
                                  config_from_flags(field, iwahoris, xis),
                                  conv);
      }
      out << render_rows({row_of(res)}, fmt);
      return 0;
    }

    if (*oracle) {
      Field field = field_of_disc_arg(o_disc);
      if (*o_modp) {
        ModPModel model = modp_model(field, o_p, o_bound);
        ModPSubgroup sub = o_sub == "full"  ? ModPSubgroup::Full
                           : o_sub == "p1"  ? ModPSubgroup::P1
                           : o_sub == "p2"  ? ModPSubgroup::P2
                                            : ModPSubgroup::Borel;
        i64 orbits = modp_parabolic_orbits(field, o_p, sub, o_bound);
        Row row{{"disc", std::to_string(field.disc())},
                {"p", std::to_string(o_p)},
                {"splitting", to_string(model.type)},
                {"isotropic_count", std::to_string(model.isotropic_count)},
                {"subgroup", o_sub},
                {"orbits", std::to_string(orbits)}};
        out << render_rows({row}, fmt);
        return 0;
      }
      // zink
      ClassGroup grp = enumerate_reduced(field.disc());
      auto found = zink_search(field, o_height);
      std::vector<Row> rows;
      i64 missing = 0;
      for (size_t i = 0; i < found.size(); ++i) {
        const QuadraticForm& f = grp.reduced_forms[i].form();
        Row row{{"disc", std::to_string(field.disc())},
                {"class", "(" + std::to_string(f.a) + "," +
                              std::to_string(f.b) + "," + std::to_string(f.c) +
                              ")"}};
        if (found[i]) {
          row.emplace_back("found", "true");
          row.emplace_back("height", std::to_string(found[i]->height));
          row.emplace_back("vector", found[i]->vector.str());
        } else {
          ++missing;
          row.emplace_back("found", "false");
          row.emplace_back("height", "-");
          row.emplace_back("vector", "-");
        }
        rows.push_back(std::move(row));
      }
      out << render_rows(rows, fmt);
      if (missing > 0) {
        err << "zink: " << missing
            << " class(es) not realized within height " << o_height
            << "; rerun with a larger --height\n";
      }
      return 0;
    }

    // scan
    ScanOptions opt = g.scan_options();
    if (*s_one) {
      out << render_scan(scan_one_cusped(s_max, opt, conv), fmt,
                         /*group_by_h=*/true);
      return 0;
    }
    if (*s_n_sub) {
      NCuspedReport rep = scan_n_cusped(s_n, s_max, opt, conv);
      out << render_scan(rep.records, fmt, /*group_by_h=*/false);
      if (rep.max_attaining) {
        err << "n-cusped: largest |disc| attaining min_cusps <= "
            << s_n << " in range: " << *rep.max_attaining << "\n";
      }
      return 0;
    }
    if (*s_growth) {
      std::vector<Row> rows;
      for (const GrowthRow& r : growth_report(parse_ranges(s_ranges), opt, conv)) {
        rows.push_back(row_of(r));
      }
      out << render_rows(rows, fmt);
      return 0;
    }
    out << render_scan(higher_one_cusped(s_r, s_max, opt, conv), fmt,
                       /*group_by_h=*/true);
    return 0;
  } catch (const internal_error& e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: value out of range: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace picard
