#include "picard/report.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace picard {

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "md") return ReportFormat::Markdown;
  throw std::invalid_argument("unknown format: " + name);
}

std::string structure_str(const std::vector<i64>& divisors) {
  if (divisors.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < divisors.size(); ++i) {
    if (i) out += "x";
    out += std::to_string(divisors[i]);
  }
  return out;
}

namespace {

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  size_t i = s[0] == '-' ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

// keys whose values are labels even when they happen to be all digits
bool string_typed(const std::string& key) {
  static const std::set<std::string> keys{
      "structure", "class",  "vector", "forms",    "formula", "citation",
      "flags",     "splitting", "subgroup", "p1", "p2", "b", "iwahori", "xi"};
  return keys.count(key) > 0;
}

std::string render_json(const std::vector<Row>& rows) {
  std::string out;
  for (const Row& row : rows) {
    nlohmann::ordered_json j;
    for (const auto& [k, v] : row) {
      if (!string_typed(k) && looks_numeric(v)) {
        j[k] = nlohmann::json::parse(v);
      } else if (v == "true" || v == "false") {
        j[k] = (v == "true");
      } else {
        j[k] = v;
      }
    }
    out += j.dump();
    out += "\n";
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += "\"";
  return q;
}

std::string render_csv(const std::vector<Row>& rows) {
  if (rows.empty()) return "";
  std::string out;
  for (size_t i = 0; i < rows[0].size(); ++i) {
    if (i) out += ",";
    out += csv_quote(rows[0][i].first);
  }
  out += "\n";
  for (const Row& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += csv_quote(row[i].second);
    }
    out += "\n";
  }
  return out;
}

std::string render_md(const std::vector<Row>& rows) {
  if (rows.empty()) return "";
  std::ostringstream os;
  os << "|";
  for (const auto& [k, v] : rows[0]) {
    (void)v;
    os << " " << k << " |";
  }
  os << "\n|";
  for (size_t i = 0; i < rows[0].size(); ++i) os << " --- |";
  os << "\n";
  for (const Row& row : rows) {
    os << "|";
    for (const auto& [k, v] : row) {
      (void)k;
      os << " " << v << " |";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace

std::string render_rows(const std::vector<Row>& rows, ReportFormat fmt) {
  switch (fmt) {
    case ReportFormat::Json:
      return render_json(rows);
    case ReportFormat::Csv:
      return render_csv(rows);
    case ReportFormat::Markdown:
      return render_md(rows);
  }
  return "";
}

Row row_of(const ScanRecord& rec) {
  return Row{{"abs_disc", std::to_string(rec.abs_disc)},
             {"d", std::to_string(rec.d)},
             {"h", std::to_string(rec.h)},
             {"h3", std::to_string(rec.h3)},
             {"h3_primary", std::to_string(rec.h3_primary)},
             {"structure", structure_str(rec.structure)},
             {"min_cusps", std::to_string(rec.min_cusps)},
             {"one_cusped", rec.one_cusped ? "true" : "false"},
             {"convention_mismatch", rec.convention_mismatch ? "true" : "false"}};
}

Row row_of(const CuspResult& res) {
  Row row{{"formula", res.formula}};
  for (const auto& [k, v] : res.inputs) row.emplace_back(k, v);
  row.emplace_back("value", res.value.get_str());
  std::string flags;
  for (const auto& f : res.flags) {
    if (!flags.empty()) flags += ";";
    flags += f;
  }
  row.emplace_back("flags", flags.empty() ? "-" : flags);
  row.emplace_back("citation", res.citation);
  return row;
}

Row row_of(const GrowthRow& g) {
  return Row{{"lo", std::to_string(g.lo)},
             {"hi", std::to_string(g.hi)},
             {"min_ratio", std::to_string(g.min_ratio)},
             {"attained_at", std::to_string(g.attained_at)},
             {"nondecreasing_from_prev",
              g.nondecreasing_from_prev ? "true" : "false"}};
}

std::string render_scan(const std::vector<ScanRecord>& records,
                        ReportFormat fmt, bool group_by_h) {
  if (fmt == ReportFormat::Markdown && group_by_h) {
    // the one-cusped table layout: one row per class number
    std::map<i64, std::vector<i64>> by_h;
    for (const ScanRecord& r : records) by_h[r.h].push_back(r.abs_disc);
    std::ostringstream os;
    os << "| h | d |\n| --- | --- |\n";
    for (const auto& [h, ds] : by_h) {
      os << "| " << h << " | ";
      for (size_t i = 0; i < ds.size(); ++i) {
        if (i) os << ", ";
        os << ds[i];
      }
      os << " |\n";
    }
    return os.str();
  }
  std::vector<Row> rows;
  rows.reserve(records.size());
  for (const ScanRecord& r : records) rows.push_back(row_of(r));
  return render_rows(rows, fmt);
}

}  // namespace picard
