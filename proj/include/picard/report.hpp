#pragma once

#include <string>
#include <vector>

#include "picard/cusp_formulas.hpp"
#include "picard/scan.hpp"

namespace picard {

enum class ReportFormat { Json, Csv, Markdown };

ReportFormat parse_format(const std::string& name);

/// Ordered key/value rows; every renderer preserves key order, so output
/// is byte-deterministic.
using Row = std::vector<std::pair<std::string, std::string>>;

std::string render_rows(const std::vector<Row>& rows, ReportFormat fmt);

std::string structure_str(const std::vector<i64>& divisors);

Row row_of(const ScanRecord& rec);
Row row_of(const CuspResult& res);
Row row_of(const GrowthRow& row);

/// Scan reports render one record per line in JSON and CSV; in markdown,
/// one-cusped listings collapse to the d-by-class-number table layout.
std::string render_scan(const std::vector<ScanRecord>& records,
                        ReportFormat fmt, bool group_by_h);

}  // namespace picard
