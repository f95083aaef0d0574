// Copyright 2026 The FedFair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FEDFAIR_CLI_REPORT_H_
#define FEDFAIR_CLI_REPORT_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace fedfair::cli {

enum class OutputFormat { kCsv, kJson, kTable };

std::optional<OutputFormat> parse_output_format(std::string_view name);

// Empty, real, count, text or flag.
using Cell = std::variant<std::monostate, double, std::uint64_t, std::string, bool>;

// A flat report: fixed column set, rows in emission order.
struct ReportTable {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // Attached verbatim to JSON output under "extra"; CSV and table output
  // ignore it.
  nlohmann::json extra;

  // Appends a row; cells beyond `values` are left empty.
  void add_row(std::vector<Cell> values);
};

// Shortest round-trip decimal; "Infinity", "-Infinity" or "NaN" when not
// finite.
std::string format_full(double value);
// Three significant figures.
std::string format_3sf(double value);

// RFC-4180 CSV with a header row and full-precision numbers.
void write_csv(const ReportTable& table, std::ostream& out);
// {"command", "columns", "rows": [{column: value}], "extra"?}; non-finite
// numbers are written as the strings used in CSV.
void write_json(const ReportTable& table, std::ostream& out);
// Aligned text columns, numbers rounded to three significant figures.
void write_table(const ReportTable& table, std::ostream& out);

void write_report(const ReportTable& table, OutputFormat format, std::ostream& out);

}  // namespace fedfair::cli

#endif  // FEDFAIR_CLI_REPORT_H_
