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

#include "fedfair/cli/report.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace fedfair::cli {

std::optional<OutputFormat> parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  if (name == "table") return OutputFormat::kTable;
  return std::nullopt;
}

void ReportTable::add_row(std::vector<Cell> values) {
  values.resize(columns.size());
  rows.push_back(std::move(values));
}

namespace {

std::string non_finite(double value) {
  if (std::isnan(value)) return "NaN";
  return value > 0 ? "Infinity" : "-Infinity";
}

template <typename Formatter>
std::string cell_text(const Cell& cell, Formatter&& format_double) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      cell);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_full(double value) {
  if (!std::isfinite(value)) return non_finite(value);
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::string format_3sf(double value) {
  if (!std::isfinite(value)) return non_finite(value);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", value);
  return buf;
}

void write_csv(const ReportTable& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << csv_escape(table.columns[c]);
  }
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      out << csv_escape(cell_text(row[c], format_full));
    }
    out << "\r\n";
  }
}

void write_json(const ReportTable& table, std::ostream& out) {
  nlohmann::json doc;
  doc["command"] = table.command;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              obj[table.columns[c]] = nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) {
                obj[table.columns[c]] = v;
              } else {
                obj[table.columns[c]] = non_finite(v);
              }
            } else {
              obj[table.columns[c]] = v;
            }
          },
          row[c]);
    }
    doc["rows"].push_back(std::move(obj));
  }
  if (!table.extra.is_null()) doc["extra"] = table.extra;
  out << doc.dump(2) << '\n';
}

void write_table(const ReportTable& table, std::ostream& out) {
  std::vector<std::vector<std::string>> text;
  std::vector<std::size_t> width(table.columns.size());
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    width[c] = table.columns[c].size();
  }
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(cell_text(row[c], format_3sf));
      width[c] = std::max(width[c], line.back().size());
    }
    text.push_back(std::move(line));
  }
  auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) line += "  ";
      line += cells[c];
      line.append(width[c] - cells[c].size(), ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  };
  emit(table.columns);
  for (const auto& line : text) emit(line);
}

void write_report(const ReportTable& table, OutputFormat format,
                  std::ostream& out) {
  switch (format) {
    case OutputFormat::kCsv: write_csv(table, out); break;
    case OutputFormat::kJson: write_json(table, out); break;
    case OutputFormat::kTable: write_table(table, out); break;
  }
}

}  // namespace fedfair::cli
