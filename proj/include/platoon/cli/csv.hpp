/*
 * Copyright 2026 The platoon-game Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PLATOON_CLI_CSV_HPP
#define PLATOON_CLI_CSV_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace platoon::cli {

/// Fixed-point rendering in the C locale ('.' decimal point).
inline std::string fixed(double value, int decimals) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0.0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string out(buf);
  if (out.find_first_not_of("-0.") == std::string::npos && out[0] == '-') out.erase(0, 1);
  return out;
}

inline std::string money(double value) { return fixed(value, 2); }
inline std::string scalar(double value) { return fixed(value, 6); }
inline std::string flag(bool value) { return value ? "1" : "0"; }

/// Comment lines, one header row, data rows.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

inline void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& c : table.comments) out << "# " << c << '\n';
  write_row(out, table.header);
  for (const auto& row : table.rows) write_row(out, row);
}

}  // namespace platoon::cli

#endif  // PLATOON_CLI_CSV_HPP
