// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "qinterf/errors.hpp"

namespace qinterf {

/// Ordered `# key=value` lines written at the top of every CSV output.
using Provenance = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline void write_provenance(std::ostream& os, const Provenance& prov) {
  for (const auto& [key, value] : prov) os << "# " << key << '=' << value << '\n';
}

inline double parse_double(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r'))
    field.remove_suffix(1);
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size() || field.empty())
    throw ParseError("cannot parse '" + std::string(field) + "' as a number", line);
  return value;
}

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// A comma-separated table with optional leading `# key=value` comments and
/// a header row.
struct CsvTable {
  std::map<std::string, std::string> provenance;
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  [[nodiscard]] const std::string* meta(const std::string& key) const {
    const auto it = provenance.find(key);
    return it == provenance.end() ? nullptr : &it->second;
  }
};

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

/// Reads a table. The first non-comment line is the header when it does
/// not start with a number; otherwise the table has no header.
inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') {
      std::string_view body(line);
      body.remove_prefix(1);
      while (!body.empty() && body.front() == ' ') body.remove_prefix(1);
      const auto eq = body.find('=');
      if (eq != std::string_view::npos)
        table.provenance[std::string(body.substr(0, eq))] = std::string(body.substr(eq + 1));
      continue;
    }
    auto fields = split_csv_line(line);
    if (!header_seen && table.rows.empty()) {
      header_seen = true;
      const char c = fields.front().empty() ? ' ' : fields.front().front();
      const bool numeric = (c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.';
      if (!numeric) {
        table.header = std::move(fields);
        continue;
      }
    }
    table.rows.push_back({line_no, std::move(fields)});
  }
  return table;
}

}  // namespace qinterf
