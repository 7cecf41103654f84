#include "fracq/table_io.hpp"

#include "fracq/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

namespace fracq::io {

std::size_t Table::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw ValidationError("table has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& token, std::size_t line, std::size_t column) {
  auto first = token.data();
  const auto last = token.data() + token.size();
  while (first != last && *first == ' ') ++first;
  auto end = last;
  while (end != first && (end[-1] == ' ' || end[-1] == '\r')) --end;
  if (first != end && *first == '+') ++first;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(first, end, v);
  if (ec != std::errc() || ptr != end || first == end) {
    throw ValidationError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                          ": not a number: '" + token + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& raw, std::size_t line_number) {
  std::string line = raw;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        fields.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.emplace_back();
    } else {
      fields.back() += ch;
    }
  }
  if (quoted) {
    throw ValidationError("line " + std::to_string(line_number) + ": unterminated quoted field");
  }
  return fields;
}

void write_table(std::ostream& out, const Table& table) {
  for (const auto& c : table.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    detail::require(row.size() == table.columns.size(), "table row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

Table read_table(std::istream& in) {
  Table t;
  std::string line;
  std::size_t n = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line.rfind('#', 0) == 0) {
        t.comments.push_back(line.size() > 2 && line[1] == ' ' ? line.substr(2) : line.substr(1));
        continue;
      }
      if (line.empty()) continue;
      t.columns = split_csv_line(line, n);
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_csv_line(line, n);
    if (fields.size() != t.columns.size()) {
      throw ValidationError("line " + std::to_string(n) + ": expected " + std::to_string(t.columns.size()) +
                            " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) row.push_back(parse_double(fields[c], n, c + 1));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw ValidationError("CSV input has no header row");
  return t;
}

void write_table_file(const std::string& path, const Table& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  write_table(out, table);
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

Table read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return read_table(in);
}

}  // namespace fracq::io
