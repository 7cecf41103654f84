#pragma once

// Plain numeric CSV with 17-significant-digit values. Lines starting with '#'
// before the header carry free-form metadata (the CLI puts JSON there).

#include <iosfwd>
#include <string>
#include <vector>

namespace fracq::io {

struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

/// Shortest form is not attempted: %.17g always round-trips a double.
std::string format_double(double v);

/// Parses a full decimal token; throws ValidationError naming line and column otherwise.
double parse_double(const std::string& token, std::size_t line, std::size_t column);

void write_table(std::ostream& out, const Table& table);
Table read_table(std::istream& in);

void write_table_file(const std::string& path, const Table& table);
Table read_table_file(const std::string& path);

/// Splits one CSV record on commas; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_number);

}  // namespace fracq::io
