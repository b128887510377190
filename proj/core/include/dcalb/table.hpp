#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dcalb {

std::string_view version() noexcept;

/// Numeric output table. Delimited form:
///
///   # dcalb <version> table=<name> key=value ...
///   col_1,col_2,...
///   v_11,v_12,...
///
/// Numbers use the shortest decimal that round-trips, so parsing and
/// re-emitting a table reproduces it byte for byte.
struct Table {
  std::string name;
  std::vector<std::pair<std::string, std::string>> provenance;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::size_t column(std::string_view name) const;
};

std::string format_number(double value);

std::string to_delimited(const Table& table);
Table parse_delimited(std::string_view text);

/// JSON records: {"table", "version", "provenance", "columns", "rows": [{...}]}.
std::string to_records(const Table& table);

}  // namespace dcalb
