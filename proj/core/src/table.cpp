#include "dcalb/table.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "dcalb/error.hpp"

#ifndef DCALB_VERSION
#define DCALB_VERSION "0.0.0"
#endif

namespace dcalb {

std::string_view version() noexcept { return DCALB_VERSION; }

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw Error(Errc::LengthMismatch, "row width " + std::to_string(row.size()) +
                                          " != column count " + std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column(std::string_view col) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == col) return i;
  }
  throw Error(Errc::ParseError, "table " + name + " has no column " + std::string(col));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string to_delimited(const Table& table) {
  std::string out = "# dcalb " + std::string(version()) + " table=" + table.name;
  for (const auto& [key, value] : table.provenance) out += " " + key + "=" + value;
  out += "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ",";
    out += table.columns[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format_number(row[i]);
    }
    out += "\n";
  }
  return out;
}

namespace {

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_value(std::string_view field, std::size_t line) {
  if (field == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (field == "inf") return std::numeric_limits<double>::infinity();
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::ParseError,
                "bad number '" + std::string(field) + "' on line " + std::to_string(line));
  }
  return v;
}

}  // namespace

Table parse_delimited(std::string_view text) {
  auto lines = split_on(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 2 || !lines[0].starts_with("# dcalb ")) {
    throw Error(Errc::ParseError, "missing provenance or header line");
  }
  Table table;
  const auto meta = split_on(lines[0].substr(2), ' ');
  // meta[0] = "dcalb", meta[1] = version
  for (std::size_t i = 2; i < meta.size(); ++i) {
    const auto eq = meta[i].find('=');
    if (eq == std::string_view::npos) throw Error(Errc::ParseError, "bad provenance entry");
    const std::string key(meta[i].substr(0, eq));
    const std::string value(meta[i].substr(eq + 1));
    if (key == "table") {
      table.name = value;
    } else {
      table.provenance.emplace_back(key, value);
    }
  }
  for (auto col : split_on(lines[1], ',')) table.columns.emplace_back(col);
  for (std::size_t li = 2; li < lines.size(); ++li) {
    std::vector<double> row;
    for (auto field : split_on(lines[li], ',')) row.push_back(parse_value(field, li + 1));
    table.add_row(std::move(row));
  }
  return table;
}

std::string to_records(const Table& table) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["table"] = table.name;
  j["version"] = version();
  ordered_json prov = ordered_json::object();
  for (const auto& [key, value] : table.provenance) prov[key] = value;
  j["provenance"] = std::move(prov);
  j["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[table.columns[i]] = row[i];
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

}  // namespace dcalb
