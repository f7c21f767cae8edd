#include "pskrx/report.hpp"

#include <charconv>
#include <ostream>
#include <system_error>

#include <json.hpp>

#include "pskrx/errors.hpp"

namespace pskrx {
namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  require(row.size() == columns.size(), "row width does not match the table header");
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw ArgumentError("no column named " + name);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  if (res.ec != std::errc{}) throw ArgumentError("cannot format number");
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) out << format_double(v);
            else if constexpr (std::is_same_v<T, std::int64_t>) out << v;
            else out << csv_field(v);
          },
          row[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit([&](const auto& v) { obj[table.columns[i]] = v; }, row[i]);
    array.push_back(std::move(obj));
  }
  out << array.dump(2) << '\n';
}

}  // namespace pskrx
