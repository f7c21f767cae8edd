#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace pskrx {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
};

// Shortest text that reads back to the same double, independent of the C++ locale.
std::string format_double(double value);

void write_csv(std::ostream& out, const Table& table);
// Array of objects keyed by column name.
void write_json(std::ostream& out, const Table& table);

}  // namespace pskrx
