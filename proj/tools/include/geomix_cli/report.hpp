#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace geomix::cli {

// Numeric table; every cell is printed with 15 significant digits.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  nlohmann::json summary = nlohmann::json::object();
  std::optional<Table> table;
};

// Value rounded to 15 significant digits; non-finite values become null.
nlohmann::json num(double x);

// CSV: summary entries as "# key = value" lines, then the header and rows.
// JSON: {"summary": ..., "table": {column: [values]}} with sorted keys.
std::string render(const Report& r, bool json);

}  // namespace geomix::cli
