#include "geomix_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace geomix::cli {

namespace {

std::string g15(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0 ? 0.0 : x);
  return buf;
}

}  // namespace

nlohmann::json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::strtod(g15(x).c_str(), nullptr);
}

std::string render(const Report& r, bool json) {
  if (json) {
    nlohmann::json out;
    out["summary"] = r.summary;
    if (r.table) {
      nlohmann::json t = nlohmann::json::object();
      for (std::size_t j = 0; j < r.table->columns.size(); ++j) {
        nlohmann::json col = nlohmann::json::array();
        for (const auto& row : r.table->rows) col.push_back(num(row[j]));
        t[r.table->columns[j]] = std::move(col);
      }
      out["table"] = std::move(t);
    }
    return out.dump(2) + "\n";
  }
  std::string s;
  for (const auto& [k, v] : r.summary.items()) s += "# " + k + " = " + v.dump() + "\n";
  if (r.table) {
    for (std::size_t j = 0; j < r.table->columns.size(); ++j) s += (j ? "," : "") + r.table->columns[j];
    s += "\n";
    for (const auto& row : r.table->rows) {
      for (std::size_t j = 0; j < row.size(); ++j) s += (j ? "," : "") + g15(row[j]);
      s += "\n";
    }
  }
  return s;
}

}  // namespace geomix::cli
