#include "geomix_cli/spec_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <set>

#include "geomix/error.hpp"
#include "geomix/families.hpp"

namespace geomix::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { fail(ErrorKind::parse, what); }

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) bad(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) bad("unknown key \"" + k + "\" in " + where);
}

double number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) bad(where + " is missing \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number()) bad("\"" + key + "\" in " + where + " must be a number");
  return v.get<double>();
}

DensityPiece parse_piece(const json& p, std::size_t i) {
  const std::string where = "pieces[" + std::to_string(i) + "]";
  only_keys(p, {"lo", "hi", "family", "params", "mass"}, where);
  const double lo = number(p, "lo", where), hi = number(p, "hi", where);
  if (!p.contains("family") || !p["family"].is_string()) bad(where + " needs a string \"family\"");
  const std::string fam = p["family"].get<std::string>();
  const json params = p.value("params", json::object());
  const bool has_mass = p.contains("mass");
  const double mass = has_mass ? number(p, "mass", where) : 1.0;
  const std::string pw = where + ".params";
  if (fam == "uniform") {
    only_keys(params, {}, pw);
    return uniform_piece(lo, hi, mass);
  }
  if (fam == "beta") {
    only_keys(params, {"a", "b"}, pw);
    return beta_piece(lo, hi, number(params, "a", pw), number(params, "b", pw), mass);
  }
  if (fam == "arcsine") {
    only_keys(params, {"v"}, pw);
    return arcsine_piece(lo, hi, number(params, "v", pw), mass);
  }
  if (fam == "piecewise_poly") {
    only_keys(params, {"coeffs"}, pw);
    if (!params.contains("coeffs") || !params["coeffs"].is_array() || params["coeffs"].empty())
      bad(pw + " needs a non-empty \"coeffs\" array");
    std::vector<double> c;
    for (const json& v : params["coeffs"]) {
      if (!v.is_number()) bad(pw + ".coeffs must hold numbers");
      c.push_back(v.get<double>());
    }
    return poly_piece(lo, hi, std::move(c), has_mass ? mass : 0.0);
  }
  bad("unknown family \"" + fam + "\" in " + where);
}

}  // namespace

MixtureMeasure parse_measure(const json& spec, const Tolerance& tol) {
  only_keys(spec, {"domain", "atoms", "pieces"}, "measure spec");
  const std::string dom = spec.value("domain", std::string("unit"));
  Domain domain;
  if (dom == "unit")
    domain = Domain::unit_interval;
  else if (dom == "halfline")
    domain = Domain::half_line;
  else
    bad("domain must be \"unit\" or \"halfline\", got \"" + dom + "\"");

  std::vector<Atom> atoms;
  if (spec.contains("atoms")) {
    if (!spec["atoms"].is_array()) bad("\"atoms\" must be an array");
    for (std::size_t i = 0; i < spec["atoms"].size(); ++i) {
      const json& a = spec["atoms"][i];
      const std::string where = "atoms[" + std::to_string(i) + "]";
      only_keys(a, {"x", "mass"}, where);
      atoms.push_back({number(a, "x", where), number(a, "mass", where)});
    }
  }
  std::vector<DensityPiece> pieces;
  if (spec.contains("pieces")) {
    if (!spec["pieces"].is_array()) bad("\"pieces\" must be an array");
    for (std::size_t i = 0; i < spec["pieces"].size(); ++i) pieces.push_back(parse_piece(spec["pieces"][i], i));
  }
  if (atoms.empty() && pieces.empty()) bad("measure spec is empty");
  std::sort(atoms.begin(), atoms.end(), [](const Atom& u, const Atom& v) { return u.location < v.location; });
  std::sort(pieces.begin(), pieces.end(), [](const auto& u, const auto& v) { return u.lo < v.lo; });
  return MixtureMeasure(std::move(atoms), std::move(pieces), domain, true, tol);
}

MixtureMeasure load_measure(const std::string& arg, const Tolerance& tol) {
  std::string text;
  if (!arg.empty() && arg.front() == '{') {
    text = arg;
  } else if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(arg);
    if (!in) bad("cannot open measure file \"" + arg + "\"");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  return parse_measure(spec, tol);
}

Tolerance tolerance_from_env() {
  Tolerance tol;
  const char* s = std::getenv("RENEWAL_TOL");
  if (!s || !*s) return tol;
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  if (end == s || *end != '\0' || !(v > 0) || !(v < 1)) bad(std::string("RENEWAL_TOL must be a number in (0, 1), got \"") + s + "\"");
  tol.rel = v;
  tol.abs = v / 100;
  return tol;
}

}  // namespace geomix::cli
