#include "geomix/families.hpp"

#include <cmath>
#include <memory>

#include <boost/math/special_functions/beta.hpp>

namespace geomix {

DensityPiece uniform_piece(double lo, double hi, double mass) {
  if (!(hi > lo)) fail(ErrorKind::argument, "uniform piece needs lo < hi");
  if (!(mass > 0)) fail(ErrorKind::argument, "piece mass must be positive");
  const double h = mass / (hi - lo);
  DensityPiece p;
  p.lo = lo;
  p.hi = hi;
  p.density = [h](const PiecePoint&) { return h; };
  p.family = "uniform";
  return p;
}

DensityPiece beta_piece(double lo, double hi, double a, double b, double mass) {
  if (!(hi > lo)) fail(ErrorKind::argument, "beta piece needs lo < hi");
  if (!(a > 0) || !(b > 0)) fail(ErrorKind::argument, "beta parameters must be positive");
  if (!(mass > 0)) fail(ErrorKind::argument, "piece mass must be positive");
  const double len = hi - lo;
  const double logc = std::log(mass / len) - std::log(boost::math::beta(a, b));
  DensityPiece p;
  p.lo = lo;
  p.hi = hi;
  p.density = [=](const PiecePoint& q) {
    const double s = q.from_lo / len, t = q.from_hi / len;
    if (!(s > 0) || !(t > 0)) return (a == 1 && b == 1) ? std::exp(logc) : 0.0;
    return std::exp(logc + (a - 1) * std::log(s) + (b - 1) * std::log(t));
  };
  p.lo_edge = Edge::power(1 - a);
  p.hi_edge = Edge::power(1 - b);
  p.family = "beta";
  return p;
}

DensityPiece arcsine_piece(double lo, double hi, double v, double mass) {
  if (!(v > 0 && v < 1)) fail(ErrorKind::argument, "arcsine parameter must lie in (0, 1)");
  DensityPiece p = beta_piece(lo, hi, 1 - v, v, mass);
  p.family = "arcsine";
  return p;
}

namespace {

// Coefficients of p(1 - s) from those of p(t).
std::vector<double> reflect(const std::vector<double>& c) {
  const std::size_t n = c.size();
  std::vector<double> r(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double binom = 1;  // C(k, j)
    for (std::size_t j = 0; j <= k; ++j) {
      r[j] += c[k] * binom * ((j % 2) ? -1.0 : 1.0);
      binom = binom * double(k - j) / double(j + 1);
    }
  }
  return r;
}

double horner(const std::vector<double>& c, double t) {
  double v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

int vanishing_order(const std::vector<double>& c) {
  double scale = 0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  for (std::size_t k = 0; k < c.size(); ++k)
    if (std::abs(c[k]) > 1e-14 * scale) return static_cast<int>(k);
  return static_cast<int>(c.size());
}

}  // namespace

DensityPiece poly_piece(double lo, double hi, std::vector<double> coeffs, double mass) {
  if (!(hi > lo)) fail(ErrorKind::argument, "polynomial piece needs lo < hi");
  if (coeffs.empty()) fail(ErrorKind::argument, "polynomial piece needs coefficients");
  const double len = hi - lo;
  if (mass > 0) {
    double m = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) m += coeffs[k] / double(k + 1);
    m *= len;
    if (!(m > 0)) fail(ErrorKind::argument, "polynomial density has no positive mass");
    for (double& c : coeffs) c *= mass / m;
  }
  auto lo_c = std::make_shared<const std::vector<double>>(coeffs);
  auto hi_c = std::make_shared<const std::vector<double>>(reflect(coeffs));
  if (vanishing_order(*lo_c) == static_cast<int>(coeffs.size()))
    fail(ErrorKind::argument, "polynomial density is identically zero");
  for (int i = 0; i <= 400; ++i) {
    const double t = i / 400.0;
    const double v = (t < 0.5) ? horner(*lo_c, t) : horner(*hi_c, 1 - t);
    if (v < -1e-13) fail(ErrorKind::argument, "polynomial density is negative on its piece");
  }
  DensityPiece p;
  p.lo = lo;
  p.hi = hi;
  p.density = [lo_c, hi_c, len](const PiecePoint& q) {
    const double v = (q.from_lo <= q.from_hi) ? horner(*lo_c, q.from_lo / len) : horner(*hi_c, q.from_hi / len);
    return std::max(v, 0.0);
  };
  p.lo_edge = Edge::power(-vanishing_order(*lo_c));
  p.hi_edge = Edge::power(-vanishing_order(*hi_c));
  p.family = "piecewise_poly";
  return p;
}

}  // namespace geomix
