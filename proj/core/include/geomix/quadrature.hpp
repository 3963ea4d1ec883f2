#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <type_traits>
#include <vector>

#include "geomix/tolerance.hpp"

namespace geomix {

// A point inside a density piece, carried with its distances to both piece ends
// so that densities can be evaluated accurately right next to an edge.
struct PiecePoint {
  double x;
  double from_lo;
  double from_hi;
};

enum class EdgeKind { power, critical, log_vanishing };

// Behaviour of a density at one end of its piece, with d the distance to that end:
//   power          ~ d^{-exponent}, exponent < 1 (negative exponents vanish)
//   critical       ~ 1 / (d log^2 d)
//   log_vanishing  ~ 1 / log^2 d
struct Edge {
  EdgeKind kind = EdgeKind::power;
  double exponent = 0.0;

  static constexpr Edge power(double p) { return {EdgeKind::power, p}; }
  static constexpr Edge critical() { return {EdgeKind::critical, 1.0}; }
  static constexpr Edge log_vanishing() { return {EdgeKind::log_vanishing, 0.0}; }

  bool integrable() const { return kind != EdgeKind::power || exponent < 1.0; }
  // True when the density blows up at the edge.
  bool unbounded() const {
    return kind == EdgeKind::critical || (kind == EdgeKind::power && exponent >= 0.0);
  }
  bool needs_transform() const {
    return kind == EdgeKind::critical || (kind == EdgeKind::power && exponent > 0.0);
  }
  // Edge of density * d^{-order}; nullopt when that product is not integrable.
  std::optional<Edge> with_kernel_order(int order) const;
  // Edge of density * d and density * d^2.
  Edge times_d() const;
  Edge times_d2() const;

  bool operator==(const Edge&) const = default;
};

namespace quad {

template <class T>
struct Estimate {
  T value{};
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;

  Estimate& operator+=(const Estimate& o) {
    value += o.value;
    error += o.error;
    evaluations += o.evaluations;
    converged = converged && o.converged;
    return *this;
  }
};

// 21-point Kronrod rule with its embedded 10-point Gauss rule, as full arrays on [-1, 1].
struct GkTable {
  std::array<double, 21> node;
  std::array<double, 21> kronrod;
  std::array<double, 21> gauss;
};
const GkTable& gk21();

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T>
struct Panel {
  double a = 0, b = 0;
  T value{};
  double error = 0;
};

// One Gauss–Kronrod panel with the QUADPACK error heuristic.
template <class T, class F>
Panel<T> gk_panel(F& f, double a, double b) {
  const GkTable& t = gk21();
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::array<T, 21> fx;
  T k{}, g{};
  double resabs = 0;
  for (int i = 0; i < 21; ++i) {
    fx[i] = f(c + h * t.node[i]);
    k += t.kronrod[i] * fx[i];
    g += t.gauss[i] * fx[i];
    resabs += t.kronrod[i] * magnitude(fx[i]);
  }
  const T mean = k * 0.5;
  double resasc = 0;
  for (int i = 0; i < 21; ++i) resasc += t.kronrod[i] * magnitude(fx[i] - mean);
  const double ah = std::abs(h);
  double err = magnitude(k - g) * ah;
  resasc *= ah;
  resabs *= ah;
  if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
  if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
  return {a, b, k * h, err};
}

// Globally adaptive Gauss–Kronrod on [a, b].
template <class F>
auto integrate(F&& f, double a, double b, const Tolerance& tol)
    -> Estimate<std::decay_t<decltype(f(a))>> {
  using T = std::decay_t<decltype(f(a))>;
  Estimate<T> out;
  if (!(b > a)) return out;
  std::vector<Panel<T>> panels;
  panels.push_back(gk_panel<T>(f, a, b));
  out.evaluations = 21;
  auto totals = [&] {
    T v{};
    double e = 0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair<T, double>(v, e);
  };
  auto [value, error] = totals();
  while (error > std::max(tol.abs, tol.rel * magnitude(value))) {
    if (static_cast<int>(panels.size()) >= tol.max_panels) {
      out.converged = false;
      break;
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& x, const auto& y) { return x.error < y.error; });
    const double pa = worst->a, pb = worst->b, mid = 0.5 * (pa + pb);
    if (!(mid > pa && mid < pb) || !std::isfinite(worst->error)) {
      out.converged = false;
      break;
    }
    *worst = gk_panel<T>(f, pa, mid);
    panels.push_back(gk_panel<T>(f, mid, pb));
    out.evaluations += 42;
    std::tie(value, error) = totals();
  }
  out.value = value;
  out.error = error;
  return out;
}

// Tail mass of a density with a critical edge over (0, d_cut], from a quadratic fit of
// 1/(d f(d)) in log d. Falls back to d f(d) |log d| when the fit is not usable.
template <class Dens>
double critical_tail(Dens&& dens, double d_cut) {
  const double d[3] = {d_cut, d_cut * 1e-3, d_cut * 1e-6};
  double t[3], q[3];
  for (int i = 0; i < 3; ++i) {
    const double f = dens(d[i]);
    if (!(f > 0) || !std::isfinite(f)) return 0.0;
    t[i] = std::log(d[i]);
    q[i] = 1.0 / (d[i] * f);
  }
  const double fallback = std::abs(t[0]) / q[0];
  // q(t) = al t^2 + be t + ga through the three samples.
  const double d01 = (q[0] - q[1]) / (t[0] - t[1]);
  const double d12 = (q[1] - q[2]) / (t[1] - t[2]);
  const double al = (d01 - d12) / (t[0] - t[2]);
  const double be = d01 - al * (t[0] + t[1]);
  const double ga = q[0] - al * t[0] * t[0] - be * t[0];
  const double disc = 4 * al * ga - be * be;
  if (!(al > 0) || !(disc > 0)) return fallback;
  const double s = std::sqrt(disc);
  const double tail = (2 / s) * (std::atan((2 * al * t[0] + be) / s) + M_PI / 2);
  if (!(tail > 0) || !std::isfinite(tail) || tail > 10 * fallback) return fallback;
  return tail;
}

// Integral over [0, len] of dens(d) * kern(d), where d is the distance to an edge of the
// given kind. kern must be bounded near d = 0 and is evaluated at d = 0 for critical tails.
template <class Dens, class Kern>
auto edge_segment(Dens&& dens, Kern&& kern, double len, Edge edge, const Tolerance& tol)
    -> Estimate<std::decay_t<decltype(kern(0.0))>> {
  using T = std::decay_t<decltype(kern(0.0))>;
  if (!(len > 0)) return {};
  if (edge.kind == EdgeKind::power && edge.exponent > 0) {
    const double k = 1.0 / (1.0 - edge.exponent);
    const double tmax = std::pow(len, 1.0 - edge.exponent);
    auto g = [&](double t) -> T {
      const double d = std::pow(t, k);
      if (!(d > 0)) return T{};
      return dens(d) * kern(d) * (k * d / t);
    };
    return integrate(g, 0.0, tmax, tol);
  }
  if (edge.kind == EdgeKind::critical) {
    const double d_cut = 1e-12 * len;
    Estimate<T> out;
    out.value = critical_tail(dens, d_cut) * kern(0.0);
    // d = len exp(1 - 1/u) on the remaining part.
    const double u0 = 1.0 / (1.0 - std::log(d_cut / len));
    auto g = [&](double u) -> T {
      const double d = len * std::exp(1.0 - 1.0 / u);
      return dens(d) * kern(d) * (d / (u * u));
    };
    out += integrate(g, u0, 1.0, tol);
    return out;
  }
  auto g = [&](double d) -> T { return dens(d) * kern(d); };
  return integrate(g, 0.0, len, tol);
}

// Integral over [d0, d1], 0 < d0 < d1, in the variable log d.
template <class Dens, class Kern>
auto log_segment(Dens&& dens, Kern&& kern, double d0, double d1, const Tolerance& tol)
    -> Estimate<std::decay_t<decltype(kern(d0))>> {
  using T = std::decay_t<decltype(kern(d0))>;
  if (!(d1 > d0)) return {};
  auto g = [&](double u) -> T {
    const double d = std::exp(u);
    return dens(d) * kern(d) * d;
  };
  return integrate(g, std::log(d0), std::log(d1), tol);
}

// Integral over [0, len] with an optional feature at distance `scale` from the anchor:
// an edge segment up to the feature followed by a logarithmic segment.
template <class Dens, class Kern>
auto graded_segment(Dens&& dens, Kern&& kern, double len, Edge edge, double scale,
                    const Tolerance& tol) -> Estimate<std::decay_t<decltype(kern(0.0))>> {
  if (scale > 0 && scale < 0.25 * len) {
    auto out = edge_segment(dens, kern, scale, edge, tol);
    out += log_segment(dens, kern, scale, len, tol);
    return out;
  }
  return edge_segment(dens, kern, len, edge, tol);
}

// Geometry of a density piece: maps offsets from either end to PiecePoints.
struct PieceFrame {
  double lo, hi;

  double length() const { return hi - lo; }
  PiecePoint from_lo(double d) const { return {lo + d, d, (hi - lo) - d}; }
  PiecePoint from_hi(double d) const { return {hi - d, (hi - lo) - d, d}; }
};

// Feature scales near the two ends of a piece (0 = none).
struct Grading {
  double lo_scale = 0;
  double hi_scale = 0;
};

// Integral of dens(p) * kern(p) over a whole piece, split at its midpoint and anchored at
// each end so that points near either end keep full relative precision.
template <class Dens, class Kern>
auto integrate_piece(const PieceFrame& fr, Edge lo_edge, Edge hi_edge, Dens&& dens, Kern&& kern,
                     Grading grading, const Tolerance& tol)
    -> Estimate<std::decay_t<decltype(kern(fr.from_lo(0.0)))>> {
  const double half = 0.5 * fr.length();
  const Tolerance t = tol.scaled(0.25);
  auto out = graded_segment([&](double d) { return dens(fr.from_lo(d)); },
                            [&](double d) { return kern(fr.from_lo(d)); }, half, lo_edge,
                            grading.lo_scale, t);
  out += graded_segment([&](double d) { return dens(fr.from_hi(d)); },
                        [&](double d) { return kern(fr.from_hi(d)); }, half, hi_edge,
                        grading.hi_scale, t);
  return out;
}

// Same as integrate_piece, with an extra interior feature at offsets (a, b) from the ends
// whose width is `scale`. Used for kernels peaked inside the piece.
template <class Dens, class Kern>
auto integrate_piece_focus(const PieceFrame& fr, Edge lo_edge, Edge hi_edge, Dens&& dens,
                           Kern&& kern, double a, double b, double scale, const Tolerance& tol)
    -> Estimate<std::decay_t<decltype(kern(fr.from_lo(0.0)))>> {
  using T = std::decay_t<decltype(kern(fr.from_lo(0.0)))>;
  Estimate<T> out;
  const Tolerance t = tol.scaled(0.25);
  const double la = 0.5 * a, lb = 0.5 * b;
  out += edge_segment([&](double d) { return dens(fr.from_lo(d)); },
                      [&](double d) { return kern(fr.from_lo(d)); }, la, lo_edge, t);
  out += edge_segment([&](double d) { return dens(fr.from_hi(d)); },
                      [&](double d) { return kern(fr.from_hi(d)); }, lb, hi_edge, t);
  auto left = [&](double s) { return PiecePoint{fr.lo + (a - s), a - s, b + s}; };
  auto right = [&](double s) { return PiecePoint{fr.hi - (b - s), a + s, b - s}; };
  const Edge plain = Edge::power(0.0);
  out += graded_segment([&](double s) { return dens(left(s)); },
                        [&](double s) { return kern(left(s)); }, la, plain, scale, t);
  out += graded_segment([&](double s) { return dens(right(s)); },
                        [&](double s) { return kern(right(s)); }, lb, plain, scale, t);
  return out;
}

}  // namespace quad
}  // namespace geomix
