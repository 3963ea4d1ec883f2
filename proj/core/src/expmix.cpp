#include "geomix/expmix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>

#include "geomix/stieltjes.hpp"

namespace geomix {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void check_rate_mixture(const MixtureMeasure& mu, const Tolerance& tol) {
  if (mu.domain() != Domain::half_line) fail(ErrorKind::domain, "rate mixture must live on [0, inf)");
  if (mu.atom_mass_at(0.0) > 0) fail(ErrorKind::argument, "an atom at rate 0 makes the inter-arrival law defective");
  const double m = total_mass(mu, tol);
  if (std::abs(m - 1) > 1e-9) fail(ErrorKind::argument, "rate mixture must be a probability measure, mass " + fmt(m));
}

double f_eta(const MixtureMeasure& mu, double x, const Tolerance& tol) {
  auto kern = [x](double s, double) { return s * std::exp(-s * x); };
  auto grader = [x](const DensityPiece&) {
    quad::Grading g;
    if (x > 0) g.lo_scale = 1.0 / x;
    return g;
  };
  return integrate_measure(mu, kern, grader, tol);
}

}  // namespace

double interarrival_density(const MixtureMeasure& mu, double x, const Tolerance& tol) {
  if (!(x > 0)) fail(ErrorKind::argument, "inter-arrival density needs x > 0");
  check_rate_mixture(mu, tol);
  return f_eta(mu, x, tol);
}

SpectralMeasure nu_continuous(const MixtureMeasure& mu, const Tolerance& tol) {
  check_rate_mixture(mu, tol);
  auto m = std::make_shared<const MixtureMeasure>(mu);
  auto s_real = [&](double w) {
    return transform::off_piece(*m, transform::Target::free(w), transform::Kernel::cauchy, tol);
  };
  std::vector<Atom> atoms;
  const double m_eta = weighted_integral(mu, Weight::inv_x, tol);
  if (std::isfinite(m_eta)) atoms.push_back({0.0, 1.0 / m_eta});

  // Components of the support; s_mu increases on every gap between them.
  struct Comp {
    double lo, hi;
    bool atom;
    Edge lo_edge, hi_edge;
  };
  std::vector<Comp> comps;
  for (const Atom& a : mu.atoms()) comps.push_back({a.location, a.location, true, {}, {}});
  for (const DensityPiece& p : mu.pieces()) comps.push_back({p.lo, p.hi, false, p.lo_edge, p.hi_edge});
  std::sort(comps.begin(), comps.end(), [](const auto& u, const auto& v) { return u.lo < v.lo; });
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
    const Comp& l = comps[i];
    const Comp& r = comps[i + 1];
    if (!(r.lo > l.hi)) continue;
    const double sl = (l.atom || l.hi_edge.unbounded()) ? -inf : s_real(l.hi);
    const double sr = (r.atom || r.lo_edge.unbounded()) ? inf : s_real(r.lo);
    if (!(sl < 0 && sr > 0)) continue;
    double lo = l.hi, hi = r.lo;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      (s_real(mid) < 0 ? lo : hi) = mid;
    }
    const double y = 0.5 * (lo + hi);
    const double ds = transform::off_piece(*m, transform::Target::free(y), transform::Kernel::cauchy_sq, tol);
    const double mass = 1.0 / (y * ds);
    if (mass == 0) continue;  // root pinned to a gap end where s' diverges
    if (!(mass > 0) || !std::isfinite(mass)) fail(ErrorKind::consistency, "non-positive residue mass at " + fmt(y));
    atoms.push_back({y, mass});
  }
  std::sort(atoms.begin(), atoms.end(), [](const auto& u, const auto& v) { return u.location < v.location; });

  std::vector<DensityPiece> pieces;
  for (int k = 0; k < static_cast<int>(mu.pieces().size()); ++k) {
    const DensityPiece& p = mu.pieces()[k];
    DensityPiece q;
    q.lo = p.lo;
    q.hi = p.hi;
    q.family = "spectral";
    q.density = [m, k, tol](const PiecePoint& pt) {
      const DensityPiece& mp = m->pieces()[k];
      const double f = mp.density(pt);
      if (!(f > 0)) return 0.0;
      const auto t = transform::Target::in_piece(*m, k, pt.from_lo, pt.from_hi);
      const double H = transform::hilbert_at(*m, t, tol);
      return f / (t.w * (H * H + M_PI * M_PI * f * f));
    };
    if (p.lo == 0.0)
      q.lo_edge = touching_edge_rule(p.lo_edge);
    else
      q.lo_edge = mu.atom_mass_at(p.lo) > 0 ? p.lo_edge.times_d2() : interior_edge_rule(p.lo_edge);
    q.hi_edge = mu.atom_mass_at(p.hi) > 0 ? p.hi_edge.times_d2() : interior_edge_rule(p.hi_edge);
    pieces.push_back(std::move(q));
  }

  MixtureMeasure nu(std::move(atoms), std::move(pieces), Domain::half_line);
  const double expected = integrate_measure(mu, [](double s, double) { return s; }, tol);
  double total = 0;
  for (const Atom& a : nu.atoms()) total += a.mass;
  for (const DensityPiece& p : nu.pieces()) total += piece_mass(p, tol);
  const double allowed = (nu.pieces().empty() ? 1e-8 : 1e-6) * std::max(1.0, expected);
  if (!(std::abs(total - expected) <= allowed))
    fail(ErrorKind::consistency, "continuous spectral measure has mass " + fmt(total) + ", expected " + fmt(expected));
  return SpectralMeasure(std::move(nu), Provenance::continuous, tol);
}

double intensity(const SpectralMeasure& nu, double x) {
  if (!(x > 0)) fail(ErrorKind::argument, "intensity needs x > 0");
  return nu.exp_moment(x);
}

double intensity(const MixtureMeasure& mu, double x, const Tolerance& tol) {
  return intensity(nu_continuous(mu, tol), x);
}

namespace {

double log_poisson(int m, double lam) {
  if (lam == 0) return m == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  return -lam + m * std::log(lam) - std::lgamma(m + 1.0);
}

// Hyperexponential renewal density via uniformization at rate max s_i.
std::vector<OracleValue> uniformized(const MixtureMeasure& mu, const std::vector<double>& xs, int k_max) {
  const auto& at = mu.atoms();
  const std::size_t n = at.size();
  double lam = 0;
  for (const Atom& a : at) lam = std::max(lam, a.location);
  double xmax = 0;
  for (double x : xs) xmax = std::max(xmax, x);
  const double mean = lam * xmax;
  const int M = static_cast<int>(mean + 12 * std::sqrt(mean) + 60);
  // r[k][i]: probability of k completed renewals and current phase i after m events.
  std::vector<std::vector<double>> r(k_max, std::vector<double>(n, 0.0)), next = r;
  for (std::size_t i = 0; i < n; ++i) r[0][i] = at[i].mass;
  std::vector<double> c(M + 1, 0.0);
  for (int m = 0; m <= M; ++m) {
    double cm = 0;
    for (int k = 0; k < k_max; ++k)
      for (std::size_t i = 0; i < n; ++i) cm += r[k][i] * at[i].location;
    c[m] = cm;
    for (int k = 0; k < k_max; ++k) {
      double exit_prev = 0;
      if (k > 0)
        for (std::size_t i = 0; i < n; ++i) exit_prev += r[k - 1][i] * at[i].location / lam;
      for (std::size_t j = 0; j < n; ++j)
        next[k][j] = r[k][j] * (1 - at[j].location / lam) + exit_prev * at[j].mass;
    }
    std::swap(r, next);
  }
  std::vector<OracleValue> out;
  for (double x : xs) {
    const double L = lam * x;
    OracleValue v;
    for (int m = 0; m <= M; ++m) v.value += std::exp(log_poisson(m, L)) * c[m];
    // Dropped terms need at least k_max events: bounded by lam P(Poisson(L) >= k_max).
    double tail = 0;
    for (int m = k_max; m <= std::max(M, k_max + 200); ++m) tail += std::exp(log_poisson(m, L));
    v.tail_bound = lam * tail;
    v.flagged = v.tail_bound > 1e-10;
    out.push_back(v);
  }
  return out;
}

// Truncated series sum_{k<=k_max} f^{*k} on a uniform grid, trapezoid convolutions.
std::vector<double> grid_series(const std::vector<double>& f, double h, int k_max) {
  const std::size_t M = f.size();
  std::vector<double> H = f, g = f, gn(M, 0.0);
  double hmax = 0;
  for (double v : f) hmax = std::max(hmax, std::abs(v));
  for (int k = 2; k <= k_max; ++k) {
    gn[0] = 0;
    double gmax = 0;
    for (std::size_t i = 1; i < M; ++i) {
      double s = 0.5 * (g[0] * f[i] + g[i] * f[0]);
      for (std::size_t j = 1; j < i; ++j) s += g[j] * f[i - j];
      gn[i] = h * s;
      gmax = std::max(gmax, std::abs(gn[i]));
    }
    std::swap(g, gn);
    for (std::size_t i = 0; i < M; ++i) H[i] += g[i];
    hmax = std::max(hmax, gmax);
    if (gmax < 1e-18 * hmax) break;
  }
  return H;
}

std::vector<OracleValue> gridded(const MixtureMeasure& mu, const std::vector<double>& xs, int k_max,
                                 const Tolerance& tol) {
  double xmax = 0;
  for (double x : xs) xmax = std::max(xmax, x);
  const int n2 = std::max(1, static_cast<int>(std::ceil(xmax / 2e-3 - 1e-9)));
  const double h2 = xmax / n2, h = 0.5 * h2;
  std::vector<double> fine(2 * n2 + 1), coarse(n2 + 1);
  for (int i = 0; i <= 2 * n2; ++i) fine[i] = f_eta(mu, i * h, tol);
  for (int i = 0; i <= n2; ++i) coarse[i] = fine[2 * i];
  const std::vector<double> Hf = grid_series(fine, h, k_max);
  const std::vector<double> Hc = grid_series(coarse, h2, k_max);
  std::vector<OracleValue> out;
  for (double x : xs) {
    const double idx = x / h2;
    const long i2 = std::lround(idx);
    if (std::abs(idx - i2) > 1e-6) {
      out.push_back(gridded(mu, {x}, k_max, tol).front());
      continue;
    }
    const double a = Hf[2 * i2], b = Hc[i2];
    OracleValue v;
    v.value = (4 * a - b) / 3;
    v.tail_bound = std::abs(a - b) / 3;
    v.flagged = std::abs(a - b) > 1e-6;
    out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<OracleValue> intensity_oracle(const MixtureMeasure& mu, const std::vector<double>& xs, int k_max,
                                          const Tolerance& tol) {
  if (k_max < 1) fail(ErrorKind::argument, "k_max must be at least 1");
  check_rate_mixture(mu, tol);
  for (double x : xs)
    if (!(x > 0)) fail(ErrorKind::argument, "oracle needs x > 0");
  if (xs.empty()) return {};
  if (k_max == 1) {
    std::vector<OracleValue> out;
    for (double x : xs) out.push_back({f_eta(mu, x, tol), 0.0, false});
    return out;
  }
  return mu.is_atomic() ? uniformized(mu, xs, k_max) : gridded(mu, xs, k_max, tol);
}

OracleValue intensity_oracle(const MixtureMeasure& mu, double x, int k_max, const Tolerance& tol) {
  return intensity_oracle(mu, std::vector<double>{x}, k_max, tol).front();
}

}  // namespace geomix
