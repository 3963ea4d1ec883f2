#include "geomix/arcsine.hpp"

#include <cmath>

#include "geomix/families.hpp"

namespace geomix {

namespace {

void check_v(double v) {
  if (!(v > 0 && v < 1)) fail(ErrorKind::argument, "arcsine parameter v must lie in (0, 1)");
}

// Exponent label at x = 1 for pinned densities that behave like (1-x)^{v-1} only at beta = 0.
Edge top_edge(double v, double beta) {
  return std::abs(beta) < 1e-8 ? Edge::power(1 - v) : Edge::power(v - 1);
}

}  // namespace

ArcsineParams arcsine_params(double v, double beta) {
  check_v(v);
  ArcsineParams p;
  p.v = v;
  p.beta = beta;
  if (beta > 0) {
    p.gamma = std::pow(-std::expm1(-beta), 1 / (1 - v));
    p.x_atom = 1 / (1 - p.gamma);
    p.c_atom = std::exp(-beta) / (1 - v) * std::pow(p.gamma, v) / (1 - p.gamma);
    p.has_atom = true;
  }
  return p;
}

MixtureMeasure mu_v(double v) {
  check_v(v);
  return MixtureMeasure({}, {arcsine_piece(0, 1, v)}, Domain::unit_interval, true);
}

double K_v_pmf(double v, int n) {
  check_v(v);
  if (n < 1) fail(ErrorKind::argument, "K(n) needs n >= 1");
  const double logk = std::lgamma(n + v - 1) + std::lgamma(2 - v) - std::lgamma(n + 1.0);
  return std::sin(M_PI * v) / M_PI * std::exp(logk);
}

cplx stieltjes_mu_v(double v, cplx z) {
  check_v(v);
  if (z.imag() == 0 && z.real() >= 0 && z.real() <= 1) fail(ErrorKind::singularity, "z on the support [0, 1]");
  return (1.0 / (1.0 - z)) * std::pow(z / (z - 1.0), -v);
}

BoundaryValue stieltjes_mu_v_boundary(double v, double x) {
  check_v(v);
  if (x == 0 || x == 1 || !std::isfinite(x)) fail(ErrorKind::singularity, "boundary value at an endpoint");
  if (x > 0 && x < 1) {
    const double r = std::pow(1 - x, -v) * std::pow(x, v - 1);
    return {std::cos(M_PI * v) * r, std::sin(M_PI * v) / M_PI * r};
  }
  return {(1 / x) * std::pow(std::abs((1 - x) / x), -v), 0.0};
}

namespace {

double f_v_beta_at(double v, double beta, double x, double omx) {
  const double eb = std::exp(beta), one_m = -std::expm1(beta);
  const double A = std::pow(x, 1 - v), B = std::pow(omx, 1 - v);
  const double den = one_m * one_m * A * A - 2 * eb * one_m * std::cos(M_PI * v) * A * B + eb * eb * B * B;
  return std::sin(M_PI * v) / (M_PI * x) * eb * A * B / den;
}

}  // namespace

double f_v_beta(double v, double beta, double x) {
  check_v(v);
  if (!(x > 0 && x < 1)) return 0.0;
  return f_v_beta_at(v, beta, x, 1 - x);
}

SpectralMeasure nu_v_beta(double v, double beta, const Tolerance& tol) {
  const ArcsineParams ap = arcsine_params(v, beta);
  DensityPiece p;
  p.lo = 0;
  p.hi = 1;
  p.family = "arcsine_pinned";
  p.density = [v, beta](const PiecePoint& q) { return f_v_beta_at(v, beta, q.x, q.from_hi); };
  p.lo_edge = Edge::power(v);
  p.hi_edge = top_edge(v, beta);
  std::vector<Atom> atoms;
  if (ap.has_atom) atoms.push_back({ap.x_atom, ap.c_atom});
  return SpectralMeasure(MixtureMeasure(std::move(atoms), {p}, ap.has_atom ? Domain::real_line : Domain::unit_interval),
                         Provenance::closed_form, tol);
}

double free_energy_arcsine(double v, double beta) {
  const ArcsineParams ap = arcsine_params(v, beta);
  return ap.has_atom ? -std::log1p(-ap.gamma) : 0.0;
}

double contact_arcsine(double v, double beta) { return arcsine_params(v, beta).c_atom; }

double partition_exact_beta0(double v, int N) {
  check_v(v);
  if (N < 0) fail(ErrorKind::argument, "N must be nonnegative");
  return std::exp(std::lgamma(N + 1 - v) - std::lgamma(1 - v) - std::lgamma(N + 1.0));
}

SpectralMeasure nu_half_beta(double beta, const Tolerance& tol) {
  const double eb = std::exp(beta);
  DensityPiece p;
  p.lo = 0;
  p.hi = 1;
  p.family = "arcsine_half_pinned";
  p.density = [eb](const PiecePoint& q) {
    const double x = q.x;
    return eb / (M_PI * x) * std::sqrt(q.from_hi * x) / (x * (1 - 2 * eb) + eb * eb);
  };
  p.lo_edge = Edge::power(0.5);
  p.hi_edge = top_edge(0.5, beta);
  std::vector<Atom> atoms;
  if (beta > 0) atoms.push_back({eb * eb / (2 * eb - 1), (2 * eb - 2) / (2 * eb - 1)});
  return SpectralMeasure(MixtureMeasure(std::move(atoms), {p}, beta > 0 ? Domain::real_line : Domain::unit_interval),
                         Provenance::closed_form, tol);
}

}  // namespace geomix
