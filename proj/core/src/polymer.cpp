#include "geomix/polymer.hpp"

#include <cmath>
#include <limits>

namespace geomix {

double beta_critical(const MixtureMeasure& mu) {
  const double d = defect(mu);
  if (d >= 1) fail(ErrorKind::degenerate, "measure is concentrated at 0");
  return -std::log1p(-d);
}

double free_energy(const MixtureMeasure& mu, double beta, const Tolerance& tol) {
  if (beta <= beta_critical(mu)) return 0.0;
  return std::log(super_critical_root(mu, beta, tol).z);
}

double contact_fraction(const MixtureMeasure& mu, double beta, const Tolerance& tol) {
  if (beta <= beta_critical(mu)) return 0.0;
  return super_critical_root(mu, beta, tol).mass;
}

SpectralMeasure nu_beta(const MixtureMeasure& mu, double beta, const Tolerance& tol) {
  return *spectral_map(mu, {beta, 1.0, beta == 0 ? Provenance::involution : Provenance::polymer}, tol).nu;
}

PolymerState polymer_state(const MixtureMeasure& mu, double beta, const Tolerance& tol) {
  PolymerState s;
  s.mu = mu;
  s.beta = beta;
  s.beta_c = beta_critical(mu);
  SpectralResult r = spectral_map(mu, {beta, 1.0, Provenance::polymer}, tol);
  if (r.super_root > 0) {
    s.x_beta = r.super_root;
    s.free_energy = std::log(r.super_root);
    s.contact_fraction = r.super_mass;
  }
  s.nu_beta = r.nu;
  return s;
}

double partition_function(const MixtureMeasure& mu, double beta, int N, const Tolerance& tol) {
  return partition_function(nu_beta(mu, beta, tol), N).value;
}

MomentValue partition_function(const SpectralMeasure& nu, int N) {
  if (N == 0) return {1.0, false};
  return nu.moment(N);
}

std::vector<double> partition_oracle_log(const std::vector<double>& K, double beta, int N_max) {
  if (N_max < 0) fail(ErrorKind::argument, "N_max must be nonnegative");
  if (static_cast<int>(K.size()) <= N_max) fail(ErrorKind::argument, "pmf too short for the requested N_max");
  // y_N = Z_N rho^{-N} with rho = max(1, e^beta) keeps every term at most 1.
  const double log_rho = std::max(0.0, beta);
  std::vector<double> w(N_max + 1, 0.0), y(N_max + 1, 0.0), out(N_max + 1, 0.0);
  for (int n = 1; n <= N_max; ++n) w[n] = K[n] * std::exp(beta - n * log_rho);
  y[0] = 1;
  for (int N = 1; N <= N_max; ++N) {
    double s = 0;
    for (int n = 1; n <= N; ++n) s += w[n] * y[N - n];
    y[N] = s;
  }
  for (int N = 0; N <= N_max; ++N)
    out[N] = y[N] > 0 ? std::log(y[N]) + N * log_rho : -std::numeric_limits<double>::infinity();
  return out;
}

std::vector<double> partition_oracle_log(const MixtureMeasure& mu, double beta, int N_max, const Tolerance& tol) {
  std::vector<double> K(N_max + 1, 0.0);
  for (int n = 1; n <= N_max; ++n) K[n] = geometric_mixture_pmf(mu, n, tol);
  return partition_oracle_log(K, beta, N_max);
}

std::vector<double> partition_oracle(const MixtureMeasure& mu, double beta, int N_max, const Tolerance& tol) {
  std::vector<double> z = partition_oracle_log(mu, beta, N_max, tol);
  for (double& v : z) v = std::exp(v);
  return z;
}

}  // namespace geomix
