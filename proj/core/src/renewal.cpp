#include "geomix/renewal.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace geomix {

double renewal_probability(const MixtureMeasure& mu, int N, const Tolerance& tol) {
  return renewal_probability(involute(mu, tol), N);
}

double renewal_probability(const SpectralMeasure& nu, int N) {
  if (N < 0) fail(ErrorKind::argument, "N must be nonnegative");
  if (N == 0) return 1.0;
  return nu.moment(N).value;
}

std::vector<double> renewal_recursion(const std::vector<double>& K, int N_max) {
  if (N_max < 0) fail(ErrorKind::argument, "N_max must be nonnegative");
  if (static_cast<int>(K.size()) <= N_max) fail(ErrorKind::argument, "pmf too short for the requested N_max");
  std::vector<double> u(N_max + 1, 0.0);
  u[0] = 1.0;
  for (int N = 1; N <= N_max; ++N) {
    double s = 0;
    for (int n = 1; n <= N; ++n) s += K[n] * u[N - n];
    u[N] = s;
  }
  return u;
}

std::vector<double> renewal_oracle(const MixtureMeasure& mu, int N_max, const Tolerance& tol) {
  if (N_max < 0) fail(ErrorKind::argument, "N_max must be nonnegative");
  std::vector<double> K(N_max + 1, 0.0);
  for (int n = 1; n <= N_max; ++n) K[n] = geometric_mixture_pmf(mu, n, tol);
  return renewal_recursion(K, N_max);
}

double renewal_limit(const MixtureMeasure& mu, const Tolerance& tol) {
  const double m = mean_interarrival(mu, tol);
  return std::isfinite(m) ? 1.0 / m : 0.0;
}

RenewalLaw renewal_law(const MixtureMeasure& mu, const Tolerance& tol) {
  return {mu, 0.0, 1.0 - defect(mu), mean_interarrival(mu, tol)};
}

double tilted_normalizer(const MixtureMeasure& mu, double b, const Tolerance& tol) {
  if (!(b > 0)) fail(ErrorKind::argument, "tilt b must be positive");
  const double q = std::exp(-b);
  // sum_n (1-x)^{n-1} x q^n = x q / (1 - q (1 - x))
  auto kern = [q](double x, double omx) { return x * q / (1 - q * omx); };
  return integrate_measure(mu, kern, tol);
}

std::vector<double> tilted_pmf(const MixtureMeasure& mu, double b, int n_max, const Tolerance& tol) {
  const double c = tilted_normalizer(mu, b, tol);
  std::vector<double> K(n_max + 1, 0.0);
  for (int n = 1; n <= n_max; ++n) K[n] = geometric_mixture_pmf(mu, n, tol) * std::exp(-n * b) / c;
  return K;
}

RenewalLaw tilted_law(const MixtureMeasure& mu, double b, const Tolerance& tol) {
  RenewalLaw law{mu, b, tilted_normalizer(mu, b, tol), 0.0};
  // Direct series with the tail bounded through K(n) <= 1:
  // sum_{n>M} n q^n <= (M+1) q^{M+1} / (1-q)^2.
  const double q = std::exp(-b);
  double s = 0;
  for (int n = 1;; ++n) {
    s += n * geometric_mixture_pmf(mu, n, tol) * std::pow(q, n);
    const double tail = (n + 1) * std::pow(q, n + 1) / ((1 - q) * (1 - q));
    if (tail < 1e-14 * law.normalizer) break;
    if (n > 10000000) fail(ErrorKind::range, "tilted mean series does not converge for b = " + std::to_string(b));
  }
  law.mean = s / law.normalizer;
  return law;
}

SpectralMeasure nu_tilted(const MixtureMeasure& mu, double b, const Tolerance& tol) {
  const double c = tilted_normalizer(mu, b, tol);
  SpectralParams params{-std::log(c), std::exp(-b), Provenance::tilted, true};
  SpectralResult r = spectral_map(mu, params, tol);
  if (r.super_root == 0) fail(ErrorKind::consistency, "tilted measure has no atom at 1");
  return *r.nu;
}

DecayFit decay_fit(const SpectralMeasure& nu_b, int N_lo, int N_hi) {
  if (!(N_lo < N_hi) || N_lo < 1) fail(ErrorKind::argument, "decay window needs 1 <= N_lo < N_hi");
  DecayFit fit;
  for (int N = N_lo; N <= N_hi; ++N) {
    const MomentValue t = nu_b.transient_moment(N);
    if (t.precision_loss || !(t.value > 0))
      fail(ErrorKind::range, "transient vanishes at N = " + std::to_string(N) + "; use a smaller N_hi");
    fit.N.push_back(N);
    fit.log_transient.push_back(std::log(t.value));
  }
  const double n = static_cast<double>(fit.N.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < fit.N.size(); ++i) {
    sx += fit.N[i];
    sy += fit.log_transient[i];
  }
  const double mx = sx / n, my = sy / n;
  for (std::size_t i = 0; i < fit.N.size(); ++i) {
    const double dx = fit.N[i] - mx;
    sxx += dx * dx;
    sxy += dx * (fit.log_transient[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

double decay_rate(const MixtureMeasure& mu, double b, int N_lo, int N_hi, const Tolerance& tol) {
  return decay_fit(nu_tilted(mu, b, tol), N_lo, N_hi).slope;
}

}  // namespace geomix
