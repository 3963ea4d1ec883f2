#pragma once

#include <vector>

#include "geomix/involution.hpp"

namespace geomix {

struct RenewalLaw {
  MixtureMeasure base;
  double tilt_b = 0;
  double normalizer = 1;  // c(b) = sum_n K(n) e^{-nb}
  double mean = 0;        // m_K or m_{K_b}, possibly +inf
};

// P(N in tau) as the N-th moment of the involuted measure.
double renewal_probability(const MixtureMeasure& mu, int N, const Tolerance& tol = {});
double renewal_probability(const SpectralMeasure& nu, int N);

// u_0..u_{N_max} from u_N = sum_{n<=N} K(n) u_{N-n}.
std::vector<double> renewal_oracle(const MixtureMeasure& mu, int N_max, const Tolerance& tol = {});
std::vector<double> renewal_recursion(const std::vector<double>& K, int N_max);

// 1/m_K, or 0 when the mean is infinite.
double renewal_limit(const MixtureMeasure& mu, const Tolerance& tol = {});

// Untilted view of mu.
RenewalLaw renewal_law(const MixtureMeasure& mu, const Tolerance& tol = {});
RenewalLaw tilted_law(const MixtureMeasure& mu, double b, const Tolerance& tol = {});
double tilted_normalizer(const MixtureMeasure& mu, double b, const Tolerance& tol = {});
// K_b(1..n_max), index 0 unused.
std::vector<double> tilted_pmf(const MixtureMeasure& mu, double b, int n_max, const Tolerance& tol = {});

// Spectral measure of the tilted renewal: moments are P(N in tau(b)), atom 1/m_{K_b} at 1.
SpectralMeasure nu_tilted(const MixtureMeasure& mu, double b, const Tolerance& tol = {});

struct DecayFit {
  double slope = 0;
  double intercept = 0;
  std::vector<int> N;
  std::vector<double> log_transient;  // log(P(N in tau(b)) - 1/m_{K_b})
};

// Least-squares slope of N -> log(P(N in tau(b)) - 1/m_{K_b}) on [N_lo, N_hi].
double decay_rate(const MixtureMeasure& mu, double b, int N_lo, int N_hi, const Tolerance& tol = {});
DecayFit decay_fit(const SpectralMeasure& nu_b, int N_lo, int N_hi);

}  // namespace geomix
