#pragma once

#include <vector>

#include "geomix/spectral.hpp"

namespace geomix {

// f_eta(x) = ∫ s e^{-s x} dmu(s) for a rate mixture mu on [0, inf).
double interarrival_density(const MixtureMeasure& mu, double x, const Tolerance& tol = {});

// Positive measure nu with (1 + s_nu(z)) s_mu(z) = -1/z; total mass ∫ s dmu(s).
SpectralMeasure nu_continuous(const MixtureMeasure& mu, const Tolerance& tol = {});

// Renewal intensity H(x) = ∫ e^{-x s} dnu(s).
double intensity(const MixtureMeasure& mu, double x, const Tolerance& tol = {});
double intensity(const SpectralMeasure& nu, double x);

struct OracleValue {
  double value = 0;
  double tail_bound = 0;  // bound on the dropped terms k > k_max (atomic) / grid disagreement
  bool flagged = false;
};

// sum_{k<=k_max} f^{*k}(x): exact uniformization for atomic mu, otherwise trapezoid
// convolution on a grid of step 1e-3 with Richardson extrapolation against step 2e-3.
OracleValue intensity_oracle(const MixtureMeasure& mu, double x, int k_max, const Tolerance& tol = {});
std::vector<OracleValue> intensity_oracle(const MixtureMeasure& mu, const std::vector<double>& xs, int k_max,
                                          const Tolerance& tol = {});

}  // namespace geomix
