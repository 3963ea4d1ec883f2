#pragma once

#include <memory>
#include <vector>

#include "geomix/spectral.hpp"

namespace geomix {

struct PolymerState {
  MixtureMeasure mu;
  double beta = 0;
  double beta_c = 0;
  double free_energy = 0;
  double x_beta = 1;
  double contact_fraction = 0;
  std::shared_ptr<const SpectralMeasure> nu_beta;
};

double beta_critical(const MixtureMeasure& mu);
double free_energy(const MixtureMeasure& mu, double beta, const Tolerance& tol = {});
double contact_fraction(const MixtureMeasure& mu, double beta, const Tolerance& tol = {});
SpectralMeasure nu_beta(const MixtureMeasure& mu, double beta, const Tolerance& tol = {});
PolymerState polymer_state(const MixtureMeasure& mu, double beta, const Tolerance& tol = {});

// Z_{N,beta} as the N-th moment of nu_beta.
double partition_function(const MixtureMeasure& mu, double beta, int N, const Tolerance& tol = {});
MomentValue partition_function(const SpectralMeasure& nu_beta, int N);

// log Z_0..log Z_{N_max} from Z_N = sum_n e^beta K(n) Z_{N-n}, scaled to stay finite.
std::vector<double> partition_oracle_log(const MixtureMeasure& mu, double beta, int N_max,
                                         const Tolerance& tol = {});
std::vector<double> partition_oracle_log(const std::vector<double>& K, double beta, int N_max);
// Same sequence exponentiated (entries may be +inf beyond double range).
std::vector<double> partition_oracle(const MixtureMeasure& mu, double beta, int N_max, const Tolerance& tol = {});

}  // namespace geomix
