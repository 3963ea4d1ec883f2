#pragma once

#include "geomix/spectral.hpp"
#include "geomix/stieltjes.hpp"

namespace geomix {

// Generalized arcsine family: mu_v = Beta(1 - v, v), pinned with strength beta.
struct ArcsineParams {
  double v = 0.5;
  double beta = 0;
  double gamma = 0;   // (1 - e^{-beta})^{1/(1-v)}, beta > 0
  double x_atom = 1;  // 1/(1 - gamma)
  double c_atom = 0;  // e^{-beta}/(1-v) gamma^v/(1 - gamma)
  bool has_atom = false;
};

ArcsineParams arcsine_params(double v, double beta);

MixtureMeasure mu_v(double v);
double K_v_pmf(double v, int n);

// Closed-form s_{mu_v}(z) off [0, 1].
cplx stieltjes_mu_v(double v, cplx z);
// Boundary value of s_{mu_v} at the reflected point 1 - x: for x in (0, 1) the pair
// (H_{mu_v}(1-x), f_{mu_v}(1-x)); for x outside [0, 1] the real value with density 0.
BoundaryValue stieltjes_mu_v_boundary(double v, double x);

double f_v_beta(double v, double beta, double x);
SpectralMeasure nu_v_beta(double v, double beta, const Tolerance& tol = {});
double free_energy_arcsine(double v, double beta);
double contact_arcsine(double v, double beta);
double partition_exact_beta0(double v, int N);

// The v = 1/2 case in its own closed form.
SpectralMeasure nu_half_beta(double beta, const Tolerance& tol = {});

}  // namespace geomix
