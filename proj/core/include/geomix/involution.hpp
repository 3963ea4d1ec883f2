#pragma once

#include <vector>

#include "geomix/spectral.hpp"

namespace geomix {

// nu with s_nu(z) s_mu(1 - z) = 1/(z (1 - z)); moments of nu are renewal probabilities.
SpectralMeasure involute(const MixtureMeasure& mu, const Tolerance& tol = {});

// Atoms of nu strictly inside (0, 1) for atomic / absolutely continuous mu.
std::vector<Atom> gap_atoms_atomic(const MixtureMeasure& mu, const Tolerance& tol = {});
std::vector<Atom> gap_atoms_ac(const MixtureMeasure& mu, const Tolerance& tol = {});

// 1/(y (1 - y) s'_mu(1 - y)) at a pole y of s_nu.
double residue_mass(const MixtureMeasure& mu, double y, const Tolerance& tol = {});

// Distance between involute(mu) and mu: largest density difference on a sample grid plus
// the total atom mismatch. Used to probe for fixed points.
struct FixedPointDistance {
  double density_sup = 0;
  double atom_mismatch = 0;
};
FixedPointDistance fixed_point_distance(const MixtureMeasure& mu, int samples = 50, const Tolerance& tol = {});

}  // namespace geomix
