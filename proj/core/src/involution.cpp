#include "geomix/involution.hpp"

#include <cmath>

#include "geomix/stieltjes.hpp"

namespace geomix {

SpectralMeasure involute(const MixtureMeasure& mu, const Tolerance& tol) {
  return *spectral_map(mu, {0.0, 1.0, Provenance::involution}, tol).nu;
}

namespace {

std::vector<Atom> interior(const SpectralResult& r) {
  std::vector<Atom> out;
  for (const Atom& a : r.gap_atoms)
    if (a.location > 0 && a.location < 1) out.push_back(a);
  return out;
}

}  // namespace

std::vector<Atom> gap_atoms_atomic(const MixtureMeasure& mu, const Tolerance& tol) {
  if (!mu.is_atomic()) fail(ErrorKind::argument, "gap_atoms_atomic needs a purely atomic measure");
  return interior(spectral_map(mu, {}, tol));
}

std::vector<Atom> gap_atoms_ac(const MixtureMeasure& mu, const Tolerance& tol) {
  if (!mu.is_absolutely_continuous()) fail(ErrorKind::argument, "gap_atoms_ac needs an absolutely continuous measure");
  return interior(spectral_map(mu, {}, tol));
}

double residue_mass(const MixtureMeasure& mu, double y, const Tolerance& tol) {
  if (!(y > 0 && y < 1)) fail(ErrorKind::argument, "residue location must lie in (0, 1)");
  const double w = 1 - y;
  const double s = stieltjes_eval(mu, w, tol).real();
  const double ds = stieltjes_derivative(mu, w, tol).real();
  if (!(ds > 0)) fail(ErrorKind::consistency, "non-positive Stieltjes derivative");
  if (std::abs(s) > 1e-7 * (1 + std::sqrt(ds))) fail(ErrorKind::argument, "y is not a pole: s_mu(1 - y) != 0");
  return 1 / (y * (1 - y) * ds);
}

FixedPointDistance fixed_point_distance(const MixtureMeasure& mu, int samples, const Tolerance& tol) {
  const SpectralMeasure nu = involute(mu, tol);
  FixedPointDistance d;
  for (const Atom& a : nu.atoms()) d.atom_mismatch += std::abs(a.mass - mu.atom_mass_at(a.location));
  for (const Atom& a : mu.atoms())
    if (nu.measure().atom_mass_at(a.location) == 0) d.atom_mismatch += a.mass;
  for (int i = 1; i <= samples; ++i) {
    const double x = (i - 0.5) / samples;
    d.density_sup = std::max(d.density_sup, std::abs(nu.density(x) - mu.density(x)));
  }
  return d;
}

}  // namespace geomix
