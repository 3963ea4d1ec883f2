#pragma once

#include <memory>
#include <vector>

#include "geomix/measure.hpp"
#include "geomix/stieltjes.hpp"

namespace geomix {

enum class Provenance { involution, polymer, tilted, continuous, closed_form };

const char* to_string(Provenance p) noexcept;

// Output of a subordination map: a MixtureMeasure plus a cached quadrature rule for its
// absolutely continuous part, so that moments cost O(rule size) per order.
class SpectralMeasure {
 public:
  struct Node {
    double x;
    double w;
  };

  SpectralMeasure(MixtureMeasure measure, Provenance provenance, const Tolerance& tol = {});

  const MixtureMeasure& measure() const { return measure_; }
  const std::vector<Atom>& atoms() const { return measure_.atoms(); }
  const std::vector<DensityPiece>& pieces() const { return measure_.pieces(); }
  Provenance provenance() const { return provenance_; }

  double density(double x) const { return measure_.density(x); }
  double atom_mass() const;
  double ac_mass() const;
  double total_mass() const { return atom_mass() + ac_mass(); }

  MomentValue moment(int N) const;
  // Moment with any atom at exactly 1 left out.
  MomentValue transient_moment(int N) const;
  double exp_moment(double x) const;
  // s_nu(z) from the cached rule when |Im z| >= rule_min_imag, else by adaptive quadrature.
  cplx stieltjes(cplx z) const;
  static constexpr double rule_min_imag = 0.05;

  const std::vector<Node>& rule() const;

 private:
  struct Cache;
  MixtureMeasure measure_;
  Provenance provenance_;
  Tolerance tol_;
  std::shared_ptr<Cache> cache_;
};

// Edge of a density f/(d (H^2 + pi^2 f^2))-type output when the input edge sits where the
// reflected point approaches 0 (touching case) or an interior gap end.
Edge touching_edge_rule(Edge e);
Edge interior_edge_rule(Edge e);

// Parameters of the generic map mu -> nu_beta, pushed forward by x -> scale x:
//   s_nu(z) (e^beta s_mu(1 - z) - (1 - e^beta)/(1 - z)) = 1/(z (1 - z)).
struct SpectralParams {
  double beta = 0.0;
  double scale = 1.0;
  Provenance provenance = Provenance::involution;
  // Place the super-critical atom exactly at 1 after scaling (tilted laws); a mismatch
  // above 1e-8 is a consistency error.
  bool snap_super_root = false;
};

struct SpectralResult {
  std::shared_ptr<const SpectralMeasure> nu;
  std::vector<Atom> gap_atoms;      // roots of the denominator inside reflected gaps
  double super_root = 0.0;          // root in (1, inf) before scaling, 0 if none
  double super_mass = 0.0;
  double beta_gap = 0.0;            // e^beta (1 - mu({0})) - 1
};

SpectralResult spectral_map(const MixtureMeasure& mu, const SpectralParams& params,
                            const Tolerance& tol = {});

// Root z > 1 of the denominator and the residue mass there, without building nu.
// Returns {1, 0} when beta is at or below the critical value.
struct SuperRoot {
  double z = 1.0;
  double mass = 0.0;
};
SuperRoot super_critical_root(const MixtureMeasure& mu, double beta, const Tolerance& tol = {});

}  // namespace geomix
