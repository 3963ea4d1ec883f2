#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "geomix/error.hpp"
#include "geomix/quadrature.hpp"
#include "geomix/tolerance.hpp"

namespace geomix {

enum class Domain { unit_interval, half_line, real_line };

const char* to_string(Domain d) noexcept;

struct Atom {
  double location;
  double mass;
};

using DensityFn = std::function<double(const PiecePoint&)>;

struct DensityPiece {
  double lo = 0;
  double hi = 0;
  DensityFn density;
  Edge lo_edge = Edge::power(0.0);
  Edge hi_edge = Edge::power(0.0);
  std::string family = "custom";

  quad::PieceFrame frame() const { return {lo, hi}; }
  double length() const { return hi - lo; }
  double operator()(const PiecePoint& p) const { return density(p); }
  // Density at an absolute location inside the piece.
  double at(double x) const { return density({x, x - lo, hi - x}); }
};

// A finite positive measure: atoms plus densities on disjoint intervals. Immutable once
// constructed; the constructor validates the layout and, if requested, unit total mass.
class MixtureMeasure {
 public:
  MixtureMeasure() = default;
  MixtureMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces, Domain domain,
                 bool probability = false, const Tolerance& tol = {});

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<DensityPiece>& pieces() const { return pieces_; }
  Domain domain() const { return domain_; }
  bool is_probability() const { return probability_; }
  bool empty() const { return atoms_.empty() && pieces_.empty(); }
  bool is_atomic() const { return pieces_.empty() && !atoms_.empty(); }
  bool is_absolutely_continuous() const { return atoms_.empty() && !pieces_.empty(); }

  // Mass of the atom at x (0 if none).
  double atom_mass_at(double x) const;
  // Density at x, 0 outside the pieces.
  double density(double x) const;
  // Smallest and largest points of the support.
  double support_min() const;
  double support_max() const;

 private:
  std::vector<Atom> atoms_;
  std::vector<DensityPiece> pieces_;
  Domain domain_ = Domain::unit_interval;
  bool probability_ = false;
};

struct MomentValue {
  double value = 0;
  bool precision_loss = false;
};

enum class Weight { inv_x, inv_1mx };

double piece_mass(const DensityPiece& piece, const Tolerance& tol = {});
double total_mass(const MixtureMeasure& m, const Tolerance& tol = {});
MomentValue moment(const MixtureMeasure& m, int N, const Tolerance& tol = {});
double exp_moment(const MixtureMeasure& m, double x, const Tolerance& tol = {});
double weighted_integral(const MixtureMeasure& m, Weight w, const Tolerance& tol = {});
double geometric_mixture_pmf(const MixtureMeasure& mu, int n, const Tolerance& tol = {});
double defect(const MixtureMeasure& mu);
double mean_interarrival(const MixtureMeasure& mu, const Tolerance& tol = {});

// Integral of kern(x, 1 - x) over the measure; both arguments are accurate near 0 and 1.
// grader(piece) supplies per-piece feature scales.
template <class Kern, class Grader>
auto integrate_measure(const MixtureMeasure& m, Kern&& kern, Grader&& grader, const Tolerance& tol)
    -> std::decay_t<decltype(kern(0.0, 1.0))> {
  using T = std::decay_t<decltype(kern(0.0, 1.0))>;
  T total{};
  for (const Atom& a : m.atoms()) total += a.mass * kern(a.location, 1.0 - a.location);
  for (const DensityPiece& p : m.pieces()) {
    const double top = 1.0 - p.hi;
    auto k = [&](const PiecePoint& q) { return kern(q.x, top + q.from_hi); };
    total += quad::integrate_piece(p.frame(), p.lo_edge, p.hi_edge, p.density, k, grader(p), tol).value;
  }
  return total;
}

template <class Kern>
auto integrate_measure(const MixtureMeasure& m, Kern&& kern, const Tolerance& tol) {
  return integrate_measure(m, kern, [](const DensityPiece&) { return quad::Grading{}; }, tol);
}

}  // namespace geomix
