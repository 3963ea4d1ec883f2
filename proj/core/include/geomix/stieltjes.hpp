#pragma once

#include <complex>

#include "geomix/measure.hpp"

namespace geomix {

using cplx = std::complex<double>;

struct BoundaryValue {
  double hilbert = 0;
  double density = 0;
};

// s_m(z) = ∫ dm(x)/(x - z).
cplx stieltjes_eval(const MixtureMeasure& m, cplx z, const Tolerance& tol = {});
// Principal value ∫ dm(y)/(y - x) at an interior piece point or a gap point.
double hilbert(const MixtureMeasure& m, double x, const Tolerance& tol = {});
BoundaryValue boundary(const MixtureMeasure& m, double x, const Tolerance& tol = {});
// ∫ dm(x)/(x - w)^2 for w off the support.
cplx stieltjes_derivative(const MixtureMeasure& m, cplx w, const Tolerance& tol = {});

// Low-level evaluators used by the spectral constructions. They take the evaluation
// point in offset form and never refuse points close to an edge.
namespace transform {

// Evaluation point: either a free real w (home < 0), or the point at offsets (a, b) from
// the ends of piece `home`.
struct Target {
  double w = 0;
  int home = -1;
  double a = 0;
  double b = 0;

  static Target free(double w) { return {w, -1, 0, 0}; }
  static Target in_piece(const MixtureMeasure& m, int k, double a, double b);
};

enum class Kernel {
  cauchy,      // 1/(y - w)
  cauchy_sq,   // 1/(y - w)^2
  weighted_sq  // y/(y - w)^2
};

// ∫ K(y, w) dm(y) over everything except the home piece. A free target may sit exactly on
// a piece end; the edge exponent is then shifted by the kernel order, and +-inf is returned
// when the result diverges.
double off_piece(const MixtureMeasure& m, const Target& t, Kernel k, const Tolerance& tol);

// Principal value of ∫ f(y)/(y - w) dy over the home piece.
double pv_home(const MixtureMeasure& m, const Target& t, const Tolerance& tol);

// Full Hilbert transform at a target (PV on the home piece plus all other contributions).
double hilbert_at(const MixtureMeasure& m, const Target& t, const Tolerance& tol);

}  // namespace transform
}  // namespace geomix
