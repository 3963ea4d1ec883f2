#pragma once

#include <vector>

#include "geomix/measure.hpp"

namespace geomix {

// Constant density on [lo, hi] carrying the given mass.
DensityPiece uniform_piece(double lo, double hi, double mass = 1.0);

// Beta(a, b) law rescaled to [lo, hi], times mass.
DensityPiece beta_piece(double lo, double hi, double a, double b, double mass = 1.0);

// Generalized arcsine law Beta(1 - v, v) rescaled to [lo, hi], times mass.
DensityPiece arcsine_piece(double lo, double hi, double v, double mass = 1.0);

// Polynomial density sum_k c_k t^k in the local coordinate t = (x - lo)/(hi - lo).
// Edge behaviour follows from the order of vanishing at t = 0 and t = 1.
// When mass > 0 the coefficients are rescaled to carry that mass.
DensityPiece poly_piece(double lo, double hi, std::vector<double> coeffs, double mass = 0.0);

}  // namespace geomix
