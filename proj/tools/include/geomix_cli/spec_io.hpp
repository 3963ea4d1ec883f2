#pragma once

#include <string>

#include "geomix/measure.hpp"
#include "geomix/tolerance.hpp"
#include "json.hpp"

namespace geomix::cli {

// Measure spec:
//   {"domain": "unit" | "halfline",
//    "atoms":  [{"x": 0.25, "mass": 0.5}, ...],
//    "pieces": [{"lo": 0, "hi": 1, "family": "uniform" | "beta" | "arcsine" | "piecewise_poly",
//                "params": {...}, "mass": 1}, ...]}
// params: beta {"a", "b"}; arcsine {"v"}; piecewise_poly {"coeffs": [...]}; uniform {}.
// "mass" defaults to 1, except for piecewise_poly where omitting it keeps the raw coefficients.
// The result must be a probability measure. Any malformed input raises a parse error.
MixtureMeasure parse_measure(const nlohmann::json& spec, const Tolerance& tol = {});

// Inline JSON text when `arg` starts with '{', "-" for stdin, otherwise a file path.
MixtureMeasure load_measure(const std::string& arg, const Tolerance& tol = {});

// Default tolerance, with rel (and abs = rel / 100) overridden by RENEWAL_TOL when set.
Tolerance tolerance_from_env();

}  // namespace geomix::cli
