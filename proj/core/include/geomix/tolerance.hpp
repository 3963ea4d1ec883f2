#pragma once

namespace geomix {

// Quadrature targets. Every integration routine in the library takes one of these.
struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;
  int max_panels = 2000;

  Tolerance scaled(double factor) const {
    Tolerance t = *this;
    t.abs *= factor;
    return t;
  }
};

}  // namespace geomix
