#include "geomix/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "geomix/error.hpp"

namespace geomix {

std::optional<Edge> Edge::with_kernel_order(int order) const {
  if (order == 0) return *this;
  switch (kind) {
    case EdgeKind::power:
      if (exponent + order >= 1.0) return std::nullopt;
      return Edge::power(exponent + order);
    case EdgeKind::log_vanishing:
      if (order == 1) return Edge::critical();
      return order < 0 ? std::optional<Edge>(Edge::power(-order)) : std::nullopt;
    case EdgeKind::critical:
      return order < 0 ? std::optional<Edge>(Edge::power(-order - 1.0)) : std::nullopt;
  }
  return std::nullopt;
}

Edge Edge::times_d() const {
  switch (kind) {
    case EdgeKind::power: return Edge::power(exponent - 1.0);
    case EdgeKind::critical: return Edge::log_vanishing();
    case EdgeKind::log_vanishing: return Edge::power(-1.0);
  }
  return *this;
}

Edge Edge::times_d2() const {
  switch (kind) {
    case EdgeKind::power: return Edge::power(exponent - 2.0);
    case EdgeKind::critical: return Edge::power(-1.0);
    case EdgeKind::log_vanishing: return Edge::power(-2.0);
  }
  return *this;
}

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::argument: return "argument";
    case ErrorKind::domain: return "domain";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::integrability: return "integrability";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::bracket: return "bracket";
    case ErrorKind::range: return "range";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::precision: return "precision";
    case ErrorKind::degenerate: return "degenerate-model";
    case ErrorKind::parse: return "parse";
  }
  return "unknown";
}

namespace quad {

const GkTable& gk21() {
  static const GkTable table = [] {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
    using gauss = boost::math::quadrature::gauss<double, 10>;
    const auto& kx = kronrod::abscissa();
    const auto& kw = kronrod::weights();
    const auto& gw = gauss::weights();
    GkTable t{};
    for (int j = 0; j <= 10; ++j) {
      const double g = (j % 2 == 1) ? gw[(j - 1) / 2] : 0.0;
      t.node[10 + j] = kx[j];
      t.node[10 - j] = -kx[j];
      t.kronrod[10 + j] = t.kronrod[10 - j] = kw[j];
      t.gauss[10 + j] = t.gauss[10 - j] = g;
    }
    return t;
  }();
  return table;
}

}  // namespace quad
}  // namespace geomix
