#include "geomix/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geomix {

const char* to_string(Domain d) noexcept {
  switch (d) {
    case Domain::unit_interval: return "unit";
    case Domain::half_line: return "halfline";
    case Domain::real_line: return "real";
  }
  return "unknown";
}

namespace {

bool inside_domain(double x, Domain d) {
  if (!std::isfinite(x)) return false;
  switch (d) {
    case Domain::unit_interval: return x >= 0.0 && x <= 1.0;
    case Domain::half_line: return x >= 0.0;
    case Domain::real_line: return true;
  }
  return false;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

MixtureMeasure::MixtureMeasure(std::vector<Atom> atoms, std::vector<DensityPiece> pieces,
                               Domain domain, bool probability, const Tolerance& tol)
    : atoms_(std::move(atoms)), pieces_(std::move(pieces)), domain_(domain), probability_(probability) {
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!(a.mass > 0) || !std::isfinite(a.mass))
      fail(ErrorKind::argument, "atom mass must be positive and finite, got " + fmt(a.mass));
    if (!inside_domain(a.location, domain_))
      fail(ErrorKind::domain, "atom at " + fmt(a.location) + " lies outside the domain");
    if (i > 0 && !(a.location > atoms_[i - 1].location))
      fail(ErrorKind::argument, "atom locations must be strictly increasing");
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const DensityPiece& p = pieces_[i];
    if (!(p.lo < p.hi)) fail(ErrorKind::argument, "density piece needs lo < hi");
    if (!inside_domain(p.lo, domain_) || !inside_domain(p.hi, domain_))
      fail(ErrorKind::domain, "density piece [" + fmt(p.lo) + ", " + fmt(p.hi) + "] outside the domain");
    if (!p.density) fail(ErrorKind::argument, "density piece has no evaluator");
    if (!p.lo_edge.integrable() || !p.hi_edge.integrable())
      fail(ErrorKind::integrability, "density piece [" + fmt(p.lo) + ", " + fmt(p.hi) +
                                         "] has a non-integrable edge singularity");
    if (i > 0 && p.lo < pieces_[i - 1].hi) fail(ErrorKind::argument, "density pieces overlap or are unordered");
    for (const Atom& a : atoms_)
      if (a.location > p.lo && a.location < p.hi)
        fail(ErrorKind::argument, "atom at " + fmt(a.location) + " inside a density piece");
  }
  if (probability_) {
    const double m = total_mass(*this, tol);
    if (std::abs(m - 1.0) > 1e-10)
      fail(ErrorKind::argument, "probability measure has total mass " + fmt(m));
  }
}

double MixtureMeasure::atom_mass_at(double x) const {
  for (const Atom& a : atoms_)
    if (a.location == x) return a.mass;
  return 0.0;
}

double MixtureMeasure::density(double x) const {
  for (const DensityPiece& p : pieces_)
    if (x > p.lo && x < p.hi) return p.at(x);
  return 0.0;
}

double MixtureMeasure::support_min() const {
  double v = std::numeric_limits<double>::infinity();
  if (!atoms_.empty()) v = atoms_.front().location;
  if (!pieces_.empty()) v = std::min(v, pieces_.front().lo);
  return v;
}

double MixtureMeasure::support_max() const {
  double v = -std::numeric_limits<double>::infinity();
  if (!atoms_.empty()) v = atoms_.back().location;
  if (!pieces_.empty()) v = std::max(v, pieces_.back().hi);
  return v;
}

double piece_mass(const DensityPiece& p, const Tolerance& tol) {
  auto one = [](const PiecePoint&) { return 1.0; };
  return quad::integrate_piece(p.frame(), p.lo_edge, p.hi_edge, p.density, one, {}, tol).value;
}

double total_mass(const MixtureMeasure& m, const Tolerance& tol) {
  double s = 0;
  for (const Atom& a : m.atoms()) s += a.mass;
  for (const DensityPiece& p : m.pieces()) s += piece_mass(p, tol);
  return s;
}

MomentValue moment(const MixtureMeasure& m, int N, const Tolerance& tol) {
  if (N < 0) fail(ErrorKind::argument, "moment order must be nonnegative");
  if (N == 0) return {total_mass(m, tol), false};
  auto kern = [N](double x, double omx) {
    if (omx < 0.5 && omx > -0.5) return std::exp(N * std::log1p(-omx));
    return std::pow(x, N);
  };
  auto grader = [N](const DensityPiece& p) {
    quad::Grading g;
    if (N > 50 && p.hi > 0) g.hi_scale = p.hi / N;
    return g;
  };
  // With a negative support the integrand can change sign, so only a relative floor is used.
  MomentValue out{integrate_measure(m, kern, grader, tol), false};
  if (std::abs(out.value) < 1e-300) {
    out.value = 0;
    out.precision_loss = true;
  }
  return out;
}

double exp_moment(const MixtureMeasure& m, double x, const Tolerance& tol) {
  auto kern = [x](double s, double) { return std::exp(-x * s); };
  auto grader = [x](const DensityPiece& p) {
    quad::Grading g;
    if (x > 0) g.lo_scale = 1.0 / x;
    (void)p;
    return g;
  };
  return integrate_measure(m, kern, grader, tol);
}

double weighted_integral(const MixtureMeasure& m, Weight w, const Tolerance& tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (w == Weight::inv_1mx && m.domain() != Domain::unit_interval)
    fail(ErrorKind::domain, "1/(1-x) weight requires the unit-interval domain");
  double s = 0;
  for (const Atom& a : m.atoms()) {
    const double d = (w == Weight::inv_x) ? a.location : 1.0 - a.location;
    if (d == 0) return inf;
    s += a.mass / d;
  }
  for (const DensityPiece& p : m.pieces()) {
    const double top = 1.0 - p.hi;
    Edge lo = p.lo_edge, hi = p.hi_edge;
    if (w == Weight::inv_x && p.lo == 0) {
      auto e = p.lo_edge.with_kernel_order(1);
      if (!e) return inf;
      lo = *e;
    }
    if (w == Weight::inv_1mx && p.hi == 1) {
      auto e = p.hi_edge.with_kernel_order(1);
      if (!e) return inf;
      hi = *e;
    }
    auto dens = [&](const PiecePoint& q) {
      const double d = (w == Weight::inv_x) ? q.x : top + q.from_hi;
      return p.density(q) / d;
    };
    auto one = [](const PiecePoint&) { return 1.0; };
    s += quad::integrate_piece(p.frame(), lo, hi, dens, one, {}, tol).value;
  }
  return s;
}

double geometric_mixture_pmf(const MixtureMeasure& mu, int n, const Tolerance& tol) {
  if (n < 1) fail(ErrorKind::argument, "K(n) needs n >= 1");
  if (mu.domain() != Domain::unit_interval) fail(ErrorKind::domain, "K(n) needs a unit-interval measure");
  auto kern = [n](double x, double omx) {
    if (n == 1) return x;
    const double q = (x < 0.5) ? std::exp((n - 1) * std::log1p(-x)) : std::pow(omx, n - 1);
    return q * x;
  };
  auto grader = [n](const DensityPiece& p) {
    quad::Grading g;
    if (n > 50) g.lo_scale = (1.0 - p.lo) / n;
    return g;
  };
  return integrate_measure(mu, kern, grader, tol);
}

double defect(const MixtureMeasure& mu) { return mu.atom_mass_at(0.0); }

double mean_interarrival(const MixtureMeasure& mu, const Tolerance& tol) {
  if (defect(mu) > 0) return std::numeric_limits<double>::infinity();
  return weighted_integral(mu, Weight::inv_x, tol);
}

}  // namespace geomix
