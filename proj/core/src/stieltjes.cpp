#include "geomix/stieltjes.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace geomix {
namespace transform {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

int order_of(Kernel k) { return k == Kernel::cauchy ? 1 : 2; }

double kernel_value(Kernel k, double y, double diff) {
  switch (k) {
    case Kernel::cauchy: return 1.0 / diff;
    case Kernel::cauchy_sq: return 1.0 / (diff * diff);
    case Kernel::weighted_sq: return y / (diff * diff);
  }
  return 0;
}

}  // namespace

Target Target::in_piece(const MixtureMeasure& m, int k, double a, double b) {
  const DensityPiece& p = m.pieces().at(k);
  return {a <= b ? p.lo + a : p.hi - b, k, a, b};
}

double off_piece(const MixtureMeasure& m, const Target& t, Kernel k, const Tolerance& tol) {
  const DensityPiece* home = t.home >= 0 ? &m.pieces()[t.home] : nullptr;
  double total = 0;
  for (const Atom& at : m.atoms()) {
    double diff;
    if (home)
      diff = at.location <= home->lo ? -((home->lo - at.location) + t.a) : (at.location - home->hi) + t.b;
    else
      diff = at.location - t.w;
    if (diff == 0) fail(ErrorKind::singularity, "transform evaluated at an atom");
    total += at.mass * kernel_value(k, at.location, diff);
  }
  for (int j = 0; j < static_cast<int>(m.pieces().size()); ++j) {
    if (j == t.home) continue;
    const DensityPiece& p = m.pieces()[j];
    bool left;
    double D;
    if (home) {
      left = j < t.home;
      D = left ? (home->lo - p.hi) + t.a : (p.lo - home->hi) + t.b;
    } else {
      if (t.w > p.lo && t.w < p.hi) fail(ErrorKind::singularity, "real transform evaluated inside a density piece");
      left = p.hi <= t.w;
      D = left ? t.w - p.hi : p.lo - t.w;
    }
    // diff = y - w as a function of the offset from the end nearest to w.
    auto diff_of = [left, D](const PiecePoint& q) { return left ? -(D + q.from_hi) : D + q.from_lo; };
    if (D > 0) {
      quad::Grading g;
      (left ? g.hi_scale : g.lo_scale) = D;
      auto kern = [&](const PiecePoint& q) { return kernel_value(k, q.x, diff_of(q)); };
      total += quad::integrate_piece(p.frame(), p.lo_edge, p.hi_edge, p.density, kern, g, tol).value;
      continue;
    }
    // Target sits on the end of this piece: fold |diff|^order into the density.
    const int order = (k == Kernel::weighted_sq && t.w == 0.0) ? 1 : order_of(k);
    const Edge near = left ? p.hi_edge : p.lo_edge;
    const auto shifted = near.with_kernel_order(order);
    if (!shifted) {
      if (k == Kernel::cauchy) return left ? -inf : inf;
      return inf;
    }
    auto dens = [&](const PiecePoint& q) {
      return p.density(q) / std::pow(std::abs(diff_of(q)), order);
    };
    auto reg = [&](const PiecePoint& q) {
      switch (k) {
        case Kernel::cauchy: return left ? -1.0 : 1.0;
        case Kernel::cauchy_sq: return 1.0;
        case Kernel::weighted_sq: return order == 1 ? 1.0 : q.x;
      }
      return 0.0;
    };
    const Edge lo = left ? p.lo_edge : *shifted;
    const Edge hi = left ? *shifted : p.hi_edge;
    total += quad::integrate_piece(p.frame(), lo, hi, dens, reg, {}, tol).value;
  }
  return total;
}

double pv_home(const MixtureMeasure& m, const Target& t, const Tolerance& tol) {
  const DensityPiece& p = m.pieces().at(t.home);
  const double len = p.length();
  const bool from_lo = t.a <= t.b;
  const double a = from_lo ? t.a : t.b;   // distance to the nearer end
  const double b = from_lo ? t.b : t.a;   // distance to the farther end
  const Edge near_edge = from_lo ? p.lo_edge : p.hi_edge;
  const Edge far_edge = from_lo ? p.hi_edge : p.lo_edge;
  const double sigma = from_lo ? 1.0 : -1.0;
  // Points at distance d from the nearer end and e from the farther end.
  auto near_pt = [&](double d) { return from_lo ? PiecePoint{p.lo + d, d, len - d} : PiecePoint{p.hi - d, len - d, d}; };
  auto far_pt = [&](double e) { return from_lo ? PiecePoint{p.hi - e, len - e, e} : PiecePoint{p.lo + e, e, len - e}; };
  auto near_f = [&](double d) { return p.density(near_pt(d)); };
  auto far_f = [&](double e) { return p.density(far_pt(e)); };
  auto pt_at = [&](double u, double v) {  // offsets u from the nearer end, v from the farther
    return from_lo ? PiecePoint{p.lo + u, u, v} : PiecePoint{p.hi - u, v, u};
  };
  const Tolerance t4 = tol.scaled(0.25);
  const double r = 0.5 * a;
  const double half = 0.5 * len;
  // In near-end coordinates y - w = sigma * (d - a).
  double sum = quad::edge_segment(near_f, [&](double d) { return 1.0 / (d - a); }, r, near_edge, t4).value;
  auto sym = [&](double s) { return (p.density(pt_at(a + s, b - s)) - p.density(pt_at(a - s, b + s))) / s; };
  sum += quad::integrate(sym, 0.0, r, t4).value;
  double far_len;
  if (a + r < half) {
    sum += quad::log_segment(near_f, [&](double d) { return 1.0 / (d - a); }, a + r, half, t4).value;
    far_len = len - half;
  } else {
    far_len = b - r;
  }
  sum += quad::edge_segment(far_f, [&](double e) { return 1.0 / (b - e); }, far_len, far_edge, t4).value;
  return sigma * sum;
}

double hilbert_at(const MixtureMeasure& m, const Target& t, const Tolerance& tol) {
  double h = off_piece(m, t, Kernel::cauchy, tol);
  if (t.home >= 0) h += pv_home(m, t, tol);
  return h;
}

}  // namespace transform

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void refuse_near_support_points(const MixtureMeasure& m, double x) {
  constexpr double gap = 1e-8;
  for (const Atom& a : m.atoms())
    if (std::abs(x - a.location) < gap) fail(ErrorKind::singularity, "point " + fmt(x) + " is at an atom");
  for (const DensityPiece& p : m.pieces())
    if (std::abs(x - p.lo) < gap || std::abs(x - p.hi) < gap)
      fail(ErrorKind::singularity, "point " + fmt(x) + " is within 1e-8 of a piece end");
}

int piece_containing(const MixtureMeasure& m, double x) {
  for (int k = 0; k < static_cast<int>(m.pieces().size()); ++k)
    if (x > m.pieces()[k].lo && x < m.pieces()[k].hi) return k;
  return -1;
}

bool on_support(const MixtureMeasure& m, double x) {
  for (const Atom& a : m.atoms())
    if (a.location == x) return true;
  for (const DensityPiece& p : m.pieces())
    if (x >= p.lo && x <= p.hi) return true;
  return false;
}

// ∫ dm(y) / (y - z)^power for complex z.
cplx complex_transform(const MixtureMeasure& m, cplx z, int power, const Tolerance& tol) {
  const double x0 = z.real(), eta = z.imag();
  auto kern_of = [&](cplx diff) { return power == 1 ? 1.0 / diff : 1.0 / (diff * diff); };
  cplx total = 0;
  for (const Atom& a : m.atoms()) total += a.mass * kern_of(cplx(a.location - x0, -eta));
  for (const DensityPiece& p : m.pieces()) {
    const quad::PieceFrame fr = p.frame();
    if (x0 > p.lo && x0 < p.hi) {
      const double a = x0 - p.lo, b = p.hi - x0;
      auto kern = [&](const PiecePoint& q) {
        const double dx = (a <= b) ? q.from_lo - a : b - q.from_hi;
        return kern_of(cplx(dx, -eta));
      };
      total += quad::integrate_piece_focus(fr, p.lo_edge, p.hi_edge, p.density, kern, a, b, std::abs(eta), tol).value;
    } else {
      const bool left = p.hi <= x0;
      const double D = left ? x0 - p.hi : p.lo - x0;
      auto kern = [&](const PiecePoint& q) {
        const double dx = left ? -(D + q.from_hi) : D + q.from_lo;
        return kern_of(cplx(dx, -eta));
      };
      quad::Grading g;
      (left ? g.hi_scale : g.lo_scale) = std::hypot(D, eta);
      total += quad::integrate_piece(fr, p.lo_edge, p.hi_edge, p.density, kern, g, tol).value;
    }
  }
  return total;
}

}  // namespace

cplx stieltjes_eval(const MixtureMeasure& m, cplx z, const Tolerance& tol) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(ErrorKind::argument, "non-finite z");
  if (std::abs(z.imag()) < 1e-10) {
    if (on_support(m, z.real()))
      fail(ErrorKind::singularity, "z = " + fmt(z.real()) + " lies on the support");
    if (z.imag() == 0)
      return transform::off_piece(m, transform::Target::free(z.real()), transform::Kernel::cauchy, tol);
  }
  return complex_transform(m, z, 1, tol);
}

double hilbert(const MixtureMeasure& m, double x, const Tolerance& tol) {
  refuse_near_support_points(m, x);
  const int k = piece_containing(m, x);
  if (k < 0) return transform::off_piece(m, transform::Target::free(x), transform::Kernel::cauchy, tol);
  const DensityPiece& p = m.pieces()[k];
  return transform::hilbert_at(m, transform::Target::in_piece(m, k, x - p.lo, p.hi - x), tol);
}

BoundaryValue boundary(const MixtureMeasure& m, double x, const Tolerance& tol) {
  return {hilbert(m, x, tol), m.density(x)};
}

cplx stieltjes_derivative(const MixtureMeasure& m, cplx w, const Tolerance& tol) {
  if (std::abs(w.imag()) < 1e-10) {
    if (on_support(m, w.real()))
      fail(ErrorKind::singularity, "w = " + fmt(w.real()) + " lies on the support");
    if (w.imag() == 0)
      return transform::off_piece(m, transform::Target::free(w.real()), transform::Kernel::cauchy_sq, tol);
  }
  return complex_transform(m, w, 2, tol);
}

}  // namespace geomix
