#include "geomix/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>

#include "geomix/stieltjes.hpp"

namespace geomix {

const char* to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::involution: return "involution";
    case Provenance::polymer: return "polymer";
    case Provenance::tilted: return "tilted";
    case Provenance::continuous: return "continuous";
    case Provenance::closed_form: return "closed_form";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------------------
// Cached rule for the absolutely continuous part.

namespace {

enum class MapKind { plain, power, critical, log };

struct Segment {
  const DensityPiece* piece;
  bool from_hi;
  MapKind kind;
  double k = 1;    // power map exponent
  double len = 0;  // critical map scale
  double t0, t1;

  PiecePoint point(double d) const {
    const quad::PieceFrame fr = piece->frame();
    return from_hi ? fr.from_hi(d) : fr.from_lo(d);
  }
  // Offset and Jacobian for parameter t.
  std::pair<double, double> map(double t) const {
    switch (kind) {
      case MapKind::plain: return {t, 1.0};
      case MapKind::power: {
        const double d = std::pow(t, k);
        return {d, t > 0 ? k * d / t : 0.0};
      }
      case MapKind::critical: {
        const double d = len * std::exp(1.0 - 1.0 / t);
        return {d, d / (t * t)};
      }
      case MapKind::log: {
        const double d = std::exp(t);
        return {d, d};
      }
    }
    return {t, 1.0};
  }
};

struct RulePanel {
  int seg;
  double a, b;
  std::array<double, 21> x{}, w{};
  std::vector<double> value, err;
};

class RuleBuilder {
 public:
  // With resolvent set, Poisson kernels of width eta centred on a grid over the support are
  // added as probes so that Cauchy kernels at distance >= eta from the axis are resolved.
  RuleBuilder(const MixtureMeasure& m, const Tolerance& tol, double eta = 0) : m_(m), tol_(tol) {
    if (m.domain() == Domain::half_line) {
      for (double t : {0.0, 0.1, 0.3, 1.0, 3.0, 10.0}) rates_.push_back(t);
    } else {
      scale_ = 0;
      for (const DensityPiece& p : m.pieces()) scale_ = std::max({scale_, std::abs(p.lo), std::abs(p.hi)});
      for (int n : {0, 1, 4, 16, 64, 256, 1024, 4096}) orders_.push_back(n);
    }
    if (eta > 0) {
      eta_ = eta;
      for (const DensityPiece& p : m.pieces())
        for (double c = p.lo; c <= p.hi + 0.5 * eta; c += 0.5 * eta) centres_.push_back(c);
    }
  }

  std::vector<SpectralMeasure::Node> build() {
    std::vector<SpectralMeasure::Node> nodes;
    for (const DensityPiece& p : m_.pieces()) add_piece(p, nodes);
    for (std::size_t s = 0; s < segs_.size(); ++s) panels_.push_back(eval(static_cast<int>(s), segs_[s].t0, segs_[s].t1));
    refine();
    for (const RulePanel& pn : panels_)
      for (int i = 0; i < 21; ++i)
        if (pn.w[i] != 0) nodes.push_back({pn.x[i], pn.w[i]});
    std::sort(nodes.begin(), nodes.end(), [](const auto& u, const auto& v) { return u.x < v.x; });
    return nodes;
  }

 private:
  std::size_t base_probes() const { return rates_.empty() ? orders_.size() : rates_.size(); }
  std::size_t probes() const { return base_probes() + centres_.size(); }

  double probe(std::size_t j, double x) const {
    if (j >= base_probes()) {
      const double u = (x - centres_[j - base_probes()]) / eta_;
      return 1.0 / (1.0 + u * u);
    }
    if (!rates_.empty()) return std::exp(-rates_[j] * x);
    if (orders_[j] == 0) return 1.0;
    return std::pow(std::abs(x) / scale_, orders_[j]);
  }

  void add_side(const DensityPiece& p, bool from_hi, std::vector<SpectralMeasure::Node>& nodes) {
    const double half = 0.5 * p.length();
    const Edge e = from_hi ? p.hi_edge : p.lo_edge;
    Segment s{&p, from_hi, MapKind::plain, 1, 0, 0, half};
    if (e.kind == EdgeKind::power && e.exponent > 0) {
      s.kind = MapKind::power;
      s.k = 1 / (1 - e.exponent);
      s.t1 = std::pow(half, 1 - e.exponent);
    } else if (e.kind == EdgeKind::critical) {
      const double cut = 1e-12 * half;
      const double tail = quad::critical_tail([&](double d) { return p.density(s.point(d)); }, cut);
      if (tail > 0) nodes.push_back({s.point(0).x, tail});
      s.kind = MapKind::critical;
      s.len = half;
      s.t0 = 1.0 / (1.0 - std::log(cut / half));
      s.t1 = 1.0;
    }
    segs_.push_back(s);
  }

  void add_piece(const DensityPiece& p, std::vector<SpectralMeasure::Node>& nodes) {
    add_side(p, false, nodes);
    add_side(p, true, nodes);
  }

  RulePanel eval(int seg, double a, double b) const {
    const Segment& s = segs_[seg];
    const quad::GkTable& t = quad::gk21();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    RulePanel pn;
    pn.seg = seg;
    pn.a = a;
    pn.b = b;
    std::array<double, 21> v{};
    for (int i = 0; i < 21; ++i) {
      auto [d, jac] = s.map(c + h * t.node[i]);
      const PiecePoint q = s.point(d);
      pn.x[i] = q.x;
      v[i] = (d > 0 && jac > 0) ? s.piece->density(q) * jac : 0.0;
      if (!std::isfinite(v[i])) v[i] = 0.0;
      pn.w[i] = t.kronrod[i] * h * v[i];
    }
    const std::size_t np = probes();
    pn.value.resize(np);
    pn.err.resize(np);
    for (std::size_t j = 0; j < np; ++j) {
      std::array<double, 21> f{};
      double k = 0, g = 0;
      for (int i = 0; i < 21; ++i) {
        f[i] = v[i] * probe(j, pn.x[i]);
        k += t.kronrod[i] * f[i];
        g += t.gauss[i] * f[i];
      }
      double resasc = 0;
      for (int i = 0; i < 21; ++i) resasc += t.kronrod[i] * std::abs(f[i] - 0.5 * k);
      double err = std::abs(k - g) * h;
      resasc *= h;
      if (resasc != 0 && err != 0) err = resasc * std::min(1.0, std::pow(200 * err / resasc, 1.5));
      pn.value[j] = k * h;
      pn.err[j] = std::isfinite(err) ? err : 1e300;
    }
    return pn;
  }

  // Batched refinement: each round bisects the worst tenth of the panels, ranked by their
  // largest error share over all probes.
  void refine() {
    const std::size_t np = probes();
    const std::size_t cap = static_cast<std::size_t>(std::max(tol_.max_panels, 4000));
    std::vector<double> target(np), score;
    std::vector<std::size_t> order;
    while (panels_.size() < cap) {
      std::vector<double> total(np, 0.0), err(np, 0.0);
      for (const RulePanel& pn : panels_)
        for (std::size_t j = 0; j < np; ++j) {
          total[j] += pn.value[j];
          err[j] += pn.err[j];
        }
      bool done = true;
      for (std::size_t j = 0; j < np; ++j) {
        const double floor = j < base_probes() ? std::abs(total[0]) : 0.0;
        target[j] = std::max(0.1 * tol_.rel * std::abs(total[j]), 0.01 * tol_.abs * floor);
        target[j] = std::max(target[j], 1e-300);
        if (err[j] > target[j]) done = false;
      }
      if (done) return;
      score.assign(panels_.size(), 0.0);
      for (std::size_t i = 0; i < panels_.size(); ++i)
        for (std::size_t j = 0; j < np; ++j) score[i] = std::max(score[i], panels_[i].err[j] / target[j]);
      order.resize(panels_.size());
      std::iota(order.begin(), order.end(), 0);
      const std::size_t batch = std::min(std::max<std::size_t>(1, panels_.size() / 10), cap - panels_.size());
      std::partial_sort(order.begin(), order.begin() + batch, order.end(),
                        [&](std::size_t u, std::size_t v) { return score[u] > score[v]; });
      bool split = false;
      for (std::size_t k = 0; k < batch; ++k) {
        const std::size_t i = order[k];
        if (score[i] <= 0) break;
        const RulePanel old = panels_[i];
        const double mid = 0.5 * (old.a + old.b);
        if (!(mid > old.a && mid < old.b)) continue;
        panels_[i] = eval(old.seg, old.a, mid);
        panels_.push_back(eval(old.seg, mid, old.b));
        split = true;
      }
      if (!split) return;
    }
  }

  const MixtureMeasure& m_;
  Tolerance tol_;
  double scale_ = 1;
  double eta_ = 0;
  std::vector<double> centres_;
  std::vector<int> orders_;
  std::vector<double> rates_;
  std::vector<Segment> segs_;
  std::vector<RulePanel> panels_;
};

}  // namespace

struct SpectralMeasure::Cache {
  std::once_flag once;
  std::vector<Node> rule;
  double ac_mass = 0;
  std::once_flag resolvent_once;
  std::vector<Node> resolvent_rule;
};

SpectralMeasure::SpectralMeasure(MixtureMeasure measure, Provenance provenance, const Tolerance& tol)
    : measure_(std::move(measure)), provenance_(provenance), tol_(tol), cache_(std::make_shared<Cache>()) {}

const std::vector<SpectralMeasure::Node>& SpectralMeasure::rule() const {
  std::call_once(cache_->once, [this] {
    cache_->rule = RuleBuilder(measure_, tol_).build();
    double s = 0;
    for (const Node& n : cache_->rule) s += n.w;
    cache_->ac_mass = s;
  });
  return cache_->rule;
}

double SpectralMeasure::atom_mass() const {
  double s = 0;
  for (const Atom& a : atoms()) s += a.mass;
  return s;
}

double SpectralMeasure::ac_mass() const {
  rule();
  return cache_->ac_mass;
}

namespace {

MomentValue floor_moment(double v) {
  if (std::abs(v) < 1e-300) return {0.0, true};
  return {v, false};
}

}  // namespace

MomentValue SpectralMeasure::moment(int N) const {
  if (N < 0) fail(ErrorKind::argument, "moment order must be nonnegative");
  double s = 0;
  for (const Atom& a : atoms()) s += a.mass * std::pow(a.location, N);
  for (const Node& n : rule()) s += n.w * std::pow(n.x, N);
  return floor_moment(s);
}

MomentValue SpectralMeasure::transient_moment(int N) const {
  if (N < 0) fail(ErrorKind::argument, "moment order must be nonnegative");
  double s = 0;
  for (const Atom& a : atoms())
    if (a.location != 1.0) s += a.mass * std::pow(a.location, N);
  for (const Node& n : rule()) s += n.w * std::pow(n.x, N);
  return floor_moment(s);
}

cplx SpectralMeasure::stieltjes(cplx z) const {
  if (std::abs(z.imag()) < rule_min_imag) return stieltjes_eval(measure_, z, tol_);
  cplx s = 0;
  for (const Atom& a : atoms()) s += a.mass / (a.location - z);
  if (pieces().empty()) return s;
  std::call_once(cache_->resolvent_once,
                 [this] { cache_->resolvent_rule = RuleBuilder(measure_, tol_, rule_min_imag).build(); });
  for (const Node& n : cache_->resolvent_rule) s += n.w / (n.x - z);
  return s;
}

double SpectralMeasure::exp_moment(double x) const {
  double s = 0;
  for (const Atom& a : atoms()) s += a.mass * std::exp(-x * a.location);
  for (const Node& n : rule()) s += n.w * std::exp(-x * n.x);
  return s;
}

// ---------------------------------------------------------------------------------------
// Edge bookkeeping.

namespace {
constexpr double exponent_eps = 1e-12;
}

Edge touching_edge_rule(Edge e) {
  switch (e.kind) {
    case EdgeKind::power:
      if (e.exponent > exponent_eps) return Edge::power(1 - e.exponent);
      if (e.exponent < -exponent_eps) return Edge::power(1 + e.exponent);
      return Edge::critical();
    case EdgeKind::critical: return Edge::power(0.0);
    case EdgeKind::log_vanishing: return Edge::critical();
  }
  return e;
}

Edge interior_edge_rule(Edge e) {
  switch (e.kind) {
    case EdgeKind::power:
      if (e.exponent > exponent_eps) return Edge::power(-e.exponent);
      if (e.exponent < -exponent_eps) return Edge::power(e.exponent);
      return Edge::log_vanishing();
    case EdgeKind::critical: return Edge::power(-1.0);
    case EdgeKind::log_vanishing: return Edge::log_vanishing();
  }
  return e;
}

// ---------------------------------------------------------------------------------------
// The map mu -> nu_beta.

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

struct Component {
  double lo, hi;
  bool atom;
  Edge lo_edge, hi_edge;
};

struct Engine {
  MixtureMeasure mu_pos;  // mu without its atom at 0
  double delta = 0;
  double eb = 1, em1 = 0;
  Tolerance tol;

  // g(w) = e^beta w s_mu(w) + e^beta - 1 for real w off the support of mu_pos.
  double g(double w) const {
    const double s = transform::off_piece(mu_pos, transform::Target::free(w), transform::Kernel::cauchy, tol);
    return eb * (w * s - delta) + em1;
  }
  double g_prime(double w) const {
    return eb * transform::off_piece(mu_pos, transform::Target::free(w), transform::Kernel::weighted_sq, tol);
  }
};

double bisect_increasing(const Engine& e, double lo, double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double v = e.g(mid);
    if (v == 0) return mid;
    (v < 0 ? lo : hi) = mid;
    if (hi - lo < 1e-16 * std::max(std::abs(mid), 1e-300)) break;
  }
  return 0.5 * (lo + hi);
}

std::vector<Component> components(const MixtureMeasure& m) {
  std::vector<Component> c;
  for (const Atom& a : m.atoms()) c.push_back({a.location, a.location, true, {}, {}});
  for (const DensityPiece& p : m.pieces()) c.push_back({p.lo, p.hi, false, p.lo_edge, p.hi_edge});
  std::sort(c.begin(), c.end(), [](const auto& u, const auto& v) { return u.lo < v.lo; });
  return c;
}

std::shared_ptr<Engine> make_engine(const MixtureMeasure& mu, double beta, const Tolerance& tol) {
  if (mu.domain() != Domain::unit_interval) fail(ErrorKind::domain, "spectral map needs a measure on [0, 1]");
  if (!std::isfinite(beta)) fail(ErrorKind::argument, "beta must be finite");
  const double mass = total_mass(mu, tol);
  if (std::abs(mass - 1) > 1e-9) fail(ErrorKind::argument, "input must be a probability measure, mass " + fmt(mass));
  auto eng = std::make_shared<Engine>();
  eng->delta = defect(mu);
  std::vector<Atom> atoms;
  for (const Atom& a : mu.atoms())
    if (a.location != 0.0) atoms.push_back(a);
  eng->mu_pos = MixtureMeasure(std::move(atoms), mu.pieces(), Domain::unit_interval);
  if (eng->mu_pos.empty()) fail(ErrorKind::degenerate, "measure is concentrated at 0");
  eng->eb = std::exp(beta);
  eng->em1 = std::expm1(beta);
  eng->tol = tol;
  return eng;
}

// Root of z -> g(1 - z) on (1, inf); g(0) > 0 and g decreases to -1.
double find_super_root(const Engine& E) {
  double zlo = 1, zhi = 2;
  while (E.g(1 - zhi) >= 0) {
    zlo = zhi;
    zhi *= 2;
    if (zhi > 1e9) fail(ErrorKind::overflow, "root bracket for the free energy exceeds 1e9");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (zlo + zhi);
    if (!(mid > zlo && mid < zhi)) break;
    (E.g(1 - mid) > 0 ? zlo : zhi) = mid;
  }
  return 0.5 * (zlo + zhi);
}

}  // namespace

SuperRoot super_critical_root(const MixtureMeasure& mu, double beta, const Tolerance& tol) {
  auto eng = make_engine(mu, beta, tol);
  const double g0 = eng->em1 - eng->eb * eng->delta;
  if (g0 <= 1e-12) return {};
  const double z = find_super_root(*eng);
  return {z, 1 / (z * eng->g_prime(1 - z))};
}

SpectralResult spectral_map(const MixtureMeasure& mu, const SpectralParams& params, const Tolerance& tol) {
  if (!(params.scale > 0)) fail(ErrorKind::argument, "scale must be positive");
  auto eng = make_engine(mu, params.beta, tol);
  const Engine& E = *eng;
  const double scale = params.scale;

  SpectralResult res;
  res.beta_gap = E.em1 - E.eb * E.delta;
  const double g0 = res.beta_gap;
  const bool critical = std::abs(g0) <= 1e-12;

  std::vector<Atom> atoms;
  auto add_atom = [&](double z, double m, bool gap) {
    // A root pinned to a gap end where g' diverges carries no mass.
    if (gap && m == 0) return;
    if (!(m > 0) || !std::isfinite(m))
      fail(ErrorKind::consistency, "non-positive residue mass " + fmt(m) + " at " + fmt(z));
    if (std::abs(z - 1) < 1e-10) z = 1;
    if (std::abs(z) < 1e-10) z = 0;
    atoms.push_back({scale * z, m});
    if (gap) res.gap_atoms.push_back({scale * z, m});
  };

  // Finite limit of g at a support end, or +-inf when the end is an atom or an unbounded edge.
  auto limit_at = [&](double w, bool atom, Edge edge, bool from_left) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (atom || edge.unbounded()) return from_left ? -inf : inf;
    return E.g(w);
  };

  const std::vector<Component> comps = components(E.mu_pos);
  // A finite edge limit that vanishes puts the root on the edge itself: the output atom sits
  // at the end of a reflected piece. Its mass is 0 when g' diverges there.
  constexpr double edge_root = 1e-9;
  auto edge_atom = [&](double w) {
    const double m = 1 / ((1 - w) * E.g_prime(w));
    if (m > 0 && std::isfinite(m)) add_atom(1 - w, m, true);
  };
  // Gap before the first component: left limit of g is g0.
  if (!critical && g0 < 0 && comps.front().lo > 0) {
    const Component& c = comps.front();
    const double gr = limit_at(c.lo, c.atom, c.lo_edge, false);
    if (std::abs(gr) <= edge_root) {
      edge_atom(c.lo);
    } else if (gr > 0) {
      const double w = bisect_increasing(E, 0.0, c.lo);
      add_atom(1 - w, 1 / ((1 - w) * E.g_prime(w)), true);
    }
  }
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) {
    const Component& l = comps[i];
    const Component& r = comps[i + 1];
    if (!(r.lo > l.hi)) continue;
    const double gl = limit_at(l.hi, l.atom, l.hi_edge, true);
    const double gr = limit_at(r.lo, r.atom, r.lo_edge, false);
    if (std::abs(gl) <= edge_root) {
      edge_atom(l.hi);
    } else if (std::abs(gr) <= edge_root) {
      edge_atom(r.lo);
    } else if (gl < 0 && gr > 0) {
      const double w = bisect_increasing(E, l.hi, r.lo);
      const double m = 1 / ((1 - w) * E.g_prime(w));
      // A root stuck on a bounded gap end is the vanishing edge of a density, not an atom.
      const bool at_end = (std::isfinite(gl) && w - l.hi < 1e-9) || (std::isfinite(gr) && r.lo - w < 1e-9);
      if (!(at_end && m < 1e-10)) add_atom(1 - w, m, true);
    }
  }

  // Atom at z = 0.
  {
    const double I = weighted_integral(mu, Weight::inv_1mx, tol);
    if (std::isfinite(I)) add_atom(0.0, 1 / (E.eb * I - E.em1), false);
  }
  // Atom at z = 1, or the super-critical root beyond it.
  if (critical) {
    const double m_inv = E.eb * weighted_integral(E.mu_pos, Weight::inv_x, tol);
    if (std::isfinite(m_inv)) add_atom(1.0, 1 / m_inv, false);
  } else if (g0 > 0) {
    const double z = find_super_root(E);
    const double m = 1 / (z * E.g_prime(1 - z));
    res.super_root = z;
    res.super_mass = m;
    if (!(m > 0) || !std::isfinite(m)) fail(ErrorKind::consistency, "non-positive mass at the super-critical root");
    double x = scale * z;
    if (params.snap_super_root) {
      if (std::abs(x - 1) > 1e-8) fail(ErrorKind::consistency, "tilted atom at " + fmt(x) + " instead of 1");
      x = 1;
    }
    atoms.push_back({x, m});
  }
  // No root for z < 0: g stays below -1 there.
  if (E.g(2.0) >= 0) fail(ErrorKind::consistency, "denominator changes sign on the negative axis");

  // Absolutely continuous part on the reflected pieces.
  std::vector<DensityPiece> pieces;
  const auto& mp = E.mu_pos.pieces();
  for (int k = static_cast<int>(mp.size()) - 1; k >= 0; --k) {
    const DensityPiece& p = mp[k];
    DensityPiece q;
    q.lo = scale * (1 - p.hi);
    q.hi = scale * (1 - p.lo);
    q.family = "spectral";
    const double top = 1 - p.hi, bottom = 1 - p.lo;
    q.density = [eng, k, scale, top, bottom](const PiecePoint& pt) {
      const Engine& E = *eng;
      const double dl = pt.from_lo / scale, dr = pt.from_hi / scale;
      const DensityPiece& mp = E.mu_pos.pieces()[k];
      const auto t = transform::Target::in_piece(E.mu_pos, k, dr, dl);
      const double f = mp.density({t.w, dr, dl});
      if (!(f > 0)) return 0.0;
      const double H = transform::hilbert_at(E.mu_pos, t, E.tol);
      const double z = dl <= dr ? top + dl : bottom - dr;
      const double R = E.eb * (t.w * H - E.delta) + E.em1;
      const double I = E.eb * t.w * M_PI * f;
      return E.eb * t.w * f / (z * (R * R + I * I)) / scale;
    };
    // nu's lower end comes from mu's upper end and vice versa.
    if (p.hi == 1.0)
      q.lo_edge = E.mu_pos.atom_mass_at(1.0) > 0 ? p.hi_edge.times_d() : touching_edge_rule(p.hi_edge);
    else
      q.lo_edge = E.mu_pos.atom_mass_at(p.hi) > 0 ? p.hi_edge.times_d2() : interior_edge_rule(p.hi_edge);
    if (p.lo == 0.0)
      q.hi_edge = critical ? touching_edge_rule(p.lo_edge) : p.lo_edge.times_d();
    else
      q.hi_edge = E.mu_pos.atom_mass_at(p.lo) > 0 ? p.lo_edge.times_d2() : interior_edge_rule(p.lo_edge);
    pieces.push_back(std::move(q));
  }

  std::sort(atoms.begin(), atoms.end(), [](const auto& u, const auto& v) { return u.location < v.location; });
  std::sort(res.gap_atoms.begin(), res.gap_atoms.end(), [](const auto& u, const auto& v) { return u.location < v.location; });
  bool in_unit = true;
  for (const Atom& a : atoms) in_unit = in_unit && a.location >= 0 && a.location <= 1;
  MixtureMeasure nu(std::move(atoms), std::move(pieces), in_unit ? Domain::unit_interval : Domain::real_line);

  double total = 0;
  for (const Atom& a : nu.atoms()) total += a.mass;
  for (const DensityPiece& p : nu.pieces()) total += piece_mass(p, tol);
  const double allowed = nu.pieces().empty() ? 1e-8 : 1e-6;
  if (!(std::abs(total - 1) <= allowed))
    fail(ErrorKind::consistency, "spectral measure has total mass " + fmt(total));

  res.nu = std::make_shared<const SpectralMeasure>(std::move(nu), params.provenance, tol);
  return res;
}

}  // namespace geomix
