#include "geomix_cli/commands.hpp"

#include <cmath>

#include "criteria.hpp"
#include "geomix/arcsine.hpp"
#include "geomix/expmix.hpp"
#include "geomix/involution.hpp"
#include "geomix/polymer.hpp"
#include "geomix/renewal.hpp"
#include "geomix_cli/spec_io.hpp"

namespace geomix::cli {

using nlohmann::json;

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::consistency:
    case ErrorKind::bracket:
    case ErrorKind::overflow:
      return 3;
    case ErrorKind::range:
    case ErrorKind::precision:
      return 4;
    default:
      return 2;
  }
}

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) fail(ErrorKind::argument, what);
}

json atom_list(const std::vector<Atom>& atoms) {
  json a = json::array();
  for (const Atom& at : atoms) a.push_back({num(at.location), num(at.mass)});
  return a;
}

// Largest atom or density discrepancy between `a` and the reference `b`.
double measure_distance(const MixtureMeasure& a, const MixtureMeasure& b, int grid) {
  double d = 0;
  std::vector<bool> used(a.atoms().size(), false);
  for (const Atom& x : b.atoms()) {
    double best = x.mass;
    for (std::size_t i = 0; i < a.atoms().size(); ++i)
      if (!used[i] && std::abs(a.atoms()[i].location - x.location) < 1e-6) {
        best = std::abs(a.atoms()[i].location - x.location) + std::abs(a.atoms()[i].mass - x.mass);
        used[i] = true;
        break;
      }
    d = std::max(d, best);
  }
  for (std::size_t i = 0; i < a.atoms().size(); ++i)
    if (!used[i]) d = std::max(d, a.atoms()[i].mass);
  for (int i = 0; i < grid; ++i) {
    const double x = (i + 0.5) / grid;
    d = std::max(d, std::abs(a.density(x) - b.density(x)));
  }
  return d;
}

json density_samples(const SpectralMeasure& nu, int grid) {
  json d = json::array();
  for (int i = 0; i < grid; ++i) {
    const double x = (i + 0.5) / grid;
    d.push_back({num(x), num(nu.density(x))});
  }
  return d;
}

}  // namespace

Report cmd_involute(const InvoluteOptions& o, const Tolerance& tol) {
  need(o.grid >= 1, "--grid must be at least 1");
  const MixtureMeasure mu = load_measure(o.measure, tol);
  const SpectralMeasure nu = involute(mu, tol);
  const SpectralMeasure back = involute(nu.measure(), tol);
  Report r;
  r.summary["atoms"] = atom_list(nu.atoms());
  r.summary["density"] = density_samples(nu, o.grid);
  r.summary["total_mass"] = num(nu.total_mass());
  r.summary["atom_mass"] = num(nu.atom_mass());
  r.summary["roundtrip_residual"] = num(measure_distance(back.measure(), mu, o.grid));
  return r;
}

Report cmd_renewal(const RenewalOptions& o, const Tolerance& tol) {
  need(o.n_max >= 0, "--n-max must be nonnegative");
  const MixtureMeasure mu = load_measure(o.measure, tol);
  const SpectralMeasure nu = involute(mu, tol);
  Report r;
  r.summary["limit"] = num(renewal_limit(mu, tol));
  r.summary["mean_interarrival"] = num(mean_interarrival(mu, tol));
  Table t;
  t.columns = {"N", "p_moment"};
  std::vector<double> u;
  if (o.oracle) {
    t.columns.insert(t.columns.end(), {"p_oracle", "abs_diff"});
    u = renewal_oracle(mu, o.n_max, tol);
  }
  double worst = 0;
  for (int N = 0; N <= o.n_max; ++N) {
    const double p = renewal_probability(nu, N);
    std::vector<double> row{double(N), p};
    if (o.oracle) {
      row.insert(row.end(), {u[N], std::abs(p - u[N])});
      worst = std::max(worst, std::abs(p - u[N]));
    }
    t.rows.push_back(std::move(row));
  }
  if (o.oracle) r.summary["max_abs_diff"] = num(worst);
  r.table = std::move(t);
  return r;
}

Report cmd_polymer(const PolymerOptions& o, const Tolerance& tol) {
  need(o.n_max >= 0, "--n-max must be nonnegative");
  const MixtureMeasure mu = load_measure(o.measure, tol);
  const PolymerState s = polymer_state(mu, o.beta, tol);
  Report r;
  r.summary["beta"] = num(s.beta);
  r.summary["beta_c"] = num(s.beta_c);
  r.summary["free_energy"] = num(s.free_energy);
  r.summary["contact_fraction"] = num(s.contact_fraction);
  r.summary["x_beta"] = num(s.x_beta);
  r.summary["atoms"] = atom_list(s.nu_beta->atoms());
  Table t;
  t.columns = {"N", "Z", "log_Z", "below_floor"};
  std::vector<double> lz;
  if (o.oracle) {
    t.columns.insert(t.columns.end(), {"log_Z_oracle", "rel_diff"});
    lz = partition_oracle_log(mu, o.beta, o.n_max, tol);
  }
  double worst = 0;
  for (int N = 0; N <= o.n_max; ++N) {
    const MomentValue z = partition_function(*s.nu_beta, N);
    std::vector<double> row{double(N), z.value, std::log(z.value), z.precision_loss ? 1.0 : 0.0};
    if (o.oracle) {
      const double rel = std::abs(std::expm1(std::log(z.value) - lz[N]));
      row.insert(row.end(), {lz[N], rel});
      if (!z.precision_loss) worst = std::max(worst, rel);
    }
    t.rows.push_back(std::move(row));
  }
  if (o.oracle) r.summary["max_rel_diff"] = num(worst);
  r.table = std::move(t);
  return r;
}

Report cmd_corrlen(const CorrlenOptions& o, const Tolerance& tol) {
  need(o.window.size() <= 2, "--window takes N_hi or N_lo N_hi");
  const int hi = o.window.empty() ? 200 : o.window.back();
  const int lo = o.window.size() == 2 ? o.window.front() : std::max(1, hi / 4);
  const MixtureMeasure mu = load_measure(o.measure, tol);
  const RenewalLaw law = tilted_law(mu, o.b, tol);
  const SpectralMeasure nu = nu_tilted(mu, o.b, tol);
  const DecayFit fit = decay_fit(nu, lo, hi);
  Report r;
  r.summary["b"] = num(o.b);
  r.summary["N_lo"] = lo;
  r.summary["N_hi"] = hi;
  r.summary["normalizer"] = num(law.normalizer);
  r.summary["beta"] = num(-std::log(law.normalizer));
  r.summary["mean_tilted"] = num(law.mean);
  r.summary["slope"] = num(fit.slope);
  r.summary["intercept"] = num(fit.intercept);
  r.summary["reference_slope"] = num(-o.b + std::log1p(-mu.support_min()));
  Table t;
  t.columns = {"N", "transient", "log_transient"};
  for (std::size_t i = 0; i < fit.N.size(); ++i)
    t.rows.push_back({double(fit.N[i]), std::exp(fit.log_transient[i]), fit.log_transient[i]});
  r.table = std::move(t);
  return r;
}

Report cmd_continuous(const ContinuousOptions& o, const Tolerance& tol) {
  const std::vector<double> xs = o.x_grid.empty() ? std::vector<double>{0.1, 0.25, 0.5, 1, 2, 5} : o.x_grid;
  for (double x : xs) need(x > 0, "--x-grid values must be positive");
  need(o.k_max >= 1, "--k-max must be at least 1");
  const MixtureMeasure mu = load_measure(o.measure, tol);
  const SpectralMeasure nu = nu_continuous(mu, tol);
  Report r;
  r.summary["atoms"] = atom_list(nu.atoms());
  r.summary["total_mass"] = num(nu.total_mass());
  r.summary["limit"] = num(nu.measure().atom_mass_at(0.0));
  Table t;
  t.columns = {"x", "f_eta", "H"};
  std::vector<OracleValue> ov;
  if (o.oracle) {
    t.columns.insert(t.columns.end(), {"H_oracle", "abs_diff", "tail_bound", "flagged"});
    ov = intensity_oracle(mu, xs, o.k_max, tol);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double h = intensity(nu, xs[i]);
    std::vector<double> row{xs[i], interarrival_density(mu, xs[i], tol), h};
    if (o.oracle) row.insert(row.end(), {ov[i].value, std::abs(h - ov[i].value), ov[i].tail_bound, ov[i].flagged ? 1.0 : 0.0});
    t.rows.push_back(std::move(row));
  }
  r.table = std::move(t);
  return r;
}

Report cmd_arcsine(const ArcsineOptions& o, const Tolerance& tol) {
  need(o.n_max >= 0, "--n-max must be nonnegative");
  need(o.grid >= 0, "--grid must be nonnegative");
  need(o.v > 0 && o.v < 1, "--v must lie in (0, 1)");
  const ArcsineParams p = arcsine_params(o.v, o.beta);
  const SpectralMeasure nu = nu_v_beta(o.v, o.beta, tol);
  const double F = free_energy_arcsine(o.v, o.beta);
  Report r;
  r.summary["v"] = num(o.v);
  r.summary["beta"] = num(o.beta);
  r.summary["has_atom"] = p.has_atom;
  r.summary["gamma"] = num(p.gamma);
  r.summary["x_atom"] = num(p.x_atom);
  r.summary["c_atom"] = num(p.c_atom);
  r.summary["free_energy"] = num(F);
  r.summary["contact_fraction"] = num(contact_arcsine(o.v, o.beta));
  if (o.grid > 0) r.summary["density"] = density_samples(nu, o.grid);
  Table t;
  t.columns = {"N", "Z", "Z_scaled"};
  for (int N = 0; N <= o.n_max; ++N) {
    const double z = nu.moment(N).value;
    t.rows.push_back({double(N), z, z * std::exp(-N * F)});
  }
  r.table = std::move(t);
  return r;
}

bool cmd_selftest(int only, std::ostream& out) {
  bool all = true;
  for (int id : acceptance::ids()) {
    if (only != 0 && id != only) continue;
    const acceptance::Result res = acceptance::run(id);
    out << acceptance::format(res) << std::endl;
    all = all && res.pass;
  }
  return all;
}

}  // namespace geomix::cli
