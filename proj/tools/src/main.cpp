#include <iostream>

#include "CLI11.hpp"
#include "geomix_cli/commands.hpp"
#include "geomix_cli/spec_io.hpp"

using namespace geomix::cli;

namespace {

const char* kMeasureHelp = "Measure spec: inline JSON, a file path, or - for stdin";

const char* kSpecFooter =
    "Measure spec (JSON):\n"
    "  {\"domain\": \"unit\" | \"halfline\",\n"
    "   \"atoms\": [{\"x\": 0.25, \"mass\": 0.5}],\n"
    "   \"pieces\": [{\"lo\": 0, \"hi\": 1, \"family\": \"uniform\" | \"beta\" | \"arcsine\" | \"piecewise_poly\",\n"
    "               \"params\": {\"a\": 2, \"b\": 3} | {\"v\": 0.5} | {\"coeffs\": [1, 2]}, \"mass\": 1}]}\n"
    "The measure must have total mass 1. All quantities are dimensionless; N counts steps.\n"
    "Exit codes: 0 ok, 1 self-test failure, 2 usage or invalid input, 3 consistency failure,\n"
    "4 precision floor. RENEWAL_TOL sets the relative quadrature tolerance.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renewal, pinning and spectral computations for geometric and exponential mixtures"};
  app.footer(kSpecFooter);
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit JSON {summary, table} instead of CSV");

  InvoluteOptions inv;
  auto* c_inv = app.add_subcommand("involute", "Spectral measure nu of a unit-interval mixture (JSON report)");
  c_inv->add_option("-m,--measure", inv.measure, kMeasureHelp)->required();
  c_inv->add_option("--grid", inv.grid, "Density sample points (i + 1/2)/grid on (0, 1)")->capture_default_str();
  c_inv->footer(
      "Report keys: atoms [[x, mass]], density [[x, f_nu(x)]], atom_mass, total_mass,\n"
      "roundtrip_residual (largest atom or density gap between involute(involute(mu)) and mu).");

  RenewalOptions ren;
  auto* c_ren = app.add_subcommand("renewal", "Renewal probabilities P(N in tau) as moments of nu");
  c_ren->add_option("-m,--measure", ren.measure, kMeasureHelp)->required();
  c_ren->add_option("--n-max", ren.n_max, "Largest N")->capture_default_str();
  c_ren->add_flag("--oracle", ren.oracle, "Add the O(N^2) convolution recursion");
  c_ren->footer(
      "Columns: N, p_moment (P(N in tau) from nu), p_oracle and abs_diff with --oracle.\n"
      "Summary: limit (1/m_K, 0 when infinite), mean_interarrival (m_K), max_abs_diff.");

  PolymerOptions pol;
  auto* c_pol = app.add_subcommand("polymer", "Pinning model: free energy, contact fraction, Z_N");
  c_pol->add_option("-m,--measure", pol.measure, kMeasureHelp)->required();
  c_pol->add_option("--beta", pol.beta, "Pinning strength beta")->required();
  c_pol->add_option("--n-max", pol.n_max, "Largest N")->capture_default_str();
  c_pol->add_flag("--oracle", pol.oracle, "Add the recursion oracle in log space");
  c_pol->footer(
      "Columns: N, Z (Z_{N,beta} as a moment of nu_beta), log_Z, below_floor (1 when Z < 1e-300),\n"
      "log_Z_oracle and rel_diff with --oracle.\n"
      "Summary: beta, beta_c, free_energy F, contact_fraction F', x_beta = e^F, atoms of nu_beta.");

  CorrlenOptions cor;
  auto* c_cor = app.add_subcommand("corrlen", "Decay rate of P(N in tau(b)) - 1/m_{K_b} for the tilted law");
  c_cor->add_option("-m,--measure", cor.measure, kMeasureHelp)->required();
  c_cor->add_option("--b", cor.b, "Tilt b > 0 per step")->capture_default_str();
  c_cor->add_option("--window", cor.window, "N_hi, or N_lo N_hi (default N_lo = N_hi/4, N_hi = 200)")
      ->expected(1, 2);
  c_cor->footer(
      "Columns: N, transient (P(N in tau(b)) - 1/m_{K_b}), log_transient.\n"
      "Summary: slope and intercept of the least-squares fit, reference_slope (-b + log(1 - a) with\n"
      "a the bottom of the support), normalizer c(b), beta = -log c(b), mean_tilted m_{K_b}.");

  ContinuousOptions con;
  auto* c_con = app.add_subcommand("continuous", "Exponential-mixture renewal intensity H(x)");
  c_con->add_option("-m,--measure", con.measure, kMeasureHelp)->required();
  c_con->add_option("--x-grid", con.x_grid, "Comma-separated x values (default 0.1,0.25,0.5,1,2,5)")
      ->delimiter(',');
  c_con->add_flag("--oracle", con.oracle, "Add the truncated convolution series");
  c_con->add_option("--k-max", con.k_max, "Convolution terms kept by the oracle")->capture_default_str();
  c_con->footer(
      "Columns: x (time), f_eta (inter-arrival density), H (renewal intensity), and with --oracle\n"
      "H_oracle, abs_diff, tail_bound, flagged. Summary: atoms of nu, total_mass, limit (1/m_eta).");

  ArcsineOptions arc;
  auto* c_arc = app.add_subcommand("arcsine", "Closed forms for the generalized arcsine family");
  c_arc->add_option("--v", arc.v, "Exponent v in (0, 1)")->capture_default_str();
  c_arc->add_option("--beta", arc.beta, "Pinning strength beta")->capture_default_str();
  c_arc->add_option("--n-max", arc.n_max, "Largest N")->capture_default_str();
  c_arc->add_option("--grid", arc.grid, "Density samples of nu_{v,beta} on (0, 1)")->capture_default_str();
  c_arc->footer(
      "Columns: N, Z (Z_{N,beta,v}), Z_scaled (Z e^{-N F}, tends to c_atom for beta > 0).\n"
      "Summary: gamma, x_atom, c_atom, has_atom, free_energy, contact_fraction, density samples.");

  int only = 0;
  auto* c_self = app.add_subcommand("selftest", "Run the acceptance criteria; exit 0 iff all pass");
  c_self->add_option("--criterion", only, "Run a single criterion (1-11)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_self->parsed()) return cmd_selftest(only, std::cout) ? 0 : 1;
    const geomix::Tolerance tol = tolerance_from_env();
    if (c_inv->parsed()) {
      std::cout << cmd_involute(inv, tol).summary.dump(2) << "\n";
      return 0;
    }
    Report r;
    if (c_ren->parsed()) r = cmd_renewal(ren, tol);
    if (c_pol->parsed()) r = cmd_polymer(pol, tol);
    if (c_cor->parsed()) r = cmd_corrlen(cor, tol);
    if (c_con->parsed()) r = cmd_continuous(con, tol);
    if (c_arc->parsed()) r = cmd_arcsine(arc, tol);
    std::cout << render(r, as_json);
  } catch (const geomix::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.kind());
  }
  return 0;
}
