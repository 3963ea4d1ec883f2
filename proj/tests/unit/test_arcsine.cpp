#include <cmath>

#include "check.hpp"
#include "geomix/arcsine.hpp"
#include "geomix/polymer.hpp"
#include "oracles.hpp"

using namespace geomix;
namespace t = geomix::testing;

TEST_CASE("arcsine law") {
  const MixtureMeasure m = mu_v(0.5);
  CHECK_NEAR(total_mass(m), 1.0, 1e-13);
  CHECK_NEAR(m.density(0.5), 2 / M_PI, 1e-15);
  CHECK_NEAR(m.density(0.1), 1 / (M_PI * std::sqrt(0.09)), 1e-14);
  for (double v : {0.0, 1.0, -0.2, 1.5}) CHECK_ERROR_KIND(mu_v(v), ErrorKind::argument);
}

TEST_CASE("inter-arrival pmf") {
  CHECK_NEAR(K_v_pmf(0.5, 1), 0.5, 1e-15);
  CHECK_NEAR(K_v_pmf(0.5, 2), 0.125, 1e-15);
  for (double v : {0.25, 0.5, 0.75}) {
    for (int n : {1, 2, 5, 40}) CHECK_NEAR(K_v_pmf(v, n), geometric_mixture_pmf(mu_v(v), n), 1e-10);
    const double lim = std::sin(M_PI * v) * std::tgamma(2 - v) / M_PI;
    const int n = 1000000;
    CHECK(std::abs(K_v_pmf(v, n) * std::pow(n, 2 - v) / lim - 1) < 1e-5);
    CHECK(std::isfinite(K_v_pmf(v, 400)));
  }
}

TEST_CASE("boundary values") {
  for (double x = 0.05; x < 1; x += 0.1) CHECK(std::abs(stieltjes_mu_v_boundary(0.5, x).hilbert) < 1e-15);
  const BoundaryValue out = stieltjes_mu_v_boundary(0.5, 2.0);
  // s(-1) = ∫ dmu/(y + 1) is positive.
  CHECK_NEAR(out.hilbert, 0.5 * std::pow(0.5, -0.5), 1e-15);
  CHECK(out.density == 0);
  for (double v : {0.25, 0.5, 0.75})
    for (int i = 1; i <= 20; ++i) {
      const double x = i / 21.0;
      const BoundaryValue a = stieltjes_mu_v_boundary(v, x), b = boundary(mu_v(v), 1 - x);
      CHECK_NEAR(a.hilbert, b.hilbert, 1e-7);
      CHECK_NEAR(a.density, b.density, 1e-7);
    }
  CHECK_ERROR_KIND(stieltjes_mu_v_boundary(0.5, 0.0), ErrorKind::singularity);
  CHECK_ERROR_KIND(stieltjes_mu_v_boundary(0.5, 1.0), ErrorKind::singularity);
  // Closed-form transform against quadrature.
  for (const cplx z : {cplx(0.3, 0.2), cplx(-1, 0.5), cplx(2, 1e-3), cplx(0.5, -0.4)})
    CHECK(std::abs(stieltjes_mu_v(0.3, z) - stieltjes_eval(mu_v(0.3), z)) < 1e-10);
}

TEST_CASE("pinned measures") {
  const ArcsineParams p = arcsine_params(0.5, std::log(2.0));
  CHECK(p.has_atom);
  CHECK_NEAR(p.gamma, 0.25, 1e-15);
  CHECK_NEAR(p.x_atom, 4.0 / 3.0, 1e-15);
  CHECK_NEAR(p.c_atom, 2.0 / 3.0, 1e-15);
  CHECK_FALSE(arcsine_params(0.5, 0.0).has_atom);
  for (double v : {0.25, 0.5, 0.75})
    for (double beta : {-1.0, 0.0, 0.5, std::log(2.0), 2.0}) {
      const SpectralMeasure nu = nu_v_beta(v, beta);
      CHECK_NEAR(nu.total_mass(), 1.0, 1e-9);
      CHECK(nu.atoms().size() == (beta > 0 ? 1u : 0u));
      const SpectralMeasure num = nu_beta(mu_v(v), beta);
      REQUIRE(num.atoms().size() == nu.atoms().size());
      if (beta > 0) {
        CHECK_NEAR(num.atoms()[0].location, nu.atoms()[0].location, 1e-8);
        CHECK_NEAR(num.atoms()[0].mass, nu.atoms()[0].mass, 1e-8);
      }
      for (int i = 1; i <= 10; ++i) {
        const double x = i / 11.0;
        CHECK(std::abs(num.density(x) - nu.density(x)) <= 1e-6 * std::max(1.0, nu.density(x)));
      }
    }
  for (int i = 1; i <= 20; ++i) CHECK_NEAR(f_v_beta(0.3, 0.0, i / 21.0), mu_v(0.3).density(i / 21.0), 1e-12);
}

TEST_CASE("v = 1/2 closed form") {
  for (double beta : {-1.0, 0.0, 0.4, std::log(2.0), 1.5}) {
    const SpectralMeasure a = nu_half_beta(beta), b = nu_v_beta(0.5, beta);
    REQUIRE(a.atoms().size() == b.atoms().size());
    for (std::size_t i = 0; i < a.atoms().size(); ++i) {
      CHECK_NEAR(a.atoms()[i].location, b.atoms()[i].location, 1e-9);
      CHECK_NEAR(a.atoms()[i].mass, b.atoms()[i].mass, 1e-9);
    }
    for (int i = 1; i <= 20; ++i) CHECK_NEAR(a.density(i / 21.0), b.density(i / 21.0), 1e-9);
  }
  const SpectralMeasure h = nu_half_beta(std::log(2.0));
  REQUIRE(h.atoms().size() == 1);
  CHECK_NEAR(h.atoms()[0].location, 4.0 / 3.0, 1e-15);
  CHECK_NEAR(h.atoms()[0].mass, 2.0 / 3.0, 1e-15);
  CHECK(nu_half_beta(-1.0).atoms().empty());
}

TEST_CASE("free energy and partition function") {
  CHECK_NEAR(free_energy_arcsine(0.5, std::log(2.0)), std::log(4.0 / 3.0), 1e-15);
  CHECK(free_energy_arcsine(0.3, 0.0) == 0);
  CHECK(free_energy_arcsine(0.3, -2.0) == 0);
  const double g = std::pow(1 - std::exp(-1.0), 4.0 / 3.0);
  CHECK_NEAR(free_energy_arcsine(0.25, 1.0), std::log(1 / (1 - g)), 1e-15);
  CHECK_NEAR(free_energy_arcsine(0.25, 1.0), free_energy(mu_v(0.25), 1.0), 1e-10);
  CHECK_NEAR(contact_arcsine(0.25, 1.0), contact_fraction(mu_v(0.25), 1.0), 1e-9);
  CHECK(partition_exact_beta0(0.4, 0) == 1);
  CHECK_NEAR(partition_exact_beta0(0.5, 1), 0.5, 1e-15);
  for (int N = 0; N <= 60; ++N) CHECK_NEAR(partition_exact_beta0(0.5, N), t::central_binomial_ratio(N), 1e-13);
  const auto z0 = partition_oracle(mu_v(0.3), 0.0, 60);
  for (int N = 0; N <= 60; ++N) CHECK_NEAR(partition_exact_beta0(0.3, N), z0[N], 1e-10);
  const int N = 100000;
  CHECK(std::abs(partition_exact_beta0(0.3, N) * std::pow(N, 0.3) * std::tgamma(0.7) - 1) < 1e-4);
  for (double v : {0.25, 0.5, 0.75}) {
    const ArcsineParams p = arcsine_params(v, 1.0);
    const SpectralMeasure nu = nu_v_beta(v, 1.0);
    const double F = free_energy_arcsine(v, 1.0);
    CHECK(std::abs(nu.moment(300).value * std::exp(-300 * F) / p.c_atom - 1) < 0.01);
    const auto z = partition_oracle(mu_v(v), 1.0, 100);
    for (int n = 0; n <= 100; n += 10) CHECK(std::abs(nu.moment(n).value / z[n] - 1) < 1e-8);
  }
}
