#include <cmath>
#include <random>

#include "check.hpp"
#include "geomix/expmix.hpp"
#include "geomix/families.hpp"
#include "measures.hpp"

using namespace geomix;
namespace t = geomix::testing;

namespace {

MixtureMeasure uniform_rates(double lo, double hi) {
  return MixtureMeasure({}, {uniform_piece(lo, hi)}, Domain::half_line, true);
}

}  // namespace

TEST_CASE("inter-arrival density") {
  CHECK_NEAR(interarrival_density(t::rate_atoms({{2.0, 1}}), 0.7), 2 * std::exp(-1.4), 1e-15);
  CHECK_NEAR(interarrival_density(t::hyperexp_two(), 1e-12), 2.0, 1e-10);
  CHECK_ERROR_KIND(interarrival_density(t::hyperexp_two(), 0.0), ErrorKind::argument);
  CHECK_ERROR_KIND(interarrival_density(t::uniform01(), 1.0), ErrorKind::domain);
  CHECK_ERROR_KIND(interarrival_density(t::rate_atoms({{0.0, 0.5}, {1.0, 0.5}}), 1.0), ErrorKind::argument);
  // Composite Simpson on a mapped grid x = u/(1-u).
  const MixtureMeasure mu = uniform_rates(1, 2);
  const int n = 4000;
  double s = 1.5;  // f(0) = mean rate; the integrand vanishes at u = 1
  for (int i = 1; i < n; ++i) {
    const double u = static_cast<double>(i) / n, x = u / (1 - u);
    s += (i % 2 ? 4 : 2) * interarrival_density(mu, x) / ((1 - u) * (1 - u));
  }
  CHECK_NEAR(s / (3.0 * n), 1.0, 1e-9);
}

TEST_CASE("continuous spectral measure") {
  const SpectralMeasure one = nu_continuous(t::rate_atoms({{2.5, 1}}));
  REQUIRE(one.atoms().size() == 1);
  CHECK(one.atoms()[0].location == 0);
  CHECK_NEAR(one.atoms()[0].mass, 2.5, 1e-14);
  const SpectralMeasure two = nu_continuous(t::hyperexp_two());
  CHECK(two.provenance() == Provenance::continuous);
  REQUIRE(two.atoms().size() == 2);
  CHECK_NEAR(two.atoms()[0].mass, 1.5, 1e-13);
  CHECK_NEAR(two.atoms()[1].location, 2.0, 1e-13);
  CHECK_NEAR(two.atoms()[1].mass, 0.5, 1e-13);
  const SpectralMeasure ac = nu_continuous(uniform_rates(1, 2));
  REQUIRE(ac.atoms().size() == 1);
  CHECK(ac.atoms()[0].location == 0);
  CHECK_NEAR(ac.atoms()[0].mass, 1 / std::log(2.0), 1e-12);
  CHECK_NEAR(ac.total_mass(), 1.5, 1e-9);
}

TEST_CASE("interlacing and mass") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 5.0);
  for (int n = 2; n <= 4; ++n) {
    std::vector<double> x(n), w(n);
    for (auto& v : x) v = u(rng);
    std::sort(x.begin(), x.end());
    double tot = 0;
    for (auto& v : w) tot += (v = u(rng));
    std::vector<Atom> atoms;
    double mean_rate = 0;
    for (int i = 0; i < n; ++i) {
      atoms.push_back({x[i], w[i] / tot});
      mean_rate += x[i] * w[i] / tot;
    }
    const SpectralMeasure nu = nu_continuous(t::rate_atoms(atoms));
    REQUIRE(static_cast<int>(nu.atoms().size()) == n);
    for (int i = 0; i + 1 < n; ++i) {
      CHECK(nu.atoms()[i + 1].location > x[i]);
      CHECK(nu.atoms()[i + 1].location < x[i + 1]);
    }
    CHECK_NEAR(nu.total_mass(), mean_rate, 1e-9);
  }
}

TEST_CASE("intensity") {
  for (double x : {0.1, 1.0, 5.0}) {
    CHECK_NEAR(intensity(t::rate_atoms({{2.5, 1}}), x), 2.5, 1e-13);
    CHECK_NEAR(intensity(t::hyperexp_two(), x), 1.5 + 0.5 * std::exp(-2 * x), 1e-13);
  }
  CHECK_NEAR(intensity(t::hyperexp_two(), 40.0), 1.5, 1e-13);
  CHECK_ERROR_KIND(intensity(t::hyperexp_two(), -1.0), ErrorKind::argument);
  const SpectralMeasure nu = nu_continuous(MixtureMeasure({{0.5, 0.3}, {1.0, 0.3}, {4.0, 0.4}}, {}, Domain::half_line, true));
  double prev = INFINITY;
  for (double x = 0.1; x <= 10; x += 0.1) {
    const double r = intensity(nu, x) - nu.atoms()[0].mass;
    CHECK(r > 0);
    CHECK(r < prev);
    prev = r;
  }
}

TEST_CASE("intensity oracle") {
  for (double x : {0.5, 2.0, 5.0}) {
    const OracleValue v = intensity_oracle(t::rate_atoms({{1.7, 1}}), x, 60);
    CHECK_NEAR(v.value, 1.7, 1e-10);
    CHECK_FALSE(v.flagged);
  }
  CHECK_NEAR(intensity_oracle(t::hyperexp_two(), 1.0, 80).value, 1.5 + 0.5 * std::exp(-2.0), 1e-6);
  const MixtureMeasure mu = uniform_rates(1, 2);
  for (double x : {0.3, 1.0})
    CHECK(intensity_oracle(mu, x, 1).value == interarrival_density(mu, x));
  const std::vector<double> xs{0.2, 0.5, 1.0, 2.0};
  const auto o = intensity_oracle(mu, xs, 60);
  const SpectralMeasure nu = nu_continuous(mu);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK_NEAR(intensity(nu, xs[i]), o[i].value, 1e-6);
  CHECK_ERROR_KIND(intensity_oracle(mu, 1.0, 0), ErrorKind::argument);
}

TEST_CASE("subordination identity") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> re(-1, 5), lg(-1.3, 0.7);
  for (const MixtureMeasure& mu : {t::hyperexp_two(), uniform_rates(1, 2)}) {
    const SpectralMeasure nu = nu_continuous(mu);
    for (int i = 0; i < 25; ++i) {
      const cplx z(re(rng), std::pow(10.0, lg(rng)));
      CHECK(std::abs((1.0 + nu.stieltjes(z)) * stieltjes_eval(mu, z) * z + 1.0) < 1e-8);
    }
  }
}
