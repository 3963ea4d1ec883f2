#include "measures.hpp"

#include <algorithm>
#include <cmath>

#include "geomix/families.hpp"

namespace geomix::testing {

MixtureMeasure atomic(std::vector<Atom> atoms) {
  return MixtureMeasure(std::move(atoms), {}, Domain::unit_interval, true);
}

MixtureMeasure two_atom() { return atomic({{0.25, 0.5}, {0.75, 0.5}}); }
MixtureMeasure three_atom() { return atomic({{0.1, 0.2}, {0.5, 0.3}, {0.9, 0.5}}); }

MixtureMeasure uniform01() { return uniform_on(0, 1); }

MixtureMeasure uniform_on(double a, double b) {
  return MixtureMeasure({}, {uniform_piece(a, b)}, Domain::unit_interval, true);
}

MixtureMeasure two_uniform() {
  return MixtureMeasure({}, {uniform_piece(0, 0.4, 0.5), uniform_piece(0.6, 1, 0.5)}, Domain::unit_interval, true);
}

MixtureMeasure random_atomic(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> loc(0.02, 0.98), w(0.1, 1.0);
  std::vector<double> xs;
  while (static_cast<int>(xs.size()) < n) {
    const double x = loc(rng);
    bool ok = true;
    for (double y : xs) ok = ok && std::abs(x - y) > 0.01;
    if (ok) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  std::vector<double> ms(n);
  double total = 0;
  for (double& m : ms) total += (m = w(rng));
  std::vector<Atom> atoms;
  for (int i = 0; i < n; ++i) atoms.push_back({xs[i], ms[i] / total});
  // Renormalize the last mass so that the sum is 1 to rounding.
  double rest = 1;
  for (int i = 0; i + 1 < n; ++i) rest -= atoms[i].mass;
  atoms.back().mass = rest;
  return atomic(std::move(atoms));
}

MixtureMeasure mixed_example() {
  return MixtureMeasure({{0.05, 0.2}, {0.5, 0.3}, {0.6, 0.1}},
                        {uniform_piece(0.1, 0.4, 0.2), beta_piece(0.6, 1.0, 2, 2, 0.2)}, Domain::unit_interval,
                        true);
}

MixtureMeasure defective(double delta) {
  if (delta >= 0.5)
    return MixtureMeasure({{0.0, delta}, {0.3, (1 - delta) / 2}}, {uniform_piece(0.5, 1, (1 - delta) / 2)},
                          Domain::unit_interval, true);
  return MixtureMeasure({{0.0, delta}}, {arcsine_piece(0, 1, 0.5, 1 - delta)}, Domain::unit_interval, true);
}

std::vector<Named> discrete_family(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<Named> out;
  for (int n = 1; n <= 8; ++n) out.push_back({"atomic_n" + std::to_string(n), random_atomic(rng, n)});
  out.push_back({"two_atom", two_atom()});
  out.push_back({"three_atom", three_atom()});
  out.push_back({"uniform", uniform01()});
  out.push_back({"two_uniform", two_uniform()});
  out.push_back({"uniform_0.3_1", uniform_on(0.3, 1)});
  out.push_back({"uniform_0.5_1", uniform_on(0.5, 1)});
  auto one = [](DensityPiece p) { return MixtureMeasure({}, {std::move(p)}, Domain::unit_interval, true); };
  out.push_back({"beta_2_3", one(beta_piece(0, 1, 2, 3))});
  out.push_back({"beta_0.5_1.5_shifted", one(beta_piece(0.2, 0.9, 0.5, 1.5))});
  out.push_back({"arcsine_0.25", one(arcsine_piece(0, 1, 0.25))});
  out.push_back({"arcsine_0.5", one(arcsine_piece(0, 1, 0.5))});
  out.push_back({"arcsine_0.75", one(arcsine_piece(0, 1, 0.75))});
  out.push_back({"poly_two_pieces", MixtureMeasure({}, {poly_piece(0.1, 0.7, {1, 2, -1}, 0.6), poly_piece(0.8, 1, {0, 1}, 0.4)},
                                                   Domain::unit_interval, true)});
  out.push_back({"mixed", mixed_example()});
  out.push_back({"mixed_atom_at_1", MixtureMeasure({{1.0, 0.3}}, {uniform_piece(0.2, 0.7, 0.7)}, Domain::unit_interval, true)});
  out.push_back({"defective_0.1", defective(0.1)});
  out.push_back({"defective_0.5", defective(0.5)});
  return out;
}

std::vector<Named> finite_mean_family(unsigned seed) {
  std::vector<Named> out;
  for (Named& m : discrete_family(seed))
    if (defect(m.mu) == 0 && std::isfinite(mean_interarrival(m.mu))) out.push_back(std::move(m));
  return out;
}

std::vector<Named> core_family() {
  return {{"two_atom", two_atom()},
          {"three_atom", three_atom()},
          {"uniform", uniform01()},
          {"two_uniform", two_uniform()},
          {"uniform_0.3_1", uniform_on(0.3, 1)},
          {"mixed", mixed_example()},
          {"defective_0.5", defective(0.5)}};
}

MixtureMeasure rate_atoms(std::vector<Atom> atoms) {
  return MixtureMeasure(std::move(atoms), {}, Domain::half_line, true);
}

MixtureMeasure hyperexp_two() { return rate_atoms({{1.0, 0.5}, {3.0, 0.5}}); }

}  // namespace geomix::testing
