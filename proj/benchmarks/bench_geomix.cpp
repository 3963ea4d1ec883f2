#include <benchmark/benchmark.h>

#include "geomix/arcsine.hpp"
#include "geomix/expmix.hpp"
#include "geomix/families.hpp"
#include "geomix/involution.hpp"
#include "geomix/polymer.hpp"
#include "geomix/renewal.hpp"

namespace {

using namespace geomix;

MixtureMeasure mixed() {
  return MixtureMeasure({{0.05, 0.2}, {0.5, 0.3}, {0.6, 0.1}},
                        {uniform_piece(0.1, 0.4, 0.2), beta_piece(0.6, 1.0, 2, 2, 0.2)}, Domain::unit_interval,
                        true);
}

// Cost of one P(N in tau) once nu and its rule exist: independent of N.
void BM_MomentSpectral(benchmark::State& st) {
  const SpectralMeasure nu = involute(mixed());
  nu.rule();
  const int N = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(renewal_probability(nu, N));
}
BENCHMARK(BM_MomentSpectral)->Arg(10)->Arg(100)->Arg(1000)->Arg(10000);

// The convolution recursion for the same value: O(N^2) plus N pmf quadratures.
void BM_RenewalOracle(benchmark::State& st) {
  const MixtureMeasure mu = mixed();
  const int N = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(renewal_oracle(mu, N).back());
  st.SetComplexityN(N);
}
BENCHMARK(BM_RenewalOracle)->Arg(10)->Arg(100)->Arg(1000)->Complexity(benchmark::oNSquared)
    ->Unit(benchmark::kMillisecond);

// Recursion alone, with K precomputed.
void BM_Recursion(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  std::vector<double> K(N + 1, 0.0);
  for (int n = 1; n <= N; ++n) K[n] = K_v_pmf(0.5, n);
  for (auto _ : st) benchmark::DoNotOptimize(renewal_recursion(K, N).back());
  st.SetComplexityN(N);
}
BENCHMARK(BM_Recursion)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

// Building nu together with its moment rule.
void BM_InvoluteAndRule(benchmark::State& st) {
  const MixtureMeasure mu = st.range(0) == 0 ? mixed() : mu_v(0.3);
  for (auto _ : st) {
    const SpectralMeasure nu = involute(mu);
    benchmark::DoNotOptimize(nu.rule().size());
  }
}
BENCHMARK(BM_InvoluteAndRule)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NuBeta(benchmark::State& st) {
  const MixtureMeasure mu = mixed();
  for (auto _ : st) {
    const SpectralMeasure nu = nu_beta(mu, 0.7);
    benchmark::DoNotOptimize(nu.moment(100).value);
  }
}
BENCHMARK(BM_NuBeta)->Unit(benchmark::kMillisecond);

void BM_FreeEnergy(benchmark::State& st) {
  const MixtureMeasure mu = mixed();
  for (auto _ : st) benchmark::DoNotOptimize(free_energy(mu, 0.7));
}
BENCHMARK(BM_FreeEnergy);

void BM_StieltjesEval(benchmark::State& st) {
  const MixtureMeasure mu = mixed();
  const cplx z(0.3, 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(stieltjes_eval(mu, z));
}
BENCHMARK(BM_StieltjesEval);

void BM_Intensity(benchmark::State& st) {
  const MixtureMeasure mu({}, {uniform_piece(1, 2)}, Domain::half_line, true);
  const SpectralMeasure nu = nu_continuous(mu);
  nu.rule();
  for (auto _ : st) benchmark::DoNotOptimize(intensity(nu, 1.0));
}
BENCHMARK(BM_Intensity);

}  // namespace

BENCHMARK_MAIN();
