#include <benchmark/benchmark.h>

#include "tickcoint/estimators.hpp"
#include "tickcoint/fracgauss.hpp"
#include "tickcoint/limitlab.hpp"
#include "tickcoint/market.hpp"

using namespace tickcoint;

namespace {

void BM_FgnSynthesis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Seed s = 1;
  for (auto _ : state) benchmark::DoNotOptimize(gen_fgn(0.7, n, s++));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FgnSynthesis)->RangeMultiplier(4)->Range(1 << 10, 1 << 18)->Complexity();

void BM_Simulate(benchmark::State& state) {
  AssetConfig a;
  LmsdSpec l;
  l.driver = GaussianSpec::long_memory(0.7, 0.5, 1);
  a.durations = DurationModel::from_lmsd(l);
  a.noise.regime = NoiseRegime::kWeak;
  a.noise.hurst = 0.3;
  const auto cfg = MarketConfig::cointegrated(1.5, a, a, static_cast<double>(state.range(0)));
  Seed s = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(cfg, s++));
}
BENCHMARK(BM_Simulate)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_TaperEstimate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto x = gen_fgn(0.5, n, 1), y = gen_fgn(0.5, n, 2);
  for (std::size_t j = 1; j < n; ++j) {
    x[j] += x[j - 1];
    y[j] += y[j - 1];
  }
  TaperConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(taper_theta(y, x, cfg));
}
BENCHMARK(BM_TaperEstimate)->RangeMultiplier(4)->Range(1 << 10, 1 << 18);

void BM_FunctionalDraw(benchmark::State& state) {
  LimitFunctional f;
  f.kind = FunctionalKind::kRatioBBH;
  f.hurst = 0.3;
  Seed s = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_functional(f, static_cast<std::size_t>(state.range(0)), 16, s++, 1));
}
BENCHMARK(BM_FunctionalDraw)->Arg(kMinReferenceGrid)->Arg(4 * kMinReferenceGrid);

}  // namespace
BENCHMARK_MAIN();
