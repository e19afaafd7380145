#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "bubbles/moments.hpp"
#include "bubbles/panel.hpp"
#include "bubbles/random.hpp"
#include "bubbles/simulation.hpp"
#include "bubbles/survival.hpp"
#include "bubbles/synthetic.hpp"
#include "bubbles/tail.hpp"

namespace {

using namespace bubbles;

std::vector<double> pareto_sample(std::size_t n, double alpha) {
  CounterStream rng(1, 0);
  std::vector<double> x(n);
  for (auto& v : x) v = std::pow(rng.uniform(), -1.0 / alpha);
  return x;
}

void BM_Hill(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = pareto_sample(n, 2.5);
  for (auto _ : state) benchmark::DoNotOptimize(hill_estimator(x, n / 10));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Hill)->Arg(1000)->Arg(100000);

void BM_SurvivalCurve(benchmark::State& state) {
  const auto x = pareto_sample(static_cast<std::size_t>(state.range(0)), 2.5);
  for (auto _ : state) {
    SurvivalCurve curve(x);
    benchmark::DoNotOptimize(curve.step_points());
  }
}
BENCHMARK(BM_SurvivalCurve)->Arg(1000)->Arg(100000);

void BM_Moments(benchmark::State& state) {
  const auto x = pareto_sample(static_cast<std::size_t>(state.range(0)), 2.5);
  for (auto _ : state) benchmark::DoNotOptimize(cross_sectional_moments(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Moments)->Arg(1000)->Arg(100000);

void BM_DispersionSeries(benchmark::State& state) {
  const auto panel = make_bubble_panel({}).panel;
  const auto perf = normalize_panel(panel, panel.dates().front());
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dispersion_series(perf, workers));
}
BENCHMARK(BM_DispersionSeries)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_TailSeries(benchmark::State& state) {
  const auto panel = make_bubble_panel({}).panel;
  const auto perf = normalize_panel(panel, panel.dates().front());
  const auto workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tail_series(perf, {}, workers));
}
BENCHMARK(BM_TailSeries)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const auto spec = CorrelationSpec::equicorrelated(1000, state.range(0) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_dispersion({spec, 100, 42}));
}
BENCHMARK(BM_Simulate)->Arg(0)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_SimulateDense(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> r(n * n, 0.3);
  for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1.0;
  const CorrelationSpec spec(std::vector<double>(n, 0.0), std::vector<double>(n, 1.0),
                            CorrelationMatrix(n, r));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_dispersion({spec, 1000, 42}));
}
BENCHMARK(BM_SimulateDense)->Arg(8)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
