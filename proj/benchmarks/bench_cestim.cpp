#include <benchmark/benchmark.h>

#include "cestim/cestim.hpp"

namespace {

using namespace cestim;

const ExponentialModel kExp;

WeightedSample sample(std::size_t bins) {
  SynthOptions opts;
  opts.n = 10000;
  opts.contamination = 0.1;
  opts.seed = 1;
  opts.bins = bins;
  return histogram_to_sample(synth_exponential(opts));
}

void BM_LogHolder(benchmark::State& state) {
  const auto s = sample(static_cast<std::size_t>(state.range(0)));
  const CentralityQuery q{CentralityKind::Holder, 1.5};
  for (auto _ : state) benchmark::DoNotOptimize(log_holder(s, kExp, 0.9, q));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_LogHolder)->Arg(16)->Arg(64)->Arg(256);

void BM_LogLehmer(benchmark::State& state) {
  const auto s = sample(static_cast<std::size_t>(state.range(0)));
  const CentralityQuery q{CentralityKind::Lehmer, 1.5};
  for (auto _ : state) benchmark::DoNotOptimize(log_lehmer(s, kExp, 0.9, q));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.size()));
}
BENCHMARK(BM_LogLehmer)->Arg(64);

void BM_FixedPoint(benchmark::State& state) {
  const auto s = sample(64);
  const CentralityQuery q{state.range(0) ? CentralityKind::Lehmer : CentralityKind::Holder, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(fixed_point_exponential(s, q));
}
BENCHMARK(BM_FixedPoint)->Arg(0)->Arg(1);

void BM_FindCriticalPoints(benchmark::State& state) {
  const auto s = sample(64);
  const CentralityQuery q{CentralityKind::Holder, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(find_critical_points(s, kExp, q));
}
BENCHMARK(BM_FindCriticalPoints);

void BM_Sweep(benchmark::State& state) {
  const auto s = sample(64);
  const auto grid = default_alpha_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(sweep_alpha(s, kExp, grid, CentralityKind::Holder, {}));
  }
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
