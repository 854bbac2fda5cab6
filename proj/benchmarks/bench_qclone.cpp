#include <benchmark/benchmark.h>

#include "qclone/b92.hpp"
#include "qclone/optimizer.hpp"

namespace {

using namespace qclone;

void BM_CloneMeridional(benchmark::State& state) {
  const auto spec = meridional_spec();
  const PureQubit s(1.1, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(clone(spec, s));
}
BENCHMARK(BM_CloneMeridional);

void BM_CloneSynthesized(benchmark::State& state) {
  const auto spec = synthesize({0.2, 0.3, 0.2});
  const PureQubit s(1.1, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(clone(spec, s));
}
BENCHMARK(BM_CloneSynthesized);

void BM_Synthesize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(synthesize({0.2, 0.3, 0.2}));
}
BENCHMARK(BM_Synthesize);

void BM_AttackAnalysis(benchmark::State& state) {
  const auto spec = meridional_spec();
  for (auto _ : state) benchmark::DoNotOptimize(b92::attack_analysis(spec, 0.7));
}
BENCHMARK(BM_AttackAnalysis);

void BM_SimulateProtocol(benchmark::State& state) {
  const auto spec = meridional_spec();
  b92::SimulationOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(b92::simulate_protocol(&spec, 0.7, n, 1, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateProtocol)->Args({100000, 1})->Args({100000, 4});

void BM_ScanFeasibleRegion(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scan_feasible_region(static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_ScanFeasibleRegion)->Arg(20)->Arg(50);

void BM_OptimizeAverage(benchmark::State& state) {
  OptimizerOptions o;
  o.grid_step = 0.01;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(optimize_average(o));
}
BENCHMARK(BM_OptimizeAverage)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
