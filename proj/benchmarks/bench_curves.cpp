#include <benchmark/benchmark.h>

#include "commands.hpp"
#include "ermrates/curves.hpp"

using namespace ermrates;

static void BM_CurveThresholds(benchmark::State& state) {
  auto c = build_catalog_class("thresholds-N", {{"m", 40}});
  auto p = geometric_eluder(c, cli::threshold_eluder_witness(c));
  CurveOptions opt;
  opt.grid = dyadic_grid(4, 10);
  opt.trials = 2000;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_curve(c, p, RuleId::WorstCase, opt).mean);
  state.SetItemsProcessed(state.iterations() * opt.trials * static_cast<std::int64_t>(opt.grid.size()));
}
BENCHMARK(BM_CurveThresholds)->Arg(1)->Arg(2)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_CurveSingletons(benchmark::State& state) {
  auto c = build_catalog_class("singletons-N", {{"m", 65}});
  auto p = uniform_singleton(64);
  CurveOptions opt;
  opt.grid = dyadic_grid(4, 14);
  opt.trials = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_curve(c, p, RuleId::WorstCase, opt).mean);
  state.SetItemsProcessed(state.iterations() * opt.trials * static_cast<std::int64_t>(opt.grid.size()));
}
BENCHMARK(BM_CurveSingletons)->Unit(benchmark::kMillisecond);

static void BM_SampleDataset(benchmark::State& state) {
  auto p = uniform_singleton(64);
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sample_dataset(p, state.range(0), seed++));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleDataset)->Arg(1 << 10)->Arg(1 << 14);
