#include <benchmark/benchmark.h>

#include "ermrates/curves.hpp"
#include "ermrates/erm.hpp"

using namespace ermrates;

static void BM_VersionSpace(benchmark::State& state) {
  auto c = build_catalog_class("halfspaces-circle", {{"n", 64}});
  auto s = sample_dataset(RealizableDistribution(
                              [&] {
                                std::vector<Atom> a;
                                for (std::size_t x = 0; x < 64; ++x)
                                  a.push_back(Atom{c.domain().point(x), c.hypothesis(100).at(x), 1.0 / 64, std::nullopt});
                                return a;
                              }(),
                              "hyp:100", "uniform"),
                          state.range(0), 3);
  for (auto _ : state) benchmark::DoNotOptimize(version_space(c, s).size());
}
BENCHMARK(BM_VersionSpace)->Arg(16)->Arg(256);

static void BM_CompressionThresholds(benchmark::State& state) {
  auto c = build_catalog_class("thresholds-N", {{"m", 256}});
  Sample s;
  for (PointId x = 1; x <= 256; x += 3) s.push_back(example(x, x >= 128 ? 1 : 0));
  for (auto _ : state) benchmark::DoNotOptimize(compression_set(c, s).subset.size());
}
BENCHMARK(BM_CompressionThresholds);

static void BM_CompressionHalfspaces(benchmark::State& state) {
  auto c = build_catalog_class("halfspaces-circle", {{"n", 24}});
  const auto& target = c.hypothesis(static_cast<std::size_t>(state.range(0)));
  Sample s;
  for (std::size_t x = 0; x < 24; x += 2) s.push_back(LabeledExample{c.domain().point(x), target.at(x)});
  for (auto _ : state) benchmark::DoNotOptimize(compression_set(c, s).subset.size());
}
BENCHMARK(BM_CompressionHalfspaces)->Arg(30)->Arg(200);
