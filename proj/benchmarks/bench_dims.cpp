#include <benchmark/benchmark.h>

#include "ermrates/dims.hpp"

using namespace ermrates;

static void BM_VcPowerset(benchmark::State& state) {
  auto c = build_catalog_class("powerset", {{"m", state.range(0)}});
  for (auto _ : state) benchmark::DoNotOptimize(vc_dim(c).value);
}
BENCHMARK(BM_VcPowerset)->Arg(6)->Arg(8)->Arg(10);

static void BM_StarGlobalHalfspaces(benchmark::State& state) {
  auto c = build_catalog_class("halfspaces-circle", {{"n", state.range(0)}});
  for (auto _ : state) benchmark::DoNotOptimize(star_max(c).value);
}
BENCHMARK(BM_StarGlobalHalfspaces)->Arg(8)->Arg(12)->Arg(16);

static void BM_EluderThresholds(benchmark::State& state) {
  auto c = build_catalog_class("thresholds-N", {{"m", state.range(0)}});
  for (auto _ : state) benchmark::DoNotOptimize(eluder_dim(c).value);
}
BENCHMARK(BM_EluderThresholds)->Arg(16)->Arg(64)->Arg(256);

static void BM_LittlestoneHalfspaces(benchmark::State& state) {
  auto c = build_catalog_class("halfspaces-circle", {{"n", state.range(0)}});
  for (auto _ : state) benchmark::DoNotOptimize(littlestone_dim(c).value);
}
BENCHMARK(BM_LittlestoneHalfspaces)->Arg(8)->Arg(12);

static void BM_SePrefixSingletons(benchmark::State& state) {
  auto c = build_catalog_class("singletons-N", {{"m", 64}});
  const auto center = all_zero(c);
  for (auto _ : state) benchmark::DoNotOptimize(se_prefix(c, center, std::nullopt, static_cast<int>(state.range(0))).depth);
}
BENCHMARK(BM_SePrefixSingletons)->Arg(4)->Arg(8);

static void BM_VcePrefixB8(benchmark::State& state) {
  auto c = build_catalog_class("ex-B8", {{"k_max", 8}});
  const auto center = all_zero(c);
  for (auto _ : state) benchmark::DoNotOptimize(vce_prefix(c, center, std::nullopt, static_cast<int>(state.range(0))).depth);
}
BENCHMARK(BM_VcePrefixB8)->Arg(3)->Arg(5);
