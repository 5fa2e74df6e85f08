// SPDX-License-Identifier: Apache-2.0
#include <cstdint>

#include <benchmark/benchmark.h>

#include <bcrelay/broadcast.hpp>
#include <bcrelay/monte_carlo.hpp>
#include <bcrelay/outage.hpp>
#include <bcrelay/rng.hpp>
#include <bcrelay/two_layer.hpp>

namespace {

using namespace bcrelay;

const TwoLayerAllocation kAlloc{0.8, 0.8, 0.4, 0.7};
const PowerConfig kCfg{10.0, 10.0, 100.0};

void BM_PhiloxBlock(benchmark::State& state) {
  const RandomStream stream(7);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(stream.at(i++));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxBlock);

void BM_FadingSample(benchmark::State& state) {
  const RandomStream stream(7);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fading_at(stream, i++));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FadingSample);

void BM_Simulate(benchmark::State& state) {
  SimConfig sim;
  sim.blocks = static_cast<std::uint64_t>(state.range(0));
  sim.seed = 7;
  sim.strategy = Strategy::simplex_equal;
  sim.params = kAlloc;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_strategy(sim, kCfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(1 << 16);

void BM_SdfSingleLayer(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sdf_single_layer_throughput(1.0, kCfg));
  }
}
BENCHMARK(BM_SdfSingleLayer);

void BM_SimplexEqual(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(simplex_equal_throughput(kAlloc, kCfg));
  }
}
BENCHMARK(BM_SimplexEqual);

void BM_SimplexUnequal(benchmark::State& state) {
  const TwoLayerAllocation alloc{0.8, 0.9, 0.4, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simplex_unequal_throughput(alloc, kCfg));
  }
}
BENCHMARK(BM_SimplexUnequal);

void BM_OptimalPowerDensity(benchmark::State& state) {
  const FadingDistribution dist = rayleigh_fading();
  for (auto _ : state) {
    const PowerDensity d = optimal_power_density(10.0, dist);
    benchmark::DoNotOptimize(broadcast_rate(d, dist));
  }
}
BENCHMARK(BM_OptimalPowerDensity);

} // namespace

BENCHMARK_MAIN();
