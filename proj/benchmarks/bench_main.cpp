#include <benchmark/benchmark.h>

#include "xyent/bounds.hpp"
#include "xyent/oracle.hpp"
#include "xyent/quench.hpp"
#include "xyent/thermal.hpp"

using namespace xyent;

static void BM_ThermalCorrelations(benchmark::State& state) {
  const ModelParams p{0.7, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(thermal_correlations(p, 0.4));
}
BENCHMARK(BM_ThermalCorrelations);

static void BM_GGECorrelations(benchmark::State& state) {
  const auto qp = QuenchParams::fields(0.6, 0.3, 1.4);
  for (auto _ : state) benchmark::DoNotOptimize(gge_correlations(qp));
}
BENCHMARK(BM_GGECorrelations);

// Finite-chain energy cost grows linearly with the number of modes.
static void BM_FiniteEnergy(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(finite_energy_thermal({1.0, 0.5}, 0.3, length));
  state.SetComplexityN(length);
}
BENCHMARK(BM_FiniteEnergy)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oN);

static void BM_EnergyBound(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(temperature_bound_energy({1.0, 1.0}));
}
BENCHMARK(BM_EnergyBound);

static void BM_NegativityBound(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(temperature_bound_negativity({1.0, 1.0}));
}
BENCHMARK(BM_NegativityBound);

static void BM_FiniteSizeBound(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  const auto opts = precise_bound_options();
  for (auto _ : state) benchmark::DoNotOptimize(temperature_bound_energy_finite({1.0, 0.5}, length, opts));
}
BENCHMARK(BM_FiniteSizeBound)->Arg(64)->Arg(1024);

static void BM_ClassifyQuench(benchmark::State& state) {
  const auto qp = QuenchParams::fields(0.8, 0.9, 1.2);
  for (auto _ : state) benchmark::DoNotOptimize(classify_quench(qp));
}
BENCHMARK(BM_ClassifyQuench);

static void BM_RegionMap(benchmark::State& state) {
  const int resolution = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quench_region_map(1.0, {0.0, 2.0}, {0.0, 2.0}, resolution, 1));
  }
}
BENCHMARK(BM_RegionMap)->Arg(21)->Arg(51)->Unit(benchmark::kMillisecond);

static void BM_ExactDiagonalization(benchmark::State& state) {
  const int length = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oracle::ThermalEnsemble({0.7, 1.3}, length));
}
BENCHMARK(BM_ExactDiagonalization)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
