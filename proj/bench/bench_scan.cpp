#include <benchmark/benchmark.h>

#include "mbt/commands.hpp"
#include "mbt/scan.hpp"
#include "mbt/timing.hpp"

namespace {

mbt::Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? mbt::Execution::Serial : mbt::Execution::Parallel;
}

void BM_TransmissionGrid(benchmark::State& state) {
  const auto model = mbt::DispersionModel::particle(10.0);
  const mbt::BarrierSystem sys{5, 4.0, 10.0, 10.0};
  const auto grid = mbt::linspace(0.1, 9.9, static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mbt::transmission_grid(sys, model, grid, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_Scan(benchmark::State& state) {
  mbt::RunConfig cfg = mbt::default_config();
  cfg.scan.steps = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(mbt::compute_scan(cfg, mbt::kDefaultRelativeStep, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

void BM_DenseOracle(benchmark::State& state) {
  const auto model = mbt::DispersionModel::particle(10.0);
  const mbt::BarrierSystem sys{static_cast<int>(state.range(0)), 2.0, 5.0, 10.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mbt::brute_force_solve(sys, model, 5.0));
  }
}

void BM_TransferMatrix(benchmark::State& state) {
  const auto model = mbt::DispersionModel::particle(10.0);
  const mbt::BarrierSystem sys{static_cast<int>(state.range(0)), 2.0, 5.0, 10.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mbt::solve_exact(sys, model, 5.0));
  }
}

}  // namespace

// First argument: 0 serial, 1 parallel.
BENCHMARK(BM_TransmissionGrid)->ArgsProduct({{0, 1}, {1000, 100000}})->UseRealTime();
BENCHMARK(BM_Scan)->ArgsProduct({{0, 1}, {1000, 10000}})->UseRealTime();
BENCHMARK(BM_TransferMatrix)->Arg(1)->Arg(6)->Arg(50);
BENCHMARK(BM_DenseOracle)->Arg(1)->Arg(6)->Arg(50);

BENCHMARK_MAIN();
