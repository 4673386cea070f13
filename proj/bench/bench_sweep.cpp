// Serial reference sweep against the OpenMP sweep on the same corpus.
#include <benchmark/benchmark.h>

#include "equitree/sweep.hpp"

namespace {

equitree::SweepConfig corpus(std::int64_t count) {
  equitree::SweepConfig cfg;
  cfg.orders = {3, 5, 7, 9, 15, 25, 27};
  cfg.count = count;
  cfg.seed = 7;
  cfg.homology = false;
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = corpus(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(equitree::sweep_serial(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto cfg = corpus(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(equitree::sweep_parallel(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
