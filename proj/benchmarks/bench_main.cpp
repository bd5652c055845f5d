#include <benchmark/benchmark.h>

#include <random>

#include "steal_lab/bench.hpp"
#include "steal_lab/cache_sim.hpp"
#include "steal_lab/kernels.hpp"
#include "steal_lab/rws_sim.hpp"
#include "steal_lab/table1.hpp"

using namespace steal_lab;

static void BM_GenerateMm(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate("mm", n, 1).dag.size());
}
BENCHMARK(BM_GenerateMm)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

static void BM_GenerateKleene(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(generate("kleene", n, 1).dag.size());
}
BENCHMARK(BM_GenerateKleene)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

static void BM_LruAccess(benchmark::State& state) {
  const auto lines = static_cast<std::uint64_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<BlockId> trace(1 << 16);
  for (auto& b : trace) b = rng() % (lines * 4);
  for (auto _ : state) {
    LruCache c({lines * 16, 16});
    c.replay(trace);
    benchmark::DoNotOptimize(c.misses());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trace.size()));
}
BENCHMARK(BM_LruAccess)->RangeMultiplier(4)->Range(16, 4096);

static void BM_SequentialQ1(benchmark::State& state) {
  const SPDag dag = make_dag("mm", static_cast<std::uint64_t>(state.range(0)), 1, {});
  for (auto _ : state) benchmark::DoNotOptimize(sequential_q1(dag, {4096, 16}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dag.trace_length()));
}
BENCHMARK(BM_SequentialQ1)->RangeMultiplier(2)->Range(64, 256)->Unit(benchmark::kMillisecond);

static void BM_Simulate(benchmark::State& state) {
  const SPDag dag = make_dag("mm", 64, 1, {});
  SchedulerConfig cfg;
  cfg.procs = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    cfg.seed++;
    benchmark::DoNotOptimize(run(dag, cfg, {4096, 16}).ticks);
  }
}
BENCHMARK(BM_Simulate)->RangeMultiplier(2)->Range(1, 16)->Unit(benchmark::kMillisecond);

static void BM_DeriveTable1(benchmark::State& state) {
  for (auto _ : state) {
    for (auto alg : table1_ids()) benchmark::DoNotOptimize(derive(alg));
  }
}
BENCHMARK(BM_DeriveTable1);
BENCHMARK_MAIN();
