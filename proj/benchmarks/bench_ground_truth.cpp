#include <benchmark/benchmark.h>

#include "faultrank/ground_truth.hpp"
#include "fixtures.hpp"

namespace faultrank {
namespace {

void BM_PercolationMonteCarlo(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<std::size_t>(state.range(0)));
  const auto trials = static_cast<std::size_t>(state.range(1));
  const NodeIndex trigger = s.graph.index_of(s.trigger);
  for (auto _ : state) benchmark::DoNotOptimize(percolation_monte_carlo(s.graph, trigger, trials, 7));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
}
BENCHMARK(BM_PercolationMonteCarlo)->ArgsProduct({{32, 128, 512}, {1000, 20000}})->Unit(benchmark::kMillisecond);

void BM_PercolationExact(benchmark::State& state) {
  // Sparse small graphs keep the reachable set under the exact limit.
  const auto s = bench::scenario(static_cast<std::size_t>(state.range(0)), 5, 1.5);
  const NodeIndex trigger = s.graph.index_of(s.trigger);
  const auto pg = build_propagation_graph(s.graph, s.trigger);
  if (pg.node_count() > kMaxExactNodes) {
    state.SkipWithError("reachable set exceeds the exact limit");
    return;
  }
  for (auto _ : state) benchmark::DoNotOptimize(percolation_exact(s.graph, trigger));
  state.counters["reachable"] = static_cast<double>(pg.node_count());
}
BENCHMARK(BM_PercolationExact)->DenseRange(6, 14, 4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace faultrank
