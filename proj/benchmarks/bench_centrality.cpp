#include <benchmark/benchmark.h>

#include "faultrank/centrality.hpp"
#include "fixtures.hpp"

namespace faultrank {
namespace {

void BM_Closeness(benchmark::State& state) {
  const auto pg = bench::propagated(bench::scenario(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(closeness_rank(pg));
  state.counters["nodes"] = static_cast<double>(pg.node_count());
}
BENCHMARK(BM_Closeness)->RangeMultiplier(2)->Range(16, 512);

void BM_Eigenvector(benchmark::State& state) {
  const auto pg = bench::propagated(bench::scenario(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvector_rank(pg));
  state.counters["nodes"] = static_cast<double>(pg.node_count());
}
BENCHMARK(BM_Eigenvector)->RangeMultiplier(2)->Range(16, 512);

void BM_SpectralRadius(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_radius(s.graph));
}
BENCHMARK(BM_SpectralRadius)->RangeMultiplier(2)->Range(16, 512);

void BM_Katz(benchmark::State& state) {
  const auto pg = bench::propagated(bench::scenario(static_cast<std::size_t>(state.range(0))));
  const auto mode = static_cast<KatzMode>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(alpha_rank(pg, CentralityConfig{.katz_mode = mode}));
  state.SetLabel(std::string(to_string(mode)));
  state.counters["nodes"] = static_cast<double>(pg.node_count());
}
BENCHMARK(BM_Katz)->ArgsProduct({{16, 64, 256, 512},
                                  {static_cast<long>(KatzMode::DirectSolve),
                                   static_cast<long>(KatzMode::IterativeSeries)}});

}  // namespace
}  // namespace faultrank
