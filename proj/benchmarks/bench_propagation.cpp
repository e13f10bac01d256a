#include <benchmark/benchmark.h>

#include "fixtures.hpp"

namespace faultrank {
namespace {

void BM_Propagate(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<std::size_t>(state.range(0)));
  const PropagationConfig config{.combine = static_cast<CombineMode>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(propagate_weights(s.graph, s.trigger, config));
  state.SetLabel(std::string(to_string(config.combine)));
}
BENCHMARK(BM_Propagate)->ArgsProduct({{16, 64, 256, 512},
                                      {static_cast<long>(CombineMode::Literal),
                                       static_cast<long>(CombineMode::NoisyOr)}});

// Heavy back-edge share makes large cyclic components.
void BM_PropagateCyclic(benchmark::State& state) {
  const auto s = generate_scenario(ScenarioSpec{.n_faults = static_cast<std::size_t>(state.range(0)),
                                                .back_edge_fraction = 0.5,
                                                .seed = 3});
  for (auto _ : state) benchmark::DoNotOptimize(propagate_weights(s.graph, s.trigger));
}
BENCHMARK(BM_PropagateCyclic)->RangeMultiplier(2)->Range(16, 512);

void BM_BuildPropagationGraph(benchmark::State& state) {
  const auto s = bench::scenario(static_cast<std::size_t>(state.range(0)));
  const auto weighted = propagate_weights(s.graph, s.trigger).graph;
  for (auto _ : state) benchmark::DoNotOptimize(build_propagation_graph(weighted, s.trigger));
}
BENCHMARK(BM_BuildPropagationGraph)->RangeMultiplier(2)->Range(16, 512);

}  // namespace
}  // namespace faultrank
