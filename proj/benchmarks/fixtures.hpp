#pragma once

#include <cstdint>

#include "faultrank/propagation.hpp"
#include "faultrank/scenario.hpp"

namespace faultrank::bench {

inline Scenario scenario(std::size_t n, std::uint64_t seed = 1, double density = 3.0) {
  return generate_scenario(ScenarioSpec{.n_faults = n, .edge_density = density, .seed = seed});
}

inline PropagationGraph propagated(const Scenario& s) {
  return build_propagation_graph(propagate_weights(s.graph, s.trigger).graph, s.trigger);
}

}  // namespace faultrank::bench
