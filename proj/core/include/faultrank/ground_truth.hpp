#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "faultrank/digraph.hpp"
#include "faultrank/fault_graph.hpp"

namespace faultrank {

enum class GroundTruthMode { Auto, Exact, MonteCarlo };

struct GroundTruthConfig {
  /// A fault is truly vulnerable when its occurrence probability reaches this.
  double truth_cutoff = 0.5;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  /// Auto mode is exact when at most this many nodes are reachable.
  std::size_t exact_limit = 15;
  GroundTruthMode mode = GroundTruthMode::Auto;
};

struct GroundTruth {
  FaultId trigger;
  std::set<FaultId> vulnerable_faults;
  std::set<ComponentId> vulnerable_components;
  std::map<FaultId, double> occurrence_probabilities;
  bool exact = false;
  /// Monte-Carlo trials used (0 when exact).
  std::size_t trials = 0;
};

/// Largest reachable set the exact solver accepts.
inline constexpr std::size_t kMaxExactNodes = 18;

/// Probability that each node is reached from `trigger` when every arc fires
/// independently with probability equal to its impact factor. Computed over
/// subsets of the reachable set; throws InvalidConfig when more than
/// kMaxExactNodes nodes are reachable.
std::vector<double> percolation_exact(const Digraph& graph, NodeIndex trigger);

/// Monte-Carlo estimate of the same quantity.
std::vector<double> percolation_monte_carlo(const Digraph& graph, NodeIndex trigger,
                                            std::size_t trials, std::uint64_t seed);

/// Throws UnknownTrigger.
GroundTruth ground_truth(const FaultGraph& graph, const FaultId& trigger,
                         const GroundTruthConfig& config = {});

}  // namespace faultrank
