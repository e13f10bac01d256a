#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>

#include "faultrank/catalog.hpp"
#include "faultrank/fault_graph.hpp"

namespace faultrank {

enum class Topology {
  /// Faults sit in dependency tiers; arcs mostly point one tier up, with a
  /// share of arcs pointing back down (which creates cycles).
  Layered,
  /// Every ordered pair of faults is equally likely to be joined.
  Uniform,
};

struct UniformRange {
  double lo = 0.0;
  double hi = 1.0;
};

/// Parameters of a synthetic fault catalog and graph.
struct ScenarioSpec {
  std::size_t n_faults = 100;
  /// Share of faults per component kind; must sum to 1.
  std::map<ComponentKind, double> module_mix = {{ComponentKind::VM, 0.25},
                                                {ComponentKind::Proxy, 0.25},
                                                {ComponentKind::Runtime, 0.25},
                                                {ComponentKind::Database, 0.25}};
  /// Faults per component; each kind gets ceil(kind faults / this) components.
  std::size_t faults_per_component = 5;
  /// Expected out-degree of a fault node.
  double edge_density = 3.0;
  Topology topology = Topology::Layered;
  std::size_t layers = 4;
  /// Expected share of arcs that point to a lower tier (layered only).
  double back_edge_fraction = 0.1;
  UniformRange ifv{0.1, 1.0};
  UniformRange probability{0.05, 0.35};
  std::uint64_t seed = 0;
  /// Edge regenerations allowed while looking for a weakly connected graph.
  std::size_t max_retries = 200;
};

struct Scenario {
  std::shared_ptr<const FaultCatalog> catalog;
  FaultGraph graph;
  FaultId trigger;
};

/// Throws InvalidConfig for an invalid spec and GenerationFailed when no
/// weakly connected graph turns up within the retry budget.
void validate(const ScenarioSpec& spec);

/// Faults per kind by largest-remainder apportionment of n_faults.
std::map<ComponentKind, std::size_t> apportion_faults(const ScenarioSpec& spec);

/// Deterministic in spec.seed. Fault ids follow the dotted
/// "log.fault.<module>.steps.<token>" style. Arcs are drawn independently per
/// ordered pair with probabilities chosen so the expected out-degree is
/// edge_density; the trigger is drawn uniformly among nodes with outgoing
/// arcs.
Scenario generate_scenario(const ScenarioSpec& spec);

}  // namespace faultrank
