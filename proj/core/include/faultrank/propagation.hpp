#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "faultrank/catalog.hpp"
#include "faultrank/fault_graph.hpp"

namespace faultrank {

enum class Signal { Traffic, Latency, Saturation, Errors };

std::string_view to_string(Signal signal) noexcept;

/// One observation of the four golden signals for a component, each value
/// pre-normalized to [0,1].
struct SignalSample {
  ComponentId component;
  double traffic = 0.0;
  double latency = 0.0;
  double saturation = 0.0;
  double errors = 0.0;
  std::optional<FaultId> observed_fault;
};

struct SignalThresholds {
  double traffic = 0.9;
  double latency = 0.9;
  double saturation = 0.9;
  double errors = 0.9;
};

struct TriggerEvent {
  FaultId fault;
  std::vector<Signal> crossed_signals;
};

/// A threshold crossing without a recorded fault type.
struct UnattributedCrossing {
  std::size_t sample_index = 0;
  ComponentId component;
  std::vector<Signal> crossed_signals;
};

struct TriggerDetection {
  std::vector<TriggerEvent> triggers;
  std::vector<UnattributedCrossing> unattributed;
};

/// A sample triggers when any signal strictly exceeds its threshold and it
/// carries an observed fault.
///
/// Throws UnknownComponent, UnknownFault, or InvalidSignal.
TriggerDetection detect_triggers(std::span<const SignalSample> samples,
                                 const SignalThresholds& thresholds,
                                 const FaultCatalog& catalog);

enum class CombineMode { Literal, NoisyOr };

std::string_view to_string(CombineMode mode) noexcept;

struct PropagationConfig {
  /// Constant added to edge weights inside a cycle.
  double cycle_epsilon = 0.01;
  double tolerance = 1e-6;
  std::size_t max_iters = 100;
  CombineMode combine = CombineMode::Literal;
};

struct PropagationResult {
  FaultGraph graph;
  /// False if some cyclic component hit max_iters before settling.
  bool converged = true;
  /// Largest sweep count spent on any cyclic component.
  std::size_t iterations = 0;
  std::size_t cyclic_components = 0;
};

/// Pushes occurrence probabilities outward from the trigger.
///
/// Every traversed arc (u, v) gets weight P(u) * ifv(u, v) + Z and sets
/// P(v) = P(u) * ifv(u, v) (or the noisy-OR of that with v's independent
/// probability). Z is zero between strongly connected components and
/// `cycle_epsilon` inside one. Components are visited in topological order;
/// a component with internal arcs is swept in ascending-id order until the
/// largest node change is below `tolerance` or `max_iters` sweeps ran.
///
/// Propagation starts from the independent probabilities, so the outcome
/// does not depend on weights already present on the input. The trigger
/// spreads with its independent probability and ends with weight 1.0.
///
/// Throws UnknownTrigger.
PropagationResult propagate_weights(const FaultGraph& graph, const FaultId& trigger,
                                    const PropagationConfig& config = {});

PropagationResult propagate_weights(const FaultGraph& graph, const TriggerEvent& trigger,
                                    const PropagationConfig& config = {});

/// Subgraph of the fault graph induced by the nodes reachable from a root.
class PropagationGraph : public Digraph {
 public:
  PropagationGraph(std::shared_ptr<const FaultCatalog> catalog, Digraph graph, FaultId root);

  const FaultId& root() const noexcept { return root_; }
  NodeIndex root_index() const noexcept { return root_index_; }
  const FaultCatalog& catalog() const noexcept { return *catalog_; }

 private:
  std::shared_ptr<const FaultCatalog> catalog_;
  FaultId root_;
  NodeIndex root_index_ = 0;
};

/// Extracts the trigger-rooted propagation graph, keeping the weights present
/// on `graph` and setting the root weight to 1.0.
///
/// Throws UnknownTrigger.
PropagationGraph build_propagation_graph(const FaultGraph& graph, const FaultId& trigger);

PropagationGraph build_propagation_graph(const FaultGraph& graph, const TriggerEvent& trigger);

}  // namespace faultrank
