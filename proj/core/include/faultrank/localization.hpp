#pragma once

#include <string>
#include <vector>

#include "faultrank/catalog.hpp"
#include "faultrank/centrality.hpp"
#include "faultrank/fault_graph.hpp"
#include "faultrank/propagation.hpp"

namespace faultrank {

struct SelectedFault {
  FaultId id;
  double score = 0.0;
  /// Score divided by the largest score.
  double normalized = 0.0;

  friend bool operator==(const SelectedFault&, const SelectedFault&) = default;
};

struct VulnerableComponent {
  ComponentId id;
  /// Best normalized score among the component's selected faults.
  double score = 0.0;

  friend bool operator==(const VulnerableComponent&, const VulnerableComponent&) = default;
};

/// Keeps nodes whose max-normalized score is at least `threshold`, sorted by
/// descending score then ascending id. When every score is zero the
/// normalized scores are zero, so only a zero threshold selects anything.
///
/// Throws EmptyGraph for empty scores and InvalidConfig for a threshold
/// outside [0,1].
std::vector<SelectedFault> select_vulnerable_faults(const CentralityScores& scores,
                                                    double threshold);

/// Distinct owning components, scored by their best fault.
///
/// Throws UnknownFault.
std::vector<VulnerableComponent> map_to_components(const std::vector<SelectedFault>& faults,
                                                   const FaultCatalog& catalog);

struct LocalizationConfig {
  PropagationConfig propagation;
  CentralityConfig centrality;
};

struct LocalizationReport {
  FaultId trigger;
  Measure measure = Measure::Alpha;
  double threshold = 0.0;
  std::vector<SelectedFault> faults;
  std::vector<VulnerableComponent> components;
  LocalizationConfig config;
  /// Diagnostics from the pipeline stages.
  bool propagation_converged = true;
  bool centrality_converged = true;
  double alpha = 0.0;
  std::size_t propagation_nodes = 0;
  std::size_t propagation_edges = 0;
};

/// propagate_weights -> build_propagation_graph -> centrality -> selection ->
/// component mapping. The alpha measure uses the propagated node weights as
/// its beta vector. A propagation graph holding only the trigger selects the
/// trigger at any threshold.
LocalizationReport localize(const FaultGraph& graph, const FaultId& trigger, Measure measure,
                            double threshold, const LocalizationConfig& config = {});

LocalizationReport localize(const FaultGraph& graph, const TriggerEvent& trigger,
                            Measure measure, double threshold,
                            const LocalizationConfig& config = {});

}  // namespace faultrank
