#include "faultrank/localization.hpp"

#include <algorithm>
#include <map>

#include "faultrank/error.hpp"

namespace faultrank {

std::vector<SelectedFault> select_vulnerable_faults(const CentralityScores& scores,
                                                    double threshold) {
  if (scores.scores.empty()) throw Error(ErrorCode::EmptyGraph, "no scores to select from");
  if (!(threshold >= 0.0 && threshold <= 1.0))
    throw Error(ErrorCode::InvalidConfig, "selection threshold outside [0,1]");

  const double max = *std::max_element(scores.scores.begin(), scores.scores.end());
  std::vector<SelectedFault> out;
  for (std::size_t i = 0; i < scores.scores.size(); ++i) {
    const double norm = max > 0.0 ? scores.scores[i] / max : 0.0;
    if (norm >= threshold) out.push_back(SelectedFault{scores.ids[i], scores.scores[i], norm});
  }
  std::sort(out.begin(), out.end(), [](const SelectedFault& a, const SelectedFault& b) {
    if (a.normalized != b.normalized) return a.normalized > b.normalized;
    return a.id < b.id;
  });
  return out;
}

std::vector<VulnerableComponent> map_to_components(const std::vector<SelectedFault>& faults,
                                                   const FaultCatalog& catalog) {
  std::map<ComponentId, double> best;
  for (const SelectedFault& f : faults) {
    const ComponentId& c = catalog.component_of(f.id);
    auto [it, inserted] = best.emplace(c, f.normalized);
    if (!inserted) it->second = std::max(it->second, f.normalized);
  }
  std::vector<VulnerableComponent> out;
  out.reserve(best.size());
  for (const auto& [id, score] : best) out.push_back(VulnerableComponent{id, score});
  std::stable_sort(out.begin(), out.end(),
                   [](const VulnerableComponent& a, const VulnerableComponent& b) {
                     return a.score > b.score;
                   });
  return out;
}

LocalizationReport localize(const FaultGraph& graph, const FaultId& trigger, Measure measure,
                            double threshold, const LocalizationConfig& config) {
  const PropagationResult propagated = propagate_weights(graph, trigger, config.propagation);
  const PropagationGraph fp = build_propagation_graph(propagated.graph, trigger);
  const CentralityScores scores = compute_centrality(fp, measure, config.centrality);

  LocalizationReport report;
  report.trigger = trigger;
  report.measure = measure;
  report.threshold = threshold;
  report.faults = select_vulnerable_faults(scores, threshold);
  // A lone trigger is its own argmax even when the measure scores it 0
  // (closeness without edges).
  if (fp.node_count() == 1 && report.faults.empty())
    report.faults.push_back(SelectedFault{trigger, scores.scores.front(), 1.0});
  report.components = map_to_components(report.faults, graph.catalog());
  report.config = config;
  report.propagation_converged = propagated.converged;
  report.centrality_converged = scores.converged;
  report.alpha = scores.alpha;
  report.propagation_nodes = fp.node_count();
  report.propagation_edges = fp.arc_count();
  return report;
}

LocalizationReport localize(const FaultGraph& graph, const TriggerEvent& trigger,
                            Measure measure, double threshold,
                            const LocalizationConfig& config) {
  return localize(graph, trigger.fault, measure, threshold, config);
}

}  // namespace faultrank
