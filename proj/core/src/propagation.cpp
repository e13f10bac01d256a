#include "faultrank/propagation.hpp"

#include <algorithm>
#include <cmath>

#include "faultrank/error.hpp"

namespace faultrank {

std::string_view to_string(Signal signal) noexcept {
  switch (signal) {
    case Signal::Traffic: return "traffic";
    case Signal::Latency: return "latency";
    case Signal::Saturation: return "saturation";
    case Signal::Errors: return "errors";
  }
  return "unknown";
}

std::string_view to_string(CombineMode mode) noexcept {
  return mode == CombineMode::Literal ? "literal" : "noisy-or";
}

TriggerDetection detect_triggers(std::span<const SignalSample> samples,
                                 const SignalThresholds& thresholds,
                                 const FaultCatalog& catalog) {
  const std::pair<Signal, double> limits[] = {{Signal::Traffic, thresholds.traffic},
                                              {Signal::Latency, thresholds.latency},
                                              {Signal::Saturation, thresholds.saturation},
                                              {Signal::Errors, thresholds.errors}};
  for (const auto& [signal, limit] : limits) {
    if (!(limit >= 0.0 && limit <= 1.0))
      throw Error(ErrorCode::InvalidSignal,
                  "threshold for " + std::string(to_string(signal)) + " outside [0,1]");
  }

  TriggerDetection out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const SignalSample& s = samples[i];
    if (!catalog.find_component(s.component))
      throw Error(ErrorCode::UnknownComponent, "unknown component '" + s.component.str() + "'");
    const double values[] = {s.traffic, s.latency, s.saturation, s.errors};
    std::vector<Signal> crossed;
    for (std::size_t k = 0; k < 4; ++k) {
      if (!(values[k] >= 0.0 && values[k] <= 1.0))
        throw Error(ErrorCode::InvalidSignal, "sample " + std::to_string(i) + " " +
                                                  std::string(to_string(limits[k].first)) +
                                                  " outside [0,1]");
      if (values[k] > limits[k].second) crossed.push_back(limits[k].first);
    }
    if (crossed.empty()) continue;
    if (s.observed_fault) {
      catalog.fault_index(*s.observed_fault);
      out.triggers.push_back(TriggerEvent{*s.observed_fault, std::move(crossed)});
    } else {
      out.unattributed.push_back(UnattributedCrossing{i, s.component, std::move(crossed)});
    }
  }
  return out;
}

namespace {

NodeIndex trigger_index(const Digraph& graph, const FaultId& trigger) {
  if (auto i = graph.find(trigger)) return *i;
  throw Error(ErrorCode::UnknownTrigger, "trigger '" + trigger.str() + "' is not in the graph");
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

PropagationResult propagate_weights(const FaultGraph& graph, const FaultId& trigger,
                                    const PropagationConfig& config) {
  if (!(config.tolerance > 0.0) || !(config.cycle_epsilon >= 0.0) || config.max_iters == 0)
    throw Error(ErrorCode::InvalidConfig, "propagation config out of range");

  const NodeIndex root = trigger_index(graph, trigger);
  const auto nodes = graph.nodes();
  const auto arcs = graph.arcs();

  std::vector<double> p(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) p[i] = nodes[i].independent_probability;
  std::vector<double> e(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) e[k] = arcs[k].impact;

  const std::vector<bool> reach = graph.reachable_from(root);
  const SccDecomposition scc = graph.strongly_connected_components();

  auto apply = [&](std::size_t k, double z) {
    const Arc& a = arcs[k];
    const double spread = p[a.source] * a.impact;
    e[k] = clamp01(spread + z);
    if (a.target == root) return;
    if (config.combine == CombineMode::Literal) {
      p[a.target] = spread;
    } else {
      p[a.target] = 1.0 - (1.0 - nodes[a.target].independent_probability) * (1.0 - spread);
    }
  };

  PropagationResult result{graph, true, 0, 0};
  // Arc index of an out-arc span element.
  auto arc_index = [&](const Arc& a) { return static_cast<std::size_t>(&a - arcs.data()); };

  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    const auto& members = scc.components[c];
    if (!reach[members.front()]) continue;

    for (NodeIndex v : members) {
      if (v == root) continue;
      for (std::size_t k : graph.in_arcs(v)) {
        const NodeIndex u = arcs[k].source;
        if (reach[u] && scc.component_of[u] != c) apply(k, 0.0);
      }
    }

    if (members.size() < 2) continue;
    ++result.cyclic_components;
    std::size_t sweeps = 0;
    bool settled = false;
    while (sweeps < config.max_iters) {
      double delta = 0.0;
      for (NodeIndex u : members) {
        for (const Arc& a : graph.out_arcs(u)) {
          if (scc.component_of[a.target] != c) continue;
          const double before = p[a.target];
          apply(arc_index(a), config.cycle_epsilon);
          delta = std::max(delta, std::abs(p[a.target] - before));
        }
      }
      ++sweeps;
      if (delta < config.tolerance) {
        settled = true;
        break;
      }
    }
    result.iterations = std::max(result.iterations, sweeps);
    result.converged = result.converged && settled;
  }

  p[root] = 1.0;
  for (double& w : p) w = clamp01(w);
  result.graph = FaultGraph(graph.catalog_ptr(), graph.with_weights(std::move(p), std::move(e)));
  return result;
}

PropagationResult propagate_weights(const FaultGraph& graph, const TriggerEvent& trigger,
                                    const PropagationConfig& config) {
  return propagate_weights(graph, trigger.fault, config);
}

PropagationGraph::PropagationGraph(std::shared_ptr<const FaultCatalog> catalog, Digraph graph,
                                   FaultId root)
    : Digraph(std::move(graph)), catalog_(std::move(catalog)), root_(std::move(root)) {
  root_index_ = trigger_index(*this, root_);
}

PropagationGraph build_propagation_graph(const FaultGraph& graph, const FaultId& trigger) {
  const NodeIndex root = trigger_index(graph, trigger);
  Digraph sub = graph.induced_subgraph(graph.reachable_from(root));

  std::vector<double> node_weights;
  node_weights.reserve(sub.node_count());
  for (const Node& n : sub.nodes()) node_weights.push_back(n.id == trigger ? 1.0 : n.weight);
  std::vector<double> arc_weights;
  arc_weights.reserve(sub.arc_count());
  for (const Arc& a : sub.arcs()) arc_weights.push_back(a.weight);

  return PropagationGraph(graph.catalog_ptr(),
                          sub.with_weights(std::move(node_weights), std::move(arc_weights)),
                          trigger);
}

PropagationGraph build_propagation_graph(const FaultGraph& graph, const TriggerEvent& trigger) {
  return build_propagation_graph(graph, trigger.fault);
}

}  // namespace faultrank
