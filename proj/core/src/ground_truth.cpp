#include "faultrank/ground_truth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "faultrank/error.hpp"
#include "faultrank/random.hpp"

namespace faultrank {

std::vector<double> percolation_exact(const Digraph& graph, NodeIndex trigger) {
  const std::vector<bool> reach = graph.reachable_from(trigger);
  std::vector<NodeIndex> local;  // local bit -> node; trigger is bit 0
  std::vector<std::size_t> bit_of(graph.node_count(), 0);
  local.push_back(trigger);
  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    if (reach[v] && v != trigger) {
      bit_of[v] = local.size();
      local.push_back(v);
    }
  }
  bit_of[trigger] = 0;
  const std::size_t m = local.size();
  if (m > kMaxExactNodes)
    throw Error(ErrorCode::InvalidConfig,
                "exact percolation limited to " + std::to_string(kMaxExactNodes) + " reachable nodes");

  // miss[v][u] = probability the arc u -> v does not fire.
  std::vector<double> miss(m * m, 1.0);
  for (const Arc& a : graph.arcs()) {
    if (reach[a.source] && reach[a.target])
      miss[bit_of[a.target] * m + bit_of[a.source]] = 1.0 - a.impact;
  }

  // none_from[T * m + v]: no arc from the set T into v fires.
  const std::size_t subsets = std::size_t{1} << m;
  std::vector<double> none_from(subsets * m, 1.0);
  for (std::size_t t = 1; t < subsets; ++t) {
    const std::size_t low = static_cast<std::size_t>(std::countr_zero(t));
    const std::size_t rest = t & (t - 1);
    for (std::size_t v = 0; v < m; ++v)
      none_from[t * m + v] = none_from[rest * m + v] * miss[v * m + low];
  }

  // connected[S]: every node of S is reached from the trigger through fired
  // arcs inside S. It is one minus the chance that the reached part stops at
  // a proper subset T of S.
  std::vector<double> connected(subsets, 0.0);
  connected[1] = 1.0;
  auto crossing_miss = [&](std::size_t from, std::size_t into) {
    double p = 1.0;
    for (std::size_t bits = into; bits; bits &= bits - 1)
      p *= none_from[from * m + static_cast<std::size_t>(std::countr_zero(bits))];
    return p;
  };
  for (std::size_t s = 3; s < subsets; s += 2) {
    double stuck = 0.0;
    const std::size_t others = s & ~std::size_t{1};
    // Proper subsets T of S that contain the trigger.
    for (std::size_t sub = (others - 1) & others;; sub = (sub - 1) & others) {
      const std::size_t t = sub | 1;
      stuck += connected[t] * crossing_miss(t, s & ~t);
      if (sub == 0) break;
    }
    connected[s] = 1.0 - stuck;
  }

  const std::size_t full = subsets - 1;
  std::vector<double> reached_local(m, 0.0);
  for (std::size_t s = 1; s < subsets; s += 2) {
    const double final_set = connected[s] * crossing_miss(s, full & ~s);
    for (std::size_t bits = s; bits; bits &= bits - 1)
      reached_local[static_cast<std::size_t>(std::countr_zero(bits))] += final_set;
  }

  std::vector<double> out(graph.node_count(), 0.0);
  for (std::size_t i = 0; i < m; ++i) out[local[i]] = std::clamp(reached_local[i], 0.0, 1.0);
  out[trigger] = 1.0;
  return out;
}

std::vector<double> percolation_monte_carlo(const Digraph& graph, NodeIndex trigger,
                                            std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be positive");
  const auto arcs = graph.arcs();
  // Fire when a raw 64-bit draw falls below impact * 2^64.
  std::vector<std::uint64_t> fire_below(arcs.size());
  std::vector<bool> always(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    always[k] = arcs[k].impact >= 1.0;
    fire_below[k] = always[k] ? 0 : static_cast<std::uint64_t>(std::ldexp(arcs[k].impact, 64));
  }

  Rng rng(seed);
  const std::size_t n = graph.node_count();
  std::vector<std::size_t> hits(n, 0);
  std::vector<std::size_t> stamp(n, 0);
  std::vector<NodeIndex> frontier;
  for (std::size_t trial = 1; trial <= trials; ++trial) {
    frontier.assign(1, trigger);
    stamp[trigger] = trial;
    while (!frontier.empty()) {
      const NodeIndex u = frontier.back();
      frontier.pop_back();
      ++hits[u];
      for (const Arc& a : graph.out_arcs(u)) {
        if (stamp[a.target] == trial) continue;
        const std::size_t k = static_cast<std::size_t>(&a - arcs.data());
        if (always[k] || rng.next() < fire_below[k]) {
          stamp[a.target] = trial;
          frontier.push_back(a.target);
        }
      }
    }
  }

  std::vector<double> out(n);
  for (std::size_t v = 0; v < n; ++v)
    out[v] = static_cast<double>(hits[v]) / static_cast<double>(trials);
  return out;
}

GroundTruth ground_truth(const FaultGraph& graph, const FaultId& trigger,
                         const GroundTruthConfig& config) {
  const auto root = graph.find(trigger);
  if (!root)
    throw Error(ErrorCode::UnknownTrigger, "trigger '" + trigger.str() + "' is not in the graph");
  if (!(config.truth_cutoff >= 0.0 && config.truth_cutoff <= 1.0))
    throw Error(ErrorCode::InvalidConfig, "truth_cutoff outside [0,1]");

  GroundTruth truth;
  truth.trigger = trigger;

  bool exact = config.mode == GroundTruthMode::Exact;
  if (config.mode == GroundTruthMode::Auto) {
    const auto reach = graph.reachable_from(*root);
    const auto reachable = static_cast<std::size_t>(std::count(reach.begin(), reach.end(), true));
    exact = reachable <= std::min(config.exact_limit, kMaxExactNodes);
  }

  std::vector<double> probs;
  if (exact) {
    probs = percolation_exact(graph, *root);
  } else {
    probs = percolation_monte_carlo(graph, *root, config.trials, config.seed);
    truth.trials = config.trials;
  }
  truth.exact = exact;

  for (NodeIndex v = 0; v < graph.node_count(); ++v) {
    truth.occurrence_probabilities.emplace(graph.id(v), probs[v]);
    if (v == *root || probs[v] >= config.truth_cutoff) {
      truth.vulnerable_faults.insert(graph.id(v));
      truth.vulnerable_components.insert(graph.catalog().component_of(graph.id(v)));
    }
  }
  return truth;
}

}  // namespace faultrank
