#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "faultrank/ids.hpp"

namespace faultrank {

using NodeIndex = std::size_t;

struct Node {
  FaultId id;
  /// Probability of arising without being triggered.
  double independent_probability = 0.0;
  /// Current occurrence probability (equal to the independent one until
  /// propagation updates it).
  double weight = 0.0;
};

struct Arc {
  NodeIndex source = 0;
  NodeIndex target = 0;
  /// Impact factor ifv(source, target).
  double impact = 0.0;
  /// Current edge weight (equal to the impact factor until propagation).
  double weight = 0.0;
};

struct ArcSpec {
  FaultId source;
  FaultId target;
  double impact = 0.0;
  double weight = 0.0;
};

/// Strongly connected components in topological order of the condensation
/// (every arc between components goes from a lower to a higher position).
struct SccDecomposition {
  std::vector<std::vector<NodeIndex>> components;  // members ascending
  std::vector<std::size_t> component_of;           // node -> position
};

/// Weighted directed graph over fault ids. Nodes are indexed in ascending id
/// order and arcs are sorted by (source, target), so iteration order always
/// follows ascending FaultId.
class Digraph {
 public:
  Digraph() = default;

  /// Throws DuplicateId (node or arc), DanglingEdge, SelfLoop, or
  /// InvalidProbability when any weight lies outside [0,1].
  Digraph(std::vector<Node> nodes, std::vector<ArcSpec> arcs);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }

  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  const Node& node(NodeIndex i) const { return nodes_[i]; }
  const FaultId& id(NodeIndex i) const { return nodes_[i].id; }

  std::optional<NodeIndex> find(const FaultId& id) const;
  /// Throws UnknownNode.
  NodeIndex index_of(const FaultId& id) const;

  /// Arcs leaving `u`, ordered by target.
  std::span<const Arc> out_arcs(NodeIndex u) const;
  /// Indices into arcs() of arcs entering `v`, ordered by source.
  std::span<const std::size_t> in_arcs(NodeIndex v) const;
  std::size_t out_degree(NodeIndex u) const { return out_offset_[u + 1] - out_offset_[u]; }

  const Arc* find_arc(NodeIndex u, NodeIndex v) const;

  /// Same topology with replaced current weights (sizes must match).
  Digraph with_weights(std::vector<double> node_weights,
                       std::vector<double> arc_weights) const;

  /// Subgraph induced by the marked nodes, preserving all weights.
  Digraph induced_subgraph(const std::vector<bool>& keep) const;

  std::vector<bool> reachable_from(NodeIndex source) const;

  SccDecomposition strongly_connected_components() const;

  /// True if every node can be reached from every other ignoring direction.
  bool weakly_connected() const;

 private:
  void index();

  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_offset_;
  std::vector<std::size_t> in_offset_;
  std::vector<std::size_t> in_arc_;
};

}  // namespace faultrank
