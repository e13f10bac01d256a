#include "faultrank/digraph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "faultrank/error.hpp"

namespace faultrank {

namespace {

bool unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

Digraph::Digraph(std::vector<Node> nodes, std::vector<ArcSpec> arcs) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i > 0 && nodes_[i - 1].id == nodes_[i].id)
      throw Error(ErrorCode::DuplicateId, "duplicate node '" + nodes_[i].id.str() + "'");
    if (!unit_interval(nodes_[i].independent_probability) || !unit_interval(nodes_[i].weight))
      throw Error(ErrorCode::InvalidProbability,
                  "node '" + nodes_[i].id.str() + "' weight outside [0,1]");
  }

  arcs_.reserve(arcs.size());
  for (const ArcSpec& a : arcs) {
    const auto s = find(a.source);
    const auto t = find(a.target);
    if (!s || !t)
      throw Error(ErrorCode::DanglingEdge,
                  "edge " + a.source.str() + " -> " + a.target.str() + " has an unknown endpoint");
    if (*s == *t) throw Error(ErrorCode::SelfLoop, "self-loop on '" + a.source.str() + "'");
    if (!unit_interval(a.impact) || !unit_interval(a.weight))
      throw Error(ErrorCode::InvalidProbability,
                  "edge " + a.source.str() + " -> " + a.target.str() + " weight outside [0,1]");
    arcs_.push_back(Arc{*s, *t, a.impact, a.weight});
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
    return std::tie(a.source, a.target) < std::tie(b.source, b.target);
  });
  for (std::size_t i = 1; i < arcs_.size(); ++i) {
    if (arcs_[i - 1].source == arcs_[i].source && arcs_[i - 1].target == arcs_[i].target)
      throw Error(ErrorCode::DuplicateId, "duplicate edge " + nodes_[arcs_[i].source].id.str() +
                                              " -> " + nodes_[arcs_[i].target].id.str());
  }
  index();
}

void Digraph::index() {
  const std::size_t n = nodes_.size();
  out_offset_.assign(n + 1, 0);
  in_offset_.assign(n + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_offset_[a.source + 1];
    ++in_offset_[a.target + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    out_offset_[i + 1] += out_offset_[i];
    in_offset_[i + 1] += in_offset_[i];
  }
  // Arcs are sorted by source, so filling in-lists in arc order keeps each
  // in-list sorted by source.
  in_arc_.assign(arcs_.size(), 0);
  std::vector<std::size_t> cursor(in_offset_.begin(), in_offset_.end() - 1);
  for (std::size_t k = 0; k < arcs_.size(); ++k) in_arc_[cursor[arcs_[k].target]++] = k;
}

std::optional<NodeIndex> Digraph::find(const FaultId& id) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                             [](const Node& n, const FaultId& key) { return n.id < key; });
  if (it == nodes_.end() || it->id != id) return std::nullopt;
  return static_cast<NodeIndex>(it - nodes_.begin());
}

NodeIndex Digraph::index_of(const FaultId& id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::UnknownNode, "unknown node '" + id.str() + "'");
}

std::span<const Arc> Digraph::out_arcs(NodeIndex u) const {
  return std::span<const Arc>(arcs_).subspan(out_offset_[u], out_offset_[u + 1] - out_offset_[u]);
}

std::span<const std::size_t> Digraph::in_arcs(NodeIndex v) const {
  return std::span<const std::size_t>(in_arc_).subspan(in_offset_[v],
                                                       in_offset_[v + 1] - in_offset_[v]);
}

const Arc* Digraph::find_arc(NodeIndex u, NodeIndex v) const {
  const auto out = out_arcs(u);
  auto it = std::lower_bound(out.begin(), out.end(), v,
                             [](const Arc& a, NodeIndex key) { return a.target < key; });
  if (it == out.end() || it->target != v) return nullptr;
  return &*it;
}

Digraph Digraph::with_weights(std::vector<double> node_weights,
                              std::vector<double> arc_weights) const {
  if (node_weights.size() != nodes_.size() || arc_weights.size() != arcs_.size())
    throw Error(ErrorCode::InvalidConfig, "weight vector size mismatch");
  Digraph g = *this;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!unit_interval(node_weights[i]))
      throw Error(ErrorCode::InvalidProbability, "node weight outside [0,1]");
    g.nodes_[i].weight = node_weights[i];
  }
  for (std::size_t k = 0; k < arcs_.size(); ++k) {
    if (!unit_interval(arc_weights[k]))
      throw Error(ErrorCode::InvalidProbability, "edge weight outside [0,1]");
    g.arcs_[k].weight = arc_weights[k];
  }
  return g;
}

Digraph Digraph::induced_subgraph(const std::vector<bool>& keep) const {
  Digraph g;
  std::vector<NodeIndex> remap(nodes_.size(), 0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!keep[i]) continue;
    remap[i] = g.nodes_.size();
    g.nodes_.push_back(nodes_[i]);
  }
  for (const Arc& a : arcs_) {
    if (keep[a.source] && keep[a.target])
      g.arcs_.push_back(Arc{remap[a.source], remap[a.target], a.impact, a.weight});
  }
  g.index();
  return g;
}

std::vector<bool> Digraph::reachable_from(NodeIndex source) const {
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<NodeIndex> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    const NodeIndex u = stack.back();
    stack.pop_back();
    for (const Arc& a : out_arcs(u)) {
      if (!seen[a.target]) {
        seen[a.target] = true;
        stack.push_back(a.target);
      }
    }
  }
  return seen;
}

SccDecomposition Digraph::strongly_connected_components() const {
  const std::size_t n = nodes_.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

  // Iterative Tarjan.
  std::vector<std::size_t> order(n, kUnvisited), low(n, 0), label(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeIndex> stack;
  std::vector<std::pair<NodeIndex, std::size_t>> call;  // node, next out-arc offset
  std::size_t counter = 0, n_components = 0;

  for (NodeIndex root = 0; root < n; ++root) {
    if (order[root] != kUnvisited) continue;
    call.emplace_back(root, 0);
    while (!call.empty()) {
      auto& [u, next] = call.back();
      if (next == 0 && order[u] == kUnvisited) {
        order[u] = low[u] = counter++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      const auto out = out_arcs(u);
      if (next < out.size()) {
        const NodeIndex v = out[next++].target;
        if (order[v] == kUnvisited) {
          call.emplace_back(v, 0);
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], order[v]);
        }
        continue;
      }
      if (low[u] == order[u]) {
        NodeIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          label[w] = n_components;
        } while (w != u);
        ++n_components;
      }
      const NodeIndex finished = u;
      call.pop_back();
      if (!call.empty()) {
        const NodeIndex parent = call.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }

  // Kahn over the condensation; ready components leave in order of their
  // smallest member so the topological order is deterministic.
  std::vector<std::vector<NodeIndex>> members(n_components);
  for (NodeIndex v = 0; v < n; ++v) members[label[v]].push_back(v);
  std::vector<std::size_t> indegree(n_components, 0);
  std::vector<std::vector<std::size_t>> successors(n_components);
  for (const Arc& a : arcs_) {
    const std::size_t s = label[a.source], t = label[a.target];
    if (s != t) {
      successors[s].push_back(t);
      ++indegree[t];
    }
  }
  using Entry = std::pair<NodeIndex, std::size_t>;  // smallest member, component
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t c = 0; c < n_components; ++c)
    if (indegree[c] == 0) ready.emplace(members[c].front(), c);

  SccDecomposition result;
  result.component_of.assign(n, 0);
  while (!ready.empty()) {
    const std::size_t c = ready.top().second;
    ready.pop();
    for (NodeIndex v : members[c]) result.component_of[v] = result.components.size();
    result.components.push_back(std::move(members[c]));
    for (std::size_t t : successors[c])
      if (--indegree[t] == 0) ready.emplace(members[t].front(), t);
  }
  return result;
}

bool Digraph::weakly_connected() const {
  if (nodes_.empty()) return true;
  std::vector<bool> seen(nodes_.size(), false);
  std::vector<NodeIndex> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const NodeIndex u = stack.back();
    stack.pop_back();
    auto visit = [&](NodeIndex v) {
      if (!seen[v]) {
        seen[v] = true;
        ++count;
        stack.push_back(v);
      }
    };
    for (const Arc& a : out_arcs(u)) visit(a.target);
    for (std::size_t k : in_arcs(u)) visit(arcs_[k].source);
  }
  return count == nodes_.size();
}

}  // namespace faultrank
