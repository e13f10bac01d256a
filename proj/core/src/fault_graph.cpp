#include "faultrank/fault_graph.hpp"

#include "faultrank/error.hpp"

namespace faultrank {

FaultGraph::FaultGraph(std::shared_ptr<const FaultCatalog> catalog, Digraph graph)
    : Digraph(std::move(graph)), catalog_(std::move(catalog)) {
  if (!catalog_) throw Error(ErrorCode::InvalidConfig, "fault graph without catalog");
  const auto faults = catalog_->faults();
  if (faults.size() != node_count())
    throw Error(ErrorCode::InvalidConfig, "fault graph nodes differ from catalog faults");
  // Both sides are sorted by id.
  for (std::size_t i = 0; i < faults.size(); ++i) {
    if (faults[i].id != id(i))
      throw Error(ErrorCode::InvalidConfig, "fault graph nodes differ from catalog faults");
  }
}

FaultGraph build_fault_graph(std::shared_ptr<const FaultCatalog> catalog,
                             const ProbabilityMap& probs, const ImpactFactors& ifv) {
  std::vector<Node> nodes;
  nodes.reserve(catalog->fault_count());
  for (const Fault& f : catalog->faults()) {
    auto it = probs.find(f.id);
    if (it == probs.end())
      throw Error(ErrorCode::MissingProbability, "no probability for fault '" + f.id.str() + "'");
    nodes.push_back(Node{f.id, it->second, it->second});
  }

  std::vector<ArcSpec> arcs;
  arcs.reserve(ifv.size());
  for (const auto& [key, value] : ifv.entries()) {
    if (!catalog->find_fault(key.first) || !catalog->find_fault(key.second))
      throw Error(ErrorCode::DanglingEdge,
                  "impact factor " + key.first.str() + " -> " + key.second.str() +
                      " references an unknown fault");
    arcs.push_back(ArcSpec{key.first, key.second, value, value});
  }

  return FaultGraph(catalog, Digraph(std::move(nodes), std::move(arcs)));
}

FaultGraph build_fault_graph(const FaultCatalog& catalog, const ProbabilityMap& probs,
                             const ImpactFactors& ifv) {
  return build_fault_graph(std::make_shared<const FaultCatalog>(catalog), probs, ifv);
}

}  // namespace faultrank
