#pragma once

#include <memory>

#include "faultrank/catalog.hpp"
#include "faultrank/digraph.hpp"
#include "faultrank/estimation.hpp"

namespace faultrank {

/// Directed fault graph: one node per catalog fault weighted by its
/// occurrence probability, one arc per impact factor.
class FaultGraph : public Digraph {
 public:
  /// Throws InvalidConfig if the node set differs from the catalog's faults.
  FaultGraph(std::shared_ptr<const FaultCatalog> catalog, Digraph graph);

  const FaultCatalog& catalog() const noexcept { return *catalog_; }
  const std::shared_ptr<const FaultCatalog>& catalog_ptr() const noexcept { return catalog_; }

 private:
  std::shared_ptr<const FaultCatalog> catalog_;
};

/// Node weights (current and independent) come from `probs`; arc impact and
/// weight both come from `ifv`.
///
/// Throws MissingProbability or DanglingEdge.
FaultGraph build_fault_graph(std::shared_ptr<const FaultCatalog> catalog,
                             const ProbabilityMap& probs, const ImpactFactors& ifv);

FaultGraph build_fault_graph(const FaultCatalog& catalog, const ProbabilityMap& probs,
                             const ImpactFactors& ifv);

}  // namespace faultrank
