#pragma once

#include <string>

#include "faultrank/digraph.hpp"

namespace faultrank {

struct DotStyle {
  std::string graph_name = "faults";
  /// Edge pen width is this times the edge weight (floored at min_penwidth).
  double penwidth_scale = 5.0;
  double min_penwidth = 0.2;
  /// Digits after the decimal point in labels.
  int precision = 4;
};

/// Graphviz digraph with node labels "id\np=<weight>", edge labels
/// "ifv=<weight>" and pen width proportional to the edge weight.
std::string to_dot(const Digraph& graph, const DotStyle& style = {});

}  // namespace faultrank
