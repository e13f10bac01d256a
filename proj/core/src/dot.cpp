#include "faultrank/dot.hpp"

#include <algorithm>
#include <cstdio>

namespace faultrank {

namespace {

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + '"';
}

std::string fixed(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, value);
  return buf;
}

}  // namespace

std::string to_dot(const Digraph& graph, const DotStyle& style) {
  std::string out = "digraph " + quoted(style.graph_name) + " {\n";
  out += "  node [shape=ellipse];\n";
  for (const Node& n : graph.nodes()) {
    const std::string id = quoted(n.id.str());
    const std::string label = id.substr(0, id.size() - 1) + "\\np=" + fixed(n.weight, style.precision) + '"';
    out += "  " + id + " [label=" + label + "];\n";
  }
  for (const Arc& a : graph.arcs()) {
    const double pen = std::max(style.min_penwidth, style.penwidth_scale * a.weight);
    out += "  " + quoted(graph.id(a.source).str()) + " -> " + quoted(graph.id(a.target).str()) +
           " [label=\"ifv=" + fixed(a.weight, style.precision) + "\", penwidth=" +
           fixed(pen, 3) + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace faultrank
