#include <gtest/gtest.h>

#include <algorithm>

#include "errors.hpp"
#include "faultrank/propagation.hpp"
#include "graphs.hpp"

namespace faultrank {
namespace {

using testing::code_of;
using testing::make_fault_graph;

FaultGraph fig42() {
  return make_fault_graph({{"f1i", 0.179}, {"f2j", 0.232}}, {{"f2j", "f1i", 0.34}}, {"C1", "C2"});
}

double weight_of(const Digraph& g, const char* id) { return g.node(g.index_of(FaultId(id))).weight; }

// Signals ---------------------------------------------------------------

std::shared_ptr<const FaultCatalog> signal_catalog() {
  return std::make_shared<const FaultCatalog>(build_catalog(
      {Component{ComponentId("C1"), "C1", ComponentKind::VM, {}}},
      {Fault{FaultId("f11"), ComponentId("C1"), 0.1}}));
}

TEST(DetectTriggers, SingleCrossing) {
  const auto catalog = signal_catalog();
  const SignalSample s{ComponentId("C1"), 0.1, 0.95, 0.1, 0.1, FaultId("f11")};
  const auto d = detect_triggers(std::vector{s}, {}, *catalog);
  ASSERT_EQ(d.triggers.size(), 1u);
  EXPECT_EQ(d.triggers[0].fault, FaultId("f11"));
  EXPECT_EQ(d.triggers[0].crossed_signals, std::vector{Signal::Latency});
}

TEST(DetectTriggers, EqualityDoesNotCross) {
  const auto catalog = signal_catalog();
  const SignalSample s{ComponentId("C1"), 0.9, 0.9, 0.9, 0.9, FaultId("f11")};
  EXPECT_TRUE(detect_triggers(std::vector{s}, {}, *catalog).triggers.empty());
}

TEST(DetectTriggers, MultipleSignalsAndUnattributed) {
  const auto catalog = signal_catalog();
  const std::vector samples{SignalSample{ComponentId("C1"), 0.95, 0.1, 0.1, 0.99, FaultId("f11")},
                            SignalSample{ComponentId("C1"), 0.1, 0.1, 0.91, 0.1, std::nullopt}};
  const auto d = detect_triggers(samples, {}, *catalog);
  ASSERT_EQ(d.triggers.size(), 1u);
  EXPECT_EQ(d.triggers[0].crossed_signals, (std::vector{Signal::Traffic, Signal::Errors}));
  ASSERT_EQ(d.unattributed.size(), 1u);
  EXPECT_EQ(d.unattributed[0].sample_index, 1u);
  EXPECT_EQ(d.unattributed[0].crossed_signals, std::vector{Signal::Saturation});
}

TEST(DetectTriggers, Errors) {
  const auto catalog = signal_catalog();
  auto run = [&](SignalSample s, SignalThresholds t = {}) { detect_triggers(std::vector{s}, t, *catalog); };
  EXPECT_EQ(code_of([&] { run({ComponentId("C9"), 0, 0, 0, 0, {}}); }), ErrorCode::UnknownComponent);
  EXPECT_EQ(code_of([&] { run({ComponentId("C1"), 1.0, 0, 0, 0, FaultId("zz")}); }), ErrorCode::UnknownFault);
  EXPECT_EQ(code_of([&] { run({ComponentId("C1"), 1.5, 0, 0, 0, {}}); }), ErrorCode::InvalidSignal);
  EXPECT_EQ(code_of([&] { run({ComponentId("C1"), 0, 0, 0, 0, {}}, {.traffic = 2.0}); }), ErrorCode::InvalidSignal);
}

// Propagation -----------------------------------------------------------

TEST(Propagate, WorkedTwoFaultExample) {
  const auto r = propagate_weights(fig42(), FaultId("f2j"));
  EXPECT_NEAR(r.graph.arcs()[0].weight, 0.07888, 1e-12);
  EXPECT_NEAR(weight_of(r.graph, "f1i"), 0.07888, 1e-12);
  EXPECT_EQ(weight_of(r.graph, "f2j"), 1.0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.cyclic_components, 0u);
}

TEST(Propagate, NoisyOrKeepsIndependentProbability) {
  const auto r = propagate_weights(fig42(), FaultId("f2j"), {.combine = CombineMode::NoisyOr});
  EXPECT_NEAR(weight_of(r.graph, "f1i"), 1.0 - (1.0 - 0.179) * (1.0 - 0.07888), 1e-15);
}

TEST(Propagate, EdgelessOnlyTriggerChanges) {
  const FaultGraph g = make_fault_graph({{"a", 0.1}, {"b", 0.2}, {"c", 0.3}}, {});
  const auto r = propagate_weights(g, FaultId("b"));
  EXPECT_EQ(weight_of(r.graph, "a"), 0.1);
  EXPECT_EQ(weight_of(r.graph, "b"), 1.0);
  EXPECT_EQ(weight_of(r.graph, "c"), 0.3);
}

TEST(Propagate, TwoCycleTerminatesBounded) {
  const FaultGraph g = make_fault_graph({{"a", 0.3}, {"b", 0.2}}, {{"a", "b", 0.5}, {"b", "a", 0.5}});
  const PropagationConfig config;
  const auto r = propagate_weights(g, FaultId("a"), config);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.cyclic_components, 1u);
  EXPECT_LE(r.iterations, config.max_iters);
  for (const Node& n : r.graph.nodes()) {
    EXPECT_GE(n.weight, 0.0);
    EXPECT_LE(n.weight, 1.0);
  }
  for (const Arc& a : r.graph.arcs()) {
    EXPECT_GE(a.weight, 0.0);
    EXPECT_LE(a.weight, 1.0);
  }
  // Arcs inside the cycle carry the constant.
  EXPECT_NEAR(r.graph.find_arc(0, 1)->weight, 0.3 * 0.5 + config.cycle_epsilon, 1e-15);
}

TEST(Propagate, IterationCapIsFlaggedNotThrown) {
  const FaultGraph g = make_fault_graph({{"a", 0.9}, {"b", 0.2}, {"c", 0.3}},
                                        {{"a", "b", 0.9}, {"b", "c", 0.8}, {"c", "b", 0.7}});
  const auto r = propagate_weights(g, FaultId("a"), {.max_iters = 1});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1u);
}

TEST(Propagate, Errors) {
  EXPECT_EQ(code_of([] { propagate_weights(fig42(), FaultId("nope")); }), ErrorCode::UnknownTrigger);
  EXPECT_EQ(code_of([] { propagate_weights(fig42(), FaultId("f2j"), {.tolerance = 0.0}); }),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { build_propagation_graph(fig42(), FaultId("nope")); }), ErrorCode::UnknownTrigger);
}

// Independent single-pass evaluation for acyclic graphs: each reachable
// non-root node takes its value from the last in-arc applied, i.e. the
// reachable predecessor with the largest index.
struct DagExpectation {
  std::vector<double> nodes;
  std::vector<double> arcs;
};

DagExpectation dag_oracle(const Digraph& g, NodeIndex root, CombineMode mode) {
  const std::size_t n = g.node_count();
  std::vector<bool> reach(n, false);
  reach[root] = true;
  for (bool grew = true; grew;) {
    grew = false;
    for (const Arc& a : g.arcs())
      if (reach[a.source] && !reach[a.target]) reach[a.target] = grew = true;
  }
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = g.node(i).independent_probability;
  std::vector<bool> done(n, false);
  for (std::size_t placed = 0; placed < n;) {
    for (NodeIndex v = 0; v < n; ++v) {
      if (done[v]) continue;
      bool ready = true;
      std::optional<NodeIndex> last;
      for (const Arc& a : g.arcs()) {
        if (a.target != v) continue;
        if (!done[a.source]) ready = false;
        if (reach[a.source] && (!last || a.source > *last)) last = a.source;
      }
      if (!ready) continue;
      if (v != root && last) {
        const double spread = p[*last] * g.find_arc(*last, v)->impact;
        p[v] = mode == CombineMode::Literal
                   ? spread
                   : 1.0 - (1.0 - g.node(v).independent_probability) * (1.0 - spread);
      }
      done[v] = true;
      ++placed;
    }
  }
  DagExpectation out;
  for (const Arc& a : g.arcs()) out.arcs.push_back(reach[a.source] ? p[a.source] * a.impact : a.impact);
  p[root] = 1.0;
  out.nodes = p;
  return out;
}

bool acyclic(const Digraph& g) {
  const auto scc = g.strongly_connected_components();
  return scc.components.size() == g.node_count();
}

TEST(Propagate, MatchesSinglePassOracleOnDags) {
  Rng rng(23);
  int checked = 0;
  while (checked < 300) {
    const FaultGraph g = testing::random_fault_graph(rng, 2 + rng.below(14), rng.uniform(0.05, 0.3));
    if (!acyclic(g)) continue;
    ++checked;
    const NodeIndex root = rng.below(g.node_count());
    for (CombineMode mode : {CombineMode::Literal, CombineMode::NoisyOr}) {
      const auto expected = dag_oracle(g, root, mode);
      const auto r = propagate_weights(g, g.id(root), {.combine = mode});
      ASSERT_EQ(r.cyclic_components, 0u);
      for (std::size_t i = 0; i < g.node_count(); ++i)
        ASSERT_NEAR(r.graph.node(i).weight, expected.nodes[i], 1e-15) << i;
      for (std::size_t k = 0; k < g.arc_count(); ++k)
        ASSERT_NEAR(r.graph.arcs()[k].weight, expected.arcs[k], 1e-15) << k;
    }
  }
}

TEST(Propagate, RandomGraphProperties) {
  Rng rng(31);
  for (int round = 0; round < 300; ++round) {
    const FaultGraph g = testing::random_fault_graph(rng, 1 + rng.below(20), rng.uniform(0.02, 0.4));
    const FaultId trigger = g.id(rng.below(g.node_count()));
    const PropagationConfig config{.max_iters = 50};
    const auto r = propagate_weights(g, trigger, config);

    ASSERT_LE(r.iterations, config.max_iters);
    for (const Node& n : r.graph.nodes()) ASSERT_TRUE(n.weight >= 0.0 && n.weight <= 1.0);
    for (const Arc& a : r.graph.arcs()) ASSERT_TRUE(a.weight >= 0.0 && a.weight <= 1.0);

    // Re-running on the output reproduces it.
    const auto again = propagate_weights(r.graph, trigger, config);
    for (std::size_t i = 0; i < g.node_count(); ++i)
      ASSERT_EQ(again.graph.node(i).weight, r.graph.node(i).weight);
    for (std::size_t k = 0; k < g.arc_count(); ++k)
      ASSERT_EQ(again.graph.arcs()[k].weight, r.graph.arcs()[k].weight);

    // The propagation graph is the induced subgraph on the reachable set.
    const PropagationGraph fp = build_propagation_graph(r.graph, trigger);
    const auto reach = g.reachable_from(g.index_of(trigger));
    ASSERT_EQ(fp.node_count(), static_cast<std::size_t>(std::count(reach.begin(), reach.end(), true)));
    for (const Node& n : fp.nodes()) ASSERT_TRUE(reach[g.index_of(n.id)]);
    std::size_t arcs = 0;
    for (const Arc& a : g.arcs()) {
      if (!reach[a.source] || !reach[a.target]) continue;
      ++arcs;
      const Arc* b = fp.find_arc(fp.index_of(g.id(a.source)), fp.index_of(g.id(a.target)));
      ASSERT_NE(b, nullptr);
      ASSERT_EQ(b->weight, r.graph.find_arc(a.source, a.target)->weight);
    }
    ASSERT_EQ(fp.arc_count(), arcs);
    ASSERT_EQ(fp.node(fp.root_index()).weight, 1.0);
    ASSERT_EQ(fp.root(), trigger);

    // Adding an arc never shrinks the reachable set.
    const NodeIndex u = rng.below(g.node_count()), v = rng.below(g.node_count());
    if (u != v && !g.find_arc(u, v)) {
      const Digraph bigger = testing::with_extra_arc(g, u, v, 0.5);
      const FaultGraph bg(g.catalog_ptr(), bigger);
      const PropagationGraph fp2 = build_propagation_graph(bg, trigger);
      ASSERT_GE(fp2.node_count(), fp.node_count());
      for (const Node& n : fp.nodes()) ASSERT_TRUE(fp2.find(n.id).has_value());
    }
  }
}

TEST(PropagationGraph, WorkedExampleKeepsBothNodes) {
  const auto r = propagate_weights(fig42(), FaultId("f2j"));
  const auto fp = build_propagation_graph(r.graph, FaultId("f2j"));
  EXPECT_EQ(fp.node_count(), 2u);
  EXPECT_EQ(fp.arc_count(), 1u);
  EXPECT_EQ(fp.id(fp.root_index()), FaultId("f2j"));
}

TEST(PropagationGraph, SinkTriggerIsSingleNode) {
  const auto fp = build_propagation_graph(fig42(), FaultId("f1i"));
  EXPECT_EQ(fp.node_count(), 1u);
  EXPECT_EQ(fp.arc_count(), 0u);
  EXPECT_EQ(fp.node(0).weight, 1.0);
}

TEST(PropagationGraph, UnreachableNodesDropped) {
  // a -> b -> c; d -> a; e isolated. From a: {a, b, c}.
  const FaultGraph g = make_fault_graph({{"a", 0.1}, {"b", 0.1}, {"c", 0.1}, {"d", 0.1}, {"e", 0.1}},
                                        {{"a", "b", 0.5}, {"b", "c", 0.5}, {"d", "a", 0.5}});
  const auto fp = build_propagation_graph(g, FaultId("a"));
  EXPECT_EQ(fp.node_count(), 3u);
  EXPECT_EQ(fp.arc_count(), 2u);
  EXPECT_FALSE(fp.find(FaultId("d")));
}

}  // namespace
}  // namespace faultrank
