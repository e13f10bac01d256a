#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "errors.hpp"
#include "faultrank/centrality.hpp"
#include "graphs.hpp"
#include "oracles.hpp"

namespace faultrank {
namespace {

using testing::code_of;
using testing::make_digraph;

Digraph chain() { return make_digraph({{"a", 0.2}, {"b", 0.3}, {"c", 0.1}}, {{"a", "b", 0.5}, {"b", "c", 0.4}}); }

TEST(ShortestPaths, ChainProduct) {
  const auto paths = shortest_paths(chain(), FaultId("a"));
  ASSERT_EQ(paths.size(), 3u);
  EXPECT_EQ(paths.at(FaultId("c")).hops, 2u);
  EXPECT_DOUBLE_EQ(paths.at(FaultId("c")).path_ifv, 0.2);
  EXPECT_EQ(paths.at(FaultId("a")).hops, 0u);
  EXPECT_FALSE(shortest_paths(chain(), FaultId("c")).contains(FaultId("a")));
  EXPECT_EQ(code_of([] { shortest_paths(chain(), FaultId("q")); }), ErrorCode::UnknownNode);
}

TEST(ShortestPaths, LexicographicTieBreak) {
  // Two 2-hop routes a->b->d (0.9, 0.9) and a->c->d (0.1, 0.1); b < c wins.
  const Digraph g = make_digraph({{"a", 0.1}, {"b", 0.1}, {"c", 0.1}, {"d", 0.1}},
                                 {{"a", "b", 0.9}, {"a", "c", 0.1}, {"b", "d", 0.9}, {"c", "d", 0.1}});
  EXPECT_DOUBLE_EQ(shortest_paths(g, FaultId("a")).at(FaultId("d")).path_ifv, 0.81);
}

TEST(Closeness, Chain) {
  const auto s = closeness_rank(chain());
  EXPECT_DOUBLE_EQ(s.scores[0], 0.6);
  EXPECT_DOUBLE_EQ(s.scores[1], 0.4);
  EXPECT_EQ(s.scores[2], 0.0);
  EXPECT_EQ(s.measure, Measure::Closeness);
}

TEST(Closeness, SingleNodeAndStar) {
  EXPECT_EQ(closeness_rank(make_digraph({{"a", 0.5}}, {})).scores, std::vector{0.0});
  const auto s = closeness_rank(make_digraph({{"a", 0.1}, {"b", 0.1}, {"c", 0.1}, {"d", 0.1}},
                                             {{"a", "b", 1.0}, {"a", "c", 1.0}, {"a", "d", 1.0}}));
  EXPECT_EQ(s.scores, (std::vector{3.0, 0.0, 0.0, 0.0}));
}

TEST(Closeness, ZeroExactlyForSinksAndIgnoresUnreachableNodes) {
  Rng rng(3);
  for (int round = 0; round < 200; ++round) {
    const Digraph g = testing::random_digraph(rng, 1 + rng.below(12), rng.uniform(0.05, 0.4));
    const auto s = closeness_rank(g);
    for (NodeIndex i = 0; i < g.node_count(); ++i) ASSERT_EQ(s.scores[i] == 0.0, g.out_degree(i) == 0);

    // A new node with only outgoing arcs is unreachable from every old node.
    std::vector<Node> nodes(g.nodes().begin(), g.nodes().end());
    nodes.push_back(Node{FaultId("zzz"), 0.1, 0.1});
    std::vector<ArcSpec> arcs;
    for (const Arc& a : g.arcs()) arcs.push_back(ArcSpec{g.id(a.source), g.id(a.target), a.impact, a.weight});
    arcs.push_back(ArcSpec{FaultId("zzz"), g.id(0), 0.7, 0.7});
    const auto s2 = closeness_rank(Digraph(std::move(nodes), std::move(arcs)));
    for (NodeIndex i = 0; i < g.node_count(); ++i) ASSERT_EQ(s2.scores[i], s.scores[i]);
  }
}

TEST(Closeness, MatchesPathEnumerationOracle) {
  Rng rng(41);
  for (int round = 0; round < 300; ++round) {
    const Digraph g = testing::random_digraph(rng, 1 + rng.below(7), rng.uniform(0.1, 0.7));
    const auto expected = oracle::closeness(g);
    const auto s = closeness_rank(g);
    for (std::size_t i = 0; i < g.node_count(); ++i) ASSERT_NEAR(s.scores[i], expected[i], 1e-12);
  }
}

TEST(Eigenvector, Degenerate) {
  EXPECT_EQ(eigenvector_rank(make_digraph({{"a", 0.5}}, {})).scores, std::vector{1.0});
  const auto s = eigenvector_rank(make_digraph({{"a", 0.1}, {"b", 0.1}, {"c", 0.1}}, {}));
  for (double v : s.scores) EXPECT_DOUBLE_EQ(v, 1.0 / 3.0);
}

TEST(Eigenvector, ThreeCycleIsUniform) {
  const auto s = eigenvector_rank(
      make_digraph({{"a", 0.1}, {"b", 0.1}, {"c", 0.1}}, {{"a", "b", 1.0}, {"b", "c", 1.0}, {"c", "a", 1.0}}));
  EXPECT_TRUE(s.converged);
  for (double v : s.scores) EXPECT_NEAR(v, 1.0 / 3.0, 1e-12);
}

TEST(Eigenvector, MatchesDenseSolverWhereUnique) {
  Rng rng(43);
  const std::vector<double> choices{0.25, 0.5, 1.0};
  int compared = 0;
  for (int round = 0; round < 300; ++round) {
    const Digraph g = testing::random_connected_digraph(rng, 5, choices);
    const auto s = eigenvector_rank(g, {.tolerance = 1e-13, .max_iters = 1000000});
    ASSERT_NEAR(std::accumulate(s.scores.begin(), s.scores.end(), 0.0), 1.0, 1e-12);
    for (double v : s.scores) ASSERT_GE(v, 0.0);
    const auto ref = oracle::eigenvector(g);
    if (!ref.unique) continue;
    ++compared;
    for (std::size_t i = 0; i < g.node_count(); ++i) ASSERT_NEAR(s.scores[i], ref.vector[i], 1e-6);
  }
  EXPECT_GT(compared, 100);
}

TEST(SpectralRadius, Examples) {
  EXPECT_EQ(spectral_radius(make_digraph({{"a", 0.1}, {"b", 0.1}}, {})), 0.0);
  EXPECT_EQ(spectral_radius(make_digraph({{"a", 0.1}, {"b", 0.1}}, {{"a", "b", 0.5}})), 0.0);
  for (double w : {0.25, 0.5, 1.0}) {
    const Digraph g = make_digraph({{"a", 0.1}, {"b", 0.1}}, {{"a", "b", w}, {"b", "a", w}});
    EXPECT_NEAR(spectral_radius(g), w, 1e-9);
  }
}

TEST(SpectralRadius, UpperBoundsDenseEigenvalues) {
  Rng rng(47);
  for (int round = 0; round < 200; ++round) {
    const Digraph g = testing::random_digraph(rng, 1 + rng.below(30), rng.uniform(0.02, 0.3));
    const double expected = oracle::spectral_radius(g);
    const double lambda = spectral_radius(g);
    ASSERT_GE(lambda, expected * (1.0 - 1e-12));
    ASSERT_NEAR(lambda, expected, 1e-6 * std::max(1.0, expected));
  }
}

TEST(Katz, ForcedAlphaExample) {
  const Digraph g = make_digraph({{"a", 0.2}, {"b", 0.3}}, {{"a", "b", 0.5}});
  for (KatzMode mode : {KatzMode::DirectSolve, KatzMode::IterativeSeries}) {
    const auto s = alpha_rank(g, {0.2, 0.3}, {.alpha_override = 0.4, .katz_mode = mode});
    EXPECT_NEAR(s.scores[0], 0.2, 1e-12);
    EXPECT_NEAR(s.scores[1], 0.34, 1e-12);
    EXPECT_EQ(s.alpha, 0.4);
  }
}

TEST(Katz, ZeroAlphaReturnsBetaExactly) {
  Rng rng(53);
  for (int round = 0; round < 50; ++round) {
    const Digraph g = testing::random_digraph(rng, 1 + rng.below(60), rng.uniform(0.0, 0.2));
    std::vector<double> beta;
    for (std::size_t i = 0; i < g.node_count(); ++i) beta.push_back(rng.uniform());
    EXPECT_EQ(alpha_rank(g, beta, {.alpha_fraction = 0.0}).scores, beta);
    EXPECT_EQ(alpha_rank(g, beta, {.alpha_override = 0.0}).scores, beta);
  }
  // Edgeless: lambda = 0 so alpha = 0 at any fraction.
  const Digraph edgeless = make_digraph({{"a", 0.3}, {"b", 0.6}}, {});
  const auto s = alpha_rank(edgeless);
  EXPECT_EQ(s.scores, (std::vector{0.3, 0.6}));
  EXPECT_EQ(s.alpha, 0.0);
}

TEST(Katz, DirectAndIterativeAgree) {
  Rng rng(59);
  for (int round = 0; round < 60; ++round) {
    const Digraph g = testing::random_digraph(rng, 2 + rng.below(80), rng.uniform(0.01, 0.15));
    for (double fraction : {0.5, 0.9}) {
      const CentralityConfig direct{.alpha_fraction = fraction};
      CentralityConfig series = direct;
      series.katz_mode = KatzMode::IterativeSeries;
      series.max_iters = 100000;
      const auto a = alpha_rank(g, direct);
      const auto b = alpha_rank(g, series);
      ASSERT_TRUE(b.converged);
      for (std::size_t i = 0; i < g.node_count(); ++i)
        ASSERT_NEAR(a.scores[i], b.scores[i], 10 * direct.tolerance);
    }
  }
}

TEST(Katz, MatchesExplicitInverse) {
  Rng rng(61);
  for (int round = 0; round < 200; ++round) {
    const Digraph g = testing::random_digraph(rng, 1 + rng.below(15), rng.uniform(0.05, 0.5));
    const double lambda = oracle::spectral_radius(g);
    const double alpha = lambda > 0.0 ? 0.9 / lambda : 0.3;
    std::vector<double> beta;
    for (const Node& n : g.nodes()) beta.push_back(n.weight);
    const auto expected = oracle::katz(g, beta, alpha);
    const auto s = alpha_rank(g, beta, {.alpha_override = alpha});
    for (std::size_t i = 0; i < g.node_count(); ++i)
      ASSERT_NEAR(s.scores[i], expected[i], 1e-9 * std::max(1.0, std::abs(expected[i])));
  }
}

TEST(Katz, LinearInBeta) {
  Rng rng(67);
  for (int round = 0; round < 100; ++round) {
    const Digraph g = testing::random_digraph(rng, 2 + rng.below(30), rng.uniform(0.05, 0.3));
    std::vector<double> beta, doubled;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      beta.push_back(rng.uniform(0.01, 1.0));
      doubled.push_back(2.0 * beta.back());
    }
    const auto a = alpha_rank(g, beta);
    const auto b = alpha_rank(g, doubled);
    for (std::size_t i = 0; i < g.node_count(); ++i) ASSERT_EQ(b.scores[i], 2.0 * a.scores[i]);

    std::vector<double> scaled;
    for (double v : beta) scaled.push_back(3.7 * v);
    const auto c = alpha_rank(g, scaled);
    for (std::size_t i = 0; i < g.node_count(); ++i)
      ASSERT_NEAR(c.scores[i], 3.7 * a.scores[i], 1e-12 * c.scores[i]);
  }
}

TEST(Katz, Errors) {
  const Digraph g = make_digraph({{"a", 0.2}, {"b", 0.3}}, {{"a", "b", 0.5}, {"b", "a", 0.5}});
  EXPECT_EQ(code_of([&] { alpha_rank(g, std::vector{0.1}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([&] { alpha_rank(g, std::vector{0.1, -1.0}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([&] { alpha_rank(g, CentralityConfig{.alpha_fraction = 1.0}); }), ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([&] { alpha_rank(g, CentralityConfig{.alpha_override = 2.5, .katz_mode = KatzMode::IterativeSeries}); }),
            ErrorCode::InvalidConfig);
  EXPECT_EQ(code_of([] { closeness_rank(Digraph{}); }), ErrorCode::EmptyGraph);
  EXPECT_EQ(code_of([] { eigenvector_rank(Digraph{}); }), ErrorCode::EmptyGraph);
  EXPECT_EQ(code_of([] { alpha_rank(Digraph{}); }), ErrorCode::EmptyGraph);
}

TEST(Centrality, DeterministicAndLabelled) {
  Rng rng(71);
  const Digraph g = testing::random_digraph(rng, 40, 0.1);
  for (Measure m : {Measure::Closeness, Measure::Eigenvector, Measure::Alpha}) {
    const auto a = compute_centrality(g, m);
    const auto b = compute_centrality(g, m);
    EXPECT_EQ(a.scores, b.scores);
    EXPECT_EQ(a.measure, m);
    EXPECT_EQ(a.ids.size(), g.node_count());
    EXPECT_EQ(parse_measure(to_string(m)), m);
  }
  EXPECT_EQ(parse_measure("katz"), Measure::Alpha);
  EXPECT_EQ(parse_measure("eigen"), Measure::Eigenvector);
  EXPECT_FALSE(parse_measure("betweenness"));
}

}  // namespace
}  // namespace faultrank
