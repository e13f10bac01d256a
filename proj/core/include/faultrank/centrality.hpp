#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "faultrank/digraph.hpp"
#include "faultrank/ids.hpp"

namespace faultrank {

enum class Measure { Closeness, Eigenvector, Alpha };

std::string_view to_string(Measure measure) noexcept;
/// Accepts "closeness", "eigenvector" (or "eigen"), "alpha" (or "katz").
std::optional<Measure> parse_measure(std::string_view label) noexcept;

enum class KatzMode { DirectSolve, IterativeSeries };

std::string_view to_string(KatzMode mode) noexcept;

struct CentralityConfig {
  /// alpha = alpha_fraction / lambda, so alpha stays below 1 / lambda.
  double alpha_fraction = 0.9;
  /// Uses this attenuation factor verbatim instead of deriving it from
  /// alpha_fraction and the spectral radius.
  std::optional<double> alpha_override;
  double tolerance = 1e-8;
  std::size_t max_iters = 1000;
  KatzMode katz_mode = KatzMode::DirectSolve;
};

/// Per-node scores indexed like the graph's nodes.
struct CentralityScores {
  Measure measure = Measure::Alpha;
  std::vector<FaultId> ids;
  std::vector<double> scores;
  bool converged = true;
  std::size_t iterations = 0;
  /// Attenuation factor used (alpha measure only).
  double alpha = 0.0;

  std::map<FaultId, double> as_map() const;
};

struct PathInfo {
  std::size_t hops = 0;
  /// Product of impact factors along the chosen shortest path.
  double path_ifv = 1.0;
};

/// Unit-hop BFS distances from `source`. Among shortest paths the one whose
/// node-id sequence is lexicographically smallest is used for path_ifv.
/// Unreachable nodes are absent.
///
/// Throws UnknownNode.
std::map<FaultId, PathInfo> shortest_paths(const Digraph& graph, const FaultId& source);

/// Index-based form of shortest_paths.
std::vector<std::optional<PathInfo>> shortest_paths(const Digraph& graph, NodeIndex source);

/// CR(n) = sum over nodes j reachable from n of path_ifv(n, j) / d(n, j).
///
/// Throws EmptyGraph.
CentralityScores closeness_rank(const Digraph& graph);

/// Fixed point of EVR(n) = sum over arcs (j -> n) of EVR(j) / outdeg(j) * ifv(j, n)
/// by power iteration from the uniform vector with L1 renormalization. Mass
/// on sinks is spread uniformly.
///
/// Throws EmptyGraph.
CentralityScores eigenvector_rank(const Digraph& graph, const CentralityConfig& config = {});

/// Largest eigenvalue magnitude of the impact-factor adjacency matrix; 0 for
/// acyclic graphs. The returned value is an upper Collatz-Wielandt bound, so
/// it never underestimates the spectral radius by more than rounding.
///
/// Throws EmptyGraph.
double spectral_radius(const Digraph& graph, const CentralityConfig& config = {});

/// Katz / alpha centrality C = alpha * A^T * C + beta on the impact-factor
/// adjacency matrix A, with `beta` indexed like the graph's nodes.
///
/// Throws EmptyGraph, InvalidConfig, or SingularSystem.
CentralityScores alpha_rank(const Digraph& graph, const std::vector<double>& beta,
                            const CentralityConfig& config = {});

/// alpha_rank with beta taken from the current node weights.
CentralityScores alpha_rank(const Digraph& graph, const CentralityConfig& config = {});

CentralityScores compute_centrality(const Digraph& graph, Measure measure,
                                    const CentralityConfig& config = {});

}  // namespace faultrank
