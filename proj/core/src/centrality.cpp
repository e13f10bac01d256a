#include "faultrank/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "faultrank/error.hpp"

namespace faultrank {

std::string_view to_string(Measure measure) noexcept {
  switch (measure) {
    case Measure::Closeness: return "closeness";
    case Measure::Eigenvector: return "eigenvector";
    case Measure::Alpha: return "alpha";
  }
  return "unknown";
}

std::optional<Measure> parse_measure(std::string_view label) noexcept {
  if (label == "closeness") return Measure::Closeness;
  if (label == "eigenvector" || label == "eigen") return Measure::Eigenvector;
  if (label == "alpha" || label == "katz") return Measure::Alpha;
  return std::nullopt;
}

std::string_view to_string(KatzMode mode) noexcept {
  return mode == KatzMode::DirectSolve ? "direct_solve" : "iterative_series";
}

std::map<FaultId, double> CentralityScores::as_map() const {
  std::map<FaultId, double> out;
  for (std::size_t i = 0; i < ids.size(); ++i) out.emplace(ids[i], scores[i]);
  return out;
}

namespace {

void require_nodes(const Digraph& graph) {
  if (graph.empty()) throw Error(ErrorCode::EmptyGraph, "centrality on an empty graph");
}

CentralityScores make_scores(const Digraph& graph, Measure measure) {
  CentralityScores s;
  s.measure = measure;
  s.ids.reserve(graph.node_count());
  for (const Node& n : graph.nodes()) s.ids.push_back(n.id);
  s.scores.assign(graph.node_count(), 0.0);
  return s;
}

void validate(const CentralityConfig& config) {
  if (!(config.alpha_fraction >= 0.0 && config.alpha_fraction < 1.0))
    throw Error(ErrorCode::InvalidConfig, "alpha_fraction must lie in [0, 1)");
  if (config.alpha_override && !(*config.alpha_override >= 0.0 && std::isfinite(*config.alpha_override)))
    throw Error(ErrorCode::InvalidConfig, "alpha must be a finite non-negative number");
  if (!(config.tolerance > 0.0) || config.max_iters == 0)
    throw Error(ErrorCode::InvalidConfig, "tolerance and max_iters must be positive");
}

// Solves m * x = b in place by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(std::vector<double> m, std::vector<double> b) {
  const std::size_t n = b.size();
  auto at = [&](std::size_t r, std::size_t c) -> double& { return m[r * n + c]; };

  double scale = 0.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  const double eps = 1e-13 * std::max(scale, 1.0);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    if (std::abs(at(pivot, col)) < eps)
      throw Error(ErrorCode::SingularSystem, "Katz system is numerically singular");
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(col, c), at(pivot, c));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = at(r, col) / at(col, col);
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) at(r, c) -= f * at(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= at(i, c) * x[c];
    x[i] = acc / at(i, i);
  }
  return x;
}

}  // namespace

std::vector<std::optional<PathInfo>> shortest_paths(const Digraph& graph, NodeIndex source) {
  std::vector<std::optional<PathInfo>> out(graph.node_count());
  out[source] = PathInfo{0, 1.0};
  std::deque<NodeIndex> queue{source};
  while (!queue.empty()) {
    const NodeIndex u = queue.front();
    queue.pop_front();
    // FIFO order with ascending neighbours makes the first discovery of a
    // node the lexicographically smallest shortest path to it.
    for (const Arc& a : graph.out_arcs(u)) {
      if (out[a.target]) continue;
      out[a.target] = PathInfo{out[u]->hops + 1, out[u]->path_ifv * a.impact};
      queue.push_back(a.target);
    }
  }
  return out;
}

std::map<FaultId, PathInfo> shortest_paths(const Digraph& graph, const FaultId& source) {
  const auto paths = shortest_paths(graph, graph.index_of(source));
  std::map<FaultId, PathInfo> out;
  for (std::size_t i = 0; i < paths.size(); ++i)
    if (paths[i]) out.emplace(graph.id(i), *paths[i]);
  return out;
}

CentralityScores closeness_rank(const Digraph& graph) {
  require_nodes(graph);
  CentralityScores s = make_scores(graph, Measure::Closeness);
  for (NodeIndex n = 0; n < graph.node_count(); ++n) {
    if (graph.out_degree(n) == 0) continue;
    const auto paths = shortest_paths(graph, n);
    double sum = 0.0;
    for (const auto& p : paths)
      if (p && p->hops > 0) sum += p->path_ifv / static_cast<double>(p->hops);
    s.scores[n] = sum;
  }
  return s;
}

CentralityScores eigenvector_rank(const Digraph& graph, const CentralityConfig& config) {
  require_nodes(graph);
  validate(config);
  CentralityScores s = make_scores(graph, Measure::Eigenvector);
  const std::size_t n = graph.node_count();
  const double uniform = 1.0 / static_cast<double>(n);

  std::vector<double> x(n, uniform), y(n);
  s.converged = false;
  for (s.iterations = 0; s.iterations < config.max_iters;) {
    double dangling = 0.0;
    std::fill(y.begin(), y.end(), 0.0);
    for (NodeIndex j = 0; j < n; ++j) {
      const std::size_t degree = graph.out_degree(j);
      if (degree == 0) {
        dangling += x[j];
        continue;
      }
      const double share = x[j] / static_cast<double>(degree);
      for (const Arc& a : graph.out_arcs(j)) y[a.target] += share * a.impact;
    }
    double total = 0.0;
    for (double& v : y) total += (v += dangling * uniform);
    ++s.iterations;
    if (!(total > 0.0)) {
      // All mass sits behind zero-impact arcs; nothing to rank.
      std::fill(x.begin(), x.end(), uniform);
      break;
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= total;
      delta += std::abs(y[i] - x[i]);
    }
    std::swap(x, y);
    if (delta < config.tolerance) {
      s.converged = true;
      break;
    }
  }
  s.scores = std::move(x);
  return s;
}

double spectral_radius(const Digraph& graph, const CentralityConfig& config) {
  require_nodes(graph);
  validate(config);
  const SccDecomposition scc = graph.strongly_connected_components();

  // The spectral radius is the largest over irreducible blocks; acyclic parts
  // contribute nothing. Each block is iterated on A^T + I, which is primitive,
  // and bracketed by the Collatz-Wielandt min/max ratios.
  double lambda = 0.0;
  std::vector<double> x(graph.node_count()), y(graph.node_count());
  for (std::size_t c = 0; c < scc.components.size(); ++c) {
    const auto& members = scc.components[c];
    if (members.size() < 2) continue;
    for (NodeIndex v : members) x[v] = 1.0;
    double upper = 1.0;
    for (std::size_t it = 0; it < config.max_iters; ++it) {
      double lower = std::numeric_limits<double>::infinity();
      upper = 0.0;
      double peak = 0.0;
      for (NodeIndex v : members) {
        double acc = x[v];
        for (std::size_t k : graph.in_arcs(v)) {
          const Arc& a = graph.arcs()[k];
          if (scc.component_of[a.source] == c) acc += a.impact * x[a.source];
        }
        y[v] = acc;
        const double ratio = acc / x[v];
        lower = std::min(lower, ratio);
        upper = std::max(upper, ratio);
        peak = std::max(peak, acc);
      }
      for (NodeIndex v : members) x[v] = y[v] / peak;
      if (upper - lower <= config.tolerance * upper) break;
    }
    lambda = std::max(lambda, upper - 1.0);
  }
  return std::max(lambda, 0.0);
}

CentralityScores alpha_rank(const Digraph& graph, const std::vector<double>& beta,
                            const CentralityConfig& config) {
  require_nodes(graph);
  validate(config);
  const std::size_t n = graph.node_count();
  if (beta.size() != n)
    throw Error(ErrorCode::InvalidConfig, "beta must have one entry per node");
  for (double b : beta)
    if (!std::isfinite(b) || b < 0.0)
      throw Error(ErrorCode::InvalidConfig, "beta entries must be finite and non-negative");

  CentralityScores s = make_scores(graph, Measure::Alpha);
  double lambda = -1.0;
  if (config.alpha_override) {
    s.alpha = *config.alpha_override;
  } else {
    lambda = spectral_radius(graph, config);
    s.alpha = lambda > 0.0 ? config.alpha_fraction / lambda : 0.0;
  }

  if (s.alpha == 0.0 || graph.arc_count() == 0) {
    s.scores = beta;
    return s;
  }

  if (config.katz_mode == KatzMode::DirectSolve) {
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1.0;
    for (const Arc& a : graph.arcs()) m[a.target * n + a.source] -= s.alpha * a.impact;
    s.scores = solve_dense(std::move(m), beta);
    for (double& v : s.scores) v = std::max(v, 0.0);
    return s;
  }

  if (lambda < 0.0) lambda = spectral_radius(graph, config);
  // Contraction rate of the series; the tail after a step of size delta is
  // about delta * rate / (1 - rate), which is what gets compared to tolerance.
  const double rate = s.alpha * lambda;
  if (rate >= 1.0)
    throw Error(ErrorCode::InvalidConfig, "alpha is not below 1 / lambda; the series diverges");
  const double tail = std::max(rate / (1.0 - rate), 1.0);

  std::vector<double> x = beta, y(n);
  s.converged = false;
  for (s.iterations = 0; s.iterations < config.max_iters;) {
    y = beta;
    for (const Arc& a : graph.arcs()) y[a.target] += s.alpha * a.impact * x[a.source];
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(y[i] - x[i]));
    std::swap(x, y);
    ++s.iterations;
    if (delta * tail < config.tolerance) {
      s.converged = true;
      break;
    }
  }
  s.scores = std::move(x);
  return s;
}

CentralityScores alpha_rank(const Digraph& graph, const CentralityConfig& config) {
  std::vector<double> beta;
  beta.reserve(graph.node_count());
  for (const Node& n : graph.nodes()) beta.push_back(n.weight);
  return alpha_rank(graph, beta, config);
}

CentralityScores compute_centrality(const Digraph& graph, Measure measure,
                                    const CentralityConfig& config) {
  switch (measure) {
    case Measure::Closeness: return closeness_rank(graph);
    case Measure::Eigenvector: return eigenvector_rank(graph, config);
    case Measure::Alpha: return alpha_rank(graph, config);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown centrality measure");
}

}  // namespace faultrank
