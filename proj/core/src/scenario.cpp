#include "faultrank/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "faultrank/error.hpp"
#include "faultrank/random.hpp"

namespace faultrank {

namespace {

struct KindNaming {
  const char* module;
  const char* component_prefix;
  std::vector<const char*> tokens;
};

const KindNaming& naming(ComponentKind kind) {
  static const KindNaming vm{"vm", "vm",
                             {"smf.svc.maintenance", "cpu.generic-sparc.strand", "mem.page-retire",
                              "disk.io-timeout", "nic.link-flap"}};
  static const KindNaming proxy{"proxyDeployment", "proxy",
                                {"InvalidPattern", "UpstreamTimeout", "RouteNotFound",
                                 "TlsHandshakeFailed", "RateLimitExceeded"}};
  static const KindNaming runtime{"runtime", "runtime",
                                  {"jwt.KeyParsingFailed", "jwt.TokenNotYetValid",
                                   "heap.OutOfMemory", "thread.Deadlock", "gc.PauseExceeded"}};
  static const KindNaming database{"dbauth", "db",
                                   {"QuotaViolation", "ConnectionRefused", "ReplicaLag",
                                    "LockTimeout", "AuthFailed"}};
  static const KindNaming network{"network", "net",
                                  {"PacketLoss", "DnsFailure", "PartitionDetected"}};
  static const KindNaming storage{"storage", "storage", {"VolumeFull", "ReadOnlyFs", "IoLatency"}};
  static const KindNaming other{"other", "other", {"Unclassified"}};
  switch (kind) {
    case ComponentKind::VM: return vm;
    case ComponentKind::Proxy: return proxy;
    case ComponentKind::Runtime: return runtime;
    case ComponentKind::Database: return database;
    case ComponentKind::Network: return network;
    case ComponentKind::Storage: return storage;
    case ComponentKind::Other: return other;
  }
  return other;
}

std::string numbered(const std::string& prefix, std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, value);
  return prefix + buf;
}

bool valid_range(const UniformRange& r) { return r.lo >= 0.0 && r.lo <= r.hi && r.hi <= 1.0; }

}  // namespace

void validate(const ScenarioSpec& spec) {
  if (spec.n_faults < 2) throw Error(ErrorCode::InvalidConfig, "n_faults must be at least 2");
  if (spec.module_mix.empty()) throw Error(ErrorCode::InvalidConfig, "module_mix is empty");
  double total = 0.0;
  for (const auto& [_, share] : spec.module_mix) {
    if (!(share >= 0.0)) throw Error(ErrorCode::InvalidConfig, "negative module share");
    total += share;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw Error(ErrorCode::InvalidConfig, "module_mix proportions must sum to 1");
  if (spec.faults_per_component == 0)
    throw Error(ErrorCode::InvalidConfig, "faults_per_component must be positive");
  if (!(spec.edge_density > 0.0)) throw Error(ErrorCode::InvalidConfig, "edge_density must be positive");
  if (spec.topology == Topology::Layered && spec.layers < 2)
    throw Error(ErrorCode::InvalidConfig, "layered topology needs at least 2 layers");
  if (!(spec.back_edge_fraction >= 0.0 && spec.back_edge_fraction <= 1.0))
    throw Error(ErrorCode::InvalidConfig, "back_edge_fraction outside [0,1]");
  if (!valid_range(spec.ifv) || !valid_range(spec.probability))
    throw Error(ErrorCode::InvalidConfig, "distribution ranges must lie within [0,1]");
}

std::map<ComponentKind, std::size_t> apportion_faults(const ScenarioSpec& spec) {
  validate(spec);
  std::map<ComponentKind, std::size_t> counts;
  std::vector<std::pair<double, ComponentKind>> remainders;
  std::size_t assigned = 0;
  for (const auto& [kind, share] : spec.module_mix) {
    const double quota = share * static_cast<double>(spec.n_faults);
    const auto whole = static_cast<std::size_t>(std::floor(quota));
    counts[kind] = whole;
    assigned += whole;
    remainders.emplace_back(quota - static_cast<double>(whole), kind);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < spec.n_faults; ++i, ++assigned)
    ++counts[remainders[i % remainders.size()].second];
  return counts;
}

Scenario generate_scenario(const ScenarioSpec& spec) {
  const auto counts = apportion_faults(spec);
  Rng rng(spec.seed);

  std::vector<Component> components;
  std::vector<Fault> faults;
  for (const auto& [kind, count] : counts) {
    if (count == 0) continue;
    const KindNaming& name = naming(kind);
    const std::size_t n_components =
        (count + spec.faults_per_component - 1) / spec.faults_per_component;
    std::vector<ComponentId> ids;
    for (std::size_t c = 0; c < n_components; ++c) {
      ids.emplace_back(numbered(std::string(name.component_prefix) + "-", c + 1, 2));
      components.push_back(Component{ids.back(), ids.back().str(), kind, {}});
    }
    for (std::size_t i = 0; i < count; ++i) {
      const std::string token = name.tokens[i % name.tokens.size()];
      FaultId id(numbered("log.fault." + std::string(name.module) + ".steps." + token + ".", i + 1, 3));
      const double p = rng.uniform(spec.probability.lo, spec.probability.hi);
      faults.push_back(Fault{std::move(id), ids[i % n_components], p});
    }
  }
  auto catalog = std::make_shared<const FaultCatalog>(build_catalog(components, faults));

  std::vector<Node> nodes;
  for (const Fault& f : catalog->faults())
    nodes.push_back(Node{f.id, *f.independent_probability, *f.independent_probability});

  const std::size_t n = nodes.size();
  const double expected_arcs = spec.edge_density * static_cast<double>(n);

  // Tiers are redrawn with every attempt so an unlucky split (say, every
  // fault in one tier) cannot exhaust the retries.
  std::vector<std::size_t> tier(n, 0);
  double forward_p = 0.0, back_p = 0.0;
  auto draw_tiers = [&] {
    if (spec.topology == Topology::Uniform) {
      forward_p = std::min(1.0, spec.edge_density / static_cast<double>(n - 1));
      return;
    }
    std::vector<double> size(spec.layers, 0.0);
    for (std::size_t i = 0; i < n; ++i) size[tier[i] = rng.below(spec.layers)] += 1.0;
    double forward_pairs = 0.0, back_pairs = 0.0;
    for (std::size_t l = 0; l < spec.layers; ++l) {
      if (l + 1 < spec.layers) forward_pairs += size[l] * size[l + 1];
      for (std::size_t m = 0; m < l; ++m) back_pairs += size[l] * size[m];
    }
    const double back_share = back_pairs > 0.0 ? spec.back_edge_fraction : 0.0;
    forward_p = forward_pairs > 0.0
                    ? std::min(1.0, (1.0 - back_share) * expected_arcs / forward_pairs)
                    : 0.0;
    back_p = back_pairs > 0.0 ? std::min(1.0, back_share * expected_arcs / back_pairs) : 0.0;
  };
  auto pair_probability = [&](std::size_t u, std::size_t v) {
    if (spec.topology == Topology::Uniform) return forward_p;
    if (tier[v] == tier[u] + 1) return forward_p;
    if (tier[v] < tier[u]) return back_p;
    return 0.0;
  };

  for (std::size_t attempt = 0; attempt < spec.max_retries; ++attempt) {
    draw_tiers();
    std::vector<ArcSpec> arcs;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u == v) continue;
        const double p = pair_probability(u, v);
        if (p <= 0.0 || rng.uniform() >= p) continue;
        const double w = rng.uniform(spec.ifv.lo, spec.ifv.hi);
        arcs.push_back(ArcSpec{nodes[u].id, nodes[v].id, w, w});
      }
    }
    Digraph graph(nodes, std::move(arcs));
    if (!graph.weakly_connected()) continue;

    std::vector<NodeIndex> sources;
    for (NodeIndex i = 0; i < n; ++i)
      if (graph.out_degree(i) > 0) sources.push_back(i);
    if (sources.empty()) continue;
    const FaultId trigger = graph.id(sources[rng.below(sources.size())]);
    return Scenario{catalog, FaultGraph(catalog, std::move(graph)), trigger};
  }
  throw Error(ErrorCode::GenerationFailed,
              "no weakly connected graph after " + std::to_string(spec.max_retries) + " attempts");
}

}  // namespace faultrank
