#include "faultrank/estimation.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "faultrank/error.hpp"

namespace faultrank {

void ImpactFactors::set(const FaultId& source, const FaultId& target, double value) {
  if (source == target)
    throw Error(ErrorCode::SelfLoop, "impact factor self-loop on '" + source.str() + "'");
  if (!(value >= 0.0 && value <= 1.0))
    throw Error(ErrorCode::InvalidProbability,
                "impact factor " + source.str() + " -> " + target.str() + " outside [0,1]");
  values_[{source, target}] = value;
}

std::optional<double> ImpactFactors::get(const FaultId& source, const FaultId& target) const {
  auto it = values_.find({source, target});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double uniform_default_probability(const FaultCatalog& catalog) noexcept {
  return 1.0 / static_cast<double>(catalog.fault_count());
}

namespace {

struct Occurrence {
  std::int64_t first = std::numeric_limits<std::int64_t>::max();
  std::int64_t last = std::numeric_limits<std::int64_t>::min();
};

// incident -> (fault index -> first/last timestamp), with faults validated.
std::map<std::string, std::map<std::size_t, Occurrence>> group_incidents(
    std::span<const FaultLogRecord> log, const FaultCatalog& catalog) {
  std::map<std::string, std::map<std::size_t, Occurrence>> incidents;
  for (const FaultLogRecord& r : log) {
    const std::size_t f = catalog.fault_index(r.fault);
    Occurrence& occ = incidents[r.incident][f];
    occ.first = std::min(occ.first, r.timestamp);
    occ.last = std::max(occ.last, r.timestamp);
  }
  return incidents;
}

}  // namespace

ProbabilityMap estimate_independent_probabilities(std::span<const FaultLogRecord> log,
                                                  const FaultCatalog& catalog) {
  const auto incidents = group_incidents(log, catalog);
  const double fallback = uniform_default_probability(catalog);

  std::vector<std::size_t> seen(catalog.fault_count(), 0);
  for (const auto& [_, faults] : incidents)
    for (const auto& [f, __] : faults) ++seen[f];

  ProbabilityMap out;
  const auto faults = catalog.faults();
  for (std::size_t i = 0; i < faults.size(); ++i) {
    out[faults[i].id] = seen[i] == 0 ? fallback
                                     : static_cast<double>(seen[i]) /
                                           static_cast<double>(incidents.size());
  }
  return out;
}

ImpactFactors estimate_impact_factors(std::span<const FaultLogRecord> log,
                                      const FaultCatalog& catalog) {
  const auto incidents = group_incidents(log, catalog);
  const std::size_t n = catalog.fault_count();

  std::vector<std::size_t> with_source(n, 0);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ordered;
  for (const auto& [_, faults] : incidents) {
    for (const auto& [a, occ_a] : faults) {
      ++with_source[a];
      for (const auto& [b, occ_b] : faults) {
        if (a == b) continue;
        if (occ_a.first < occ_b.last) ++ordered[{a, b}];
      }
    }
  }

  std::vector<double> row_max(n, 0.0);
  std::map<std::pair<std::size_t, std::size_t>, double> raw;
  for (const auto& [key, count] : ordered) {
    const double r =
        static_cast<double>(count) / static_cast<double>(with_source[key.first]);
    raw[key] = r;
    row_max[key.first] = std::max(row_max[key.first], r);
  }

  ImpactFactors ifv;
  const auto faults = catalog.faults();
  for (const auto& [key, r] : raw)
    ifv.set(faults[key.first].id, faults[key.second].id, r / row_max[key.first]);
  return ifv;
}

ProbabilityMap resolve_probabilities(const FaultCatalog& catalog,
                                     const ProbabilityMap& fallback) {
  ProbabilityMap out;
  const double uniform = uniform_default_probability(catalog);
  for (const Fault& f : catalog.faults()) {
    if (f.independent_probability) {
      out[f.id] = *f.independent_probability;
    } else if (auto it = fallback.find(f.id); it != fallback.end()) {
      out[f.id] = it->second;
    } else {
      out[f.id] = uniform;
    }
  }
  return out;
}

}  // namespace faultrank
