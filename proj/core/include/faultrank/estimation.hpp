#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "faultrank/catalog.hpp"
#include "faultrank/ids.hpp"

namespace faultrank {

struct FaultLogRecord {
  /// Monotone instant; ISO-8601 inputs are converted to epoch milliseconds.
  std::int64_t timestamp = 0;
  /// Records sharing an incident are treated as co-occurring.
  std::string incident;
  FaultId fault;
};

/// Directed impact factors ifv(source, target) in [0,1]. Self-loops are
/// rejected.
class ImpactFactors {
 public:
  using Key = std::pair<FaultId, FaultId>;

  ImpactFactors() = default;

  /// Throws SelfLoop or InvalidProbability.
  void set(const FaultId& source, const FaultId& target, double value);
  std::optional<double> get(const FaultId& source, const FaultId& target) const;

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  /// Ordered by (source, target).
  const std::map<Key, double>& entries() const noexcept { return values_; }

 private:
  std::map<Key, double> values_;
};

using ProbabilityMap = std::map<FaultId, double>;

/// Default independent probability for faults without log evidence.
double uniform_default_probability(const FaultCatalog& catalog) noexcept;

/// P(f) = incidents containing f / total incidents. Faults never seen in the
/// log, or every fault when the log is empty, get 1/|faults|.
ProbabilityMap estimate_independent_probabilities(std::span<const FaultLogRecord> log,
                                                  const FaultCatalog& catalog);

/// Ordered co-occurrence estimate. raw(a->b) is the fraction of incidents
/// containing a in which some occurrence of a is strictly earlier than some
/// occurrence of b; each source row is then divided by its maximum so the
/// strongest influence is 1.0. Zero counts and self pairs produce no entry.
ImpactFactors estimate_impact_factors(std::span<const FaultLogRecord> log,
                                      const FaultCatalog& catalog);

/// Catalog probabilities where present, otherwise `fallback`, otherwise the
/// uniform default.
ProbabilityMap resolve_probabilities(const FaultCatalog& catalog,
                                     const ProbabilityMap& fallback = {});

}  // namespace faultrank
