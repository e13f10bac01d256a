#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "faultrank/centrality.hpp"
#include "faultrank/ground_truth.hpp"
#include "faultrank/localization.hpp"
#include "faultrank/scenario.hpp"

namespace faultrank {

struct SweepGrid {
  std::vector<std::size_t> n_faults{85, 90, 95, 100, 105, 110};
  std::vector<double> thresholds{0.6, 0.7, 0.8};
  std::vector<Measure> measures{Measure::Alpha, Measure::Eigenvector, Measure::Closeness};
  std::vector<std::uint64_t> seeds{1};
};

struct SweepOptions {
  /// Template for every scenario; n_faults and seed are set per cell.
  ScenarioSpec spec;
  LocalizationConfig localization;
  GroundTruthConfig truth{.truth_cutoff = 0.5, .trials = 20000};
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 1;
};

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  double accuracy() const noexcept;

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Component-level confusion counts of a prediction against the truth.
ConfusionCounts score_components(const std::vector<VulnerableComponent>& predicted,
                                 const std::set<ComponentId>& truth,
                                 const FaultCatalog& catalog);

struct SweepCell {
  Measure measure = Measure::Alpha;
  double threshold = 0.0;
  std::size_t n_faults = 0;
  std::uint64_t seed = 0;
  ConfusionCounts counts;
  double accuracy = 0.0;
  std::size_t selected_faults = 0;
  std::size_t truth_components = 0;
};

struct SweepAggregate {
  Measure measure = Measure::Alpha;
  double threshold = 0.0;
  std::size_t cells = 0;
  double mean_accuracy = 0.0;
  double stddev_accuracy = 0.0;
  double mean_fp = 0.0;
};

struct AccuracyReport {
  SweepGrid grid;
  SweepOptions options;
  /// Ordered by n_faults, seed, measure, threshold in grid order.
  std::vector<SweepCell> cells;
  /// One row per (measure, threshold) in grid order.
  std::vector<SweepAggregate> aggregates;
};

/// Generates one scenario per (n_faults, seed), computes its percolation
/// ground truth, localizes with every measure and threshold, and scores the
/// implicated components. Each (n_faults, seed) pair derives its own random
/// streams, so the report does not depend on the thread count.
///
/// Throws InvalidConfig for an empty grid.
AccuracyReport run_sweep(const SweepGrid& grid, const SweepOptions& options = {});

/// Recomputes the aggregate rows from the cells.
std::vector<SweepAggregate> aggregate(const SweepGrid& grid, const std::vector<SweepCell>& cells);

/// Mean false-positive component count per measure over all cells.
std::map<Measure, double> false_positive_profile(const AccuracyReport& report);

/// Mean accuracy per measure over all cells.
std::map<Measure, double> mean_accuracy_by_measure(const AccuracyReport& report);

}  // namespace faultrank
