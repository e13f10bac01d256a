#include "faultrank/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "faultrank/error.hpp"
#include "faultrank/random.hpp"

namespace faultrank {

double ConfusionCounts::accuracy() const noexcept {
  const std::size_t n = total();
  return n == 0 ? 0.0 : static_cast<double>(tp + tn) / static_cast<double>(n);
}

ConfusionCounts score_components(const std::vector<VulnerableComponent>& predicted,
                                 const std::set<ComponentId>& truth,
                                 const FaultCatalog& catalog) {
  std::set<ComponentId> flagged;
  for (const VulnerableComponent& c : predicted) flagged.insert(c.id);
  ConfusionCounts counts;
  for (const Component& c : catalog.components()) {
    const bool p = flagged.contains(c.id);
    const bool t = truth.contains(c.id);
    if (p && t) ++counts.tp;
    else if (p) ++counts.fp;
    else if (t) ++counts.fn;
    else ++counts.tn;
  }
  return counts;
}

namespace {

// All cells for one (n_faults, seed) pair share the scenario, the ground
// truth and the propagation graph.
std::vector<SweepCell> run_unit(const SweepGrid& grid, const SweepOptions& options,
                                std::size_t n_faults, std::uint64_t seed) {
  ScenarioSpec spec = options.spec;
  spec.n_faults = n_faults;
  spec.seed = derive_seed(seed, n_faults);
  const Scenario scenario = generate_scenario(spec);

  GroundTruthConfig truth_config = options.truth;
  truth_config.seed = derive_seed(spec.seed, 1);
  const GroundTruth truth = ground_truth(scenario.graph, scenario.trigger, truth_config);

  const PropagationResult propagated =
      propagate_weights(scenario.graph, scenario.trigger, options.localization.propagation);
  const PropagationGraph fp = build_propagation_graph(propagated.graph, scenario.trigger);

  std::vector<SweepCell> cells;
  for (Measure measure : grid.measures) {
    const CentralityScores scores = compute_centrality(fp, measure, options.localization.centrality);
    for (double threshold : grid.thresholds) {
      const auto faults = select_vulnerable_faults(scores, threshold);
      const auto components = map_to_components(faults, *scenario.catalog);
      SweepCell cell;
      cell.measure = measure;
      cell.threshold = threshold;
      cell.n_faults = n_faults;
      cell.seed = seed;
      cell.counts = score_components(components, truth.vulnerable_components, *scenario.catalog);
      cell.accuracy = cell.counts.accuracy();
      cell.selected_faults = faults.size();
      cell.truth_components = truth.vulnerable_components.size();
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace

std::vector<SweepAggregate> aggregate(const SweepGrid& grid, const std::vector<SweepCell>& cells) {
  std::vector<SweepAggregate> out;
  for (Measure measure : grid.measures) {
    for (double threshold : grid.thresholds) {
      SweepAggregate agg;
      agg.measure = measure;
      agg.threshold = threshold;
      double sum = 0.0, sum_fp = 0.0;
      for (const SweepCell& c : cells) {
        if (c.measure != measure || c.threshold != threshold) continue;
        ++agg.cells;
        sum += c.accuracy;
        sum_fp += static_cast<double>(c.counts.fp);
      }
      if (agg.cells > 0) {
        agg.mean_accuracy = sum / static_cast<double>(agg.cells);
        agg.mean_fp = sum_fp / static_cast<double>(agg.cells);
        double sq = 0.0;
        for (const SweepCell& c : cells) {
          if (c.measure != measure || c.threshold != threshold) continue;
          sq += (c.accuracy - agg.mean_accuracy) * (c.accuracy - agg.mean_accuracy);
        }
        agg.stddev_accuracy = agg.cells > 1 ? std::sqrt(sq / static_cast<double>(agg.cells - 1)) : 0.0;
      }
      out.push_back(agg);
    }
  }
  return out;
}

AccuracyReport run_sweep(const SweepGrid& grid, const SweepOptions& options) {
  if (grid.n_faults.empty() || grid.thresholds.empty() || grid.measures.empty() ||
      grid.seeds.empty())
    throw Error(ErrorCode::InvalidConfig, "sweep grid has an empty dimension");
  for (double t : grid.thresholds)
    if (!(t >= 0.0 && t <= 1.0))
      throw Error(ErrorCode::InvalidConfig, "sweep threshold outside [0,1]");

  std::vector<std::pair<std::size_t, std::uint64_t>> units;
  for (std::size_t n : grid.n_faults)
    for (std::uint64_t seed : grid.seeds) units.emplace_back(n, seed);

  std::vector<std::vector<SweepCell>> results(units.size());
  std::size_t workers = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  workers = std::clamp<std::size_t>(workers, 1, units.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < units.size(); i = next++) {
      try {
        results[i] = run_unit(grid, options, units[i].first, units[i].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  AccuracyReport report;
  report.grid = grid;
  report.options = options;
  for (auto& unit : results)
    report.cells.insert(report.cells.end(), unit.begin(), unit.end());
  report.aggregates = aggregate(grid, report.cells);
  return report;
}

std::map<Measure, double> false_positive_profile(const AccuracyReport& report) {
  std::map<Measure, double> sum;
  std::map<Measure, std::size_t> count;
  for (const SweepCell& c : report.cells) {
    sum[c.measure] += static_cast<double>(c.counts.fp);
    ++count[c.measure];
  }
  for (auto& [m, s] : sum) s /= static_cast<double>(count[m]);
  return sum;
}

std::map<Measure, double> mean_accuracy_by_measure(const AccuracyReport& report) {
  std::map<Measure, double> sum;
  std::map<Measure, std::size_t> count;
  for (const SweepCell& c : report.cells) {
    sum[c.measure] += c.accuracy;
    ++count[c.measure];
  }
  for (auto& [m, s] : sum) s /= static_cast<double>(count[m]);
  return sum;
}

}  // namespace faultrank
