#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "faultrank/catalog.hpp"
#include "faultrank/centrality.hpp"
#include "faultrank/estimation.hpp"
#include "faultrank/fault_graph.hpp"
#include "faultrank/localization.hpp"
#include "faultrank/propagation.hpp"
#include "faultrank/scenario.hpp"
#include "faultrank/sweep.hpp"

namespace faultrank::io {

// All parsers throw Error(ParseError) with a location hint on malformed input
// and let domain validation errors (DuplicateId, ...) through unchanged.

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Epoch milliseconds from an integer or an ISO-8601 date-time such as
/// "2024-03-01T12:00:00Z", "2024-03-01T12:00:00.250+02:00" or "2024-03-01".
std::int64_t parse_timestamp(std::string_view text);

/// Catalog JSON: {"components":[{"id","name","kind"}], "faults":[{"id","component","p"}]}.
FaultCatalog parse_catalog(std::string_view json);

/// A catalog document optionally carrying "edges":[{"source","target","ifv"}]
/// and a "trigger". Node and edge entries may also hold a "weight".
struct GraphDocument {
  std::shared_ptr<const FaultCatalog> catalog;
  /// Present when the document has an "edges" array.
  std::optional<FaultGraph> graph;
  std::optional<FaultId> trigger;
};

GraphDocument parse_graph_document(std::string_view json);

/// Requires a graph; throws ParseError when "edges" is missing.
FaultGraph parse_fault_graph(std::string_view json);

std::string write_catalog_json(const FaultCatalog& catalog);

/// Writes the catalog of `graph`, its node probabilities and edges. Weights
/// are written only where they differ from the independent probability or
/// impact factor.
std::string write_graph_json(const FaultGraph& graph,
                             const std::optional<FaultId>& trigger = std::nullopt);

std::string write_scenario_json(const Scenario& scenario);

/// `timestamp,incident,fault`
std::vector<FaultLogRecord> parse_fault_log(std::string_view csv);
/// `source,target,ifv`
ImpactFactors parse_impact_factors(std::string_view csv);
/// `fault,p`
ProbabilityMap parse_probabilities(std::string_view csv);
/// `component,traffic,latency,saturation,errors,observed_fault`
std::vector<SignalSample> parse_signals(std::string_view csv);

std::string write_fault_log_csv(const std::vector<FaultLogRecord>& log);
std::string write_impact_factors_csv(const ImpactFactors& ifv);

/// `fault,score`, descending by score then ascending by id.
std::string write_scores_csv(const CentralityScores& scores);

std::string write_report_json(const LocalizationReport& report);
LocalizationReport parse_report_json(std::string_view json);

/// Full report: grid, options, cells and aggregates.
std::string write_accuracy_json(const AccuracyReport& report);
/// `measure,threshold,n_faults,seed,tp,fp,fn,tn,accuracy`, one row per cell.
std::string write_accuracy_csv(const AccuracyReport& report);

/// {"n_faults":[...], "thresholds":[...], "measures":[...], "seeds":[...]};
/// absent keys keep the defaults.
SweepGrid parse_grid(std::string_view json);

/// Shortest text that reads back as the same double.
std::string format_double(double value);

}  // namespace faultrank::io
