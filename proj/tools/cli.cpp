#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"

#ifdef FAULTRANK_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#include "faultrank/centrality.hpp"
#include "faultrank/dot.hpp"
#include "faultrank/error.hpp"
#include "faultrank/estimation.hpp"
#include "faultrank/io.hpp"
#include "faultrank/localization.hpp"
#include "faultrank/propagation.hpp"
#include "faultrank/scenario.hpp"
#include "faultrank/sweep.hpp"

namespace faultrank::cli {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputFlags {
  std::string out_path;
  bool timestamps = false;
};

void add_output_flags(CLI::App* sub, OutputFlags& flags) {
  sub->add_option("--out", flags.out_path, "Write the result to this file instead of stdout");
  sub->add_flag("--timestamps", flags.timestamps, "Add a generated_at field to JSON output");
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string stamped(const std::string& json_text, const OutputFlags& flags) {
  if (!flags.timestamps) return json_text;
  ojson doc = ojson::parse(json_text);
  ojson out{{"generated_at", utc_now()}};
  if (doc.is_object()) {
    for (auto& [k, v] : doc.items()) out[k] = v;
  } else {
    out["result"] = std::move(doc);
  }
  return out.dump(2) + "\n";
}

void emit(const std::string& content, const OutputFlags& flags, std::ostream& out) {
  if (flags.out_path.empty())
    out << content;
  else
    io::write_file(flags.out_path, content);
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("FAULTRANK_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string_view text(raw);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw UsageError("FAULTRANK_SEED is not an unsigned integer: '" + std::string(text) + "'");
  return v;
}

// ------------------------------------------------------------ --config

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

std::string config_token(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw UsageError("config key '" + key + "' must hold a string, number, boolean or array");
}

// Expands `--config F` into the flags it mirrors; flags given explicitly on
// the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file argument");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!path) return args;

  json doc;
  try {
    doc = json::parse(io::read_file(*path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "config: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "config: top level must be an object");

  for (const auto& [key, value] : doc.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin() + 2, flag.end(), '_', '-');
    if (has_flag(args, flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_array()) {
      args.push_back(flag);
      for (const json& v : value) args.push_back(config_token(v, key));
    } else {
      args.push_back(flag);
      args.push_back(config_token(value, key));
    }
  }
  return args;
}

// ------------------------------------------------------- option groups

// Enum options go through their string names.
template <class E>
CLI::Option* add_choice(CLI::App* sub, const std::string& name, E& target,
                        const std::map<std::string, E>& choices, const std::string& description) {
  std::vector<std::string> names;
  for (const auto& [label, _] : choices) names.push_back(label);
  return sub
      ->add_option_function<std::string>(
          name, [&target, choices](const std::string& v) { target = choices.at(v); }, description)
      ->check(CLI::IsMember(names));
}

const std::map<std::string, Measure> kMeasures{{"alpha", Measure::Alpha},
                                               {"katz", Measure::Alpha},
                                               {"eigenvector", Measure::Eigenvector},
                                               {"eigen", Measure::Eigenvector},
                                               {"closeness", Measure::Closeness}};

struct LocalizationFlags {
  LocalizationConfig config;
  double alpha = 0.0;
  CLI::Option* alpha_option = nullptr;

  LocalizationConfig resolved() const {
    LocalizationConfig c = config;
    if (alpha_option != nullptr && alpha_option->count() > 0) c.centrality.alpha_override = alpha;
    return c;
  }
};

void add_propagation_flags(CLI::App* sub, PropagationConfig& c) {
  sub->add_option("--cycle-epsilon", c.cycle_epsilon, "Constant added to edge weights on cycles")
      ->capture_default_str();
  sub->add_option("--tolerance", c.tolerance, "Propagation convergence tolerance")
      ->capture_default_str();
  sub->add_option("--max-iters", c.max_iters, "Propagation sweep limit per cycle")
      ->capture_default_str();
  add_choice(sub, "--combine", c.combine,
             {{"literal", CombineMode::Literal}, {"noisy-or", CombineMode::NoisyOr}},
             "literal | noisy-or");
}

void add_localization_flags(CLI::App* sub, LocalizationFlags& flags) {
  add_propagation_flags(sub, flags.config.propagation);
  CentralityConfig& c = flags.config.centrality;
  sub->add_option("--alpha-fraction", c.alpha_fraction, "Katz alpha as a fraction of 1/lambda")
      ->capture_default_str();
  flags.alpha_option =
      sub->add_option("--alpha", flags.alpha, "Use this Katz alpha instead of alpha-fraction");
  sub->add_option("--centrality-tolerance", c.tolerance, "Centrality convergence tolerance")
      ->capture_default_str();
  sub->add_option("--centrality-max-iters", c.max_iters, "Centrality iteration limit")
      ->capture_default_str();
  add_choice(sub, "--katz-mode", c.katz_mode,
             {{"direct", KatzMode::DirectSolve}, {"iterative", KatzMode::IterativeSeries}},
             "direct | iterative");
}

void add_scenario_flags(CLI::App* sub, ScenarioSpec& s) {
  sub->add_option("--edge-density", s.edge_density, "Expected out-degree per fault")
      ->capture_default_str();
  sub->add_option("--faults-per-component", s.faults_per_component, "Faults per component")
      ->capture_default_str();
  add_choice(sub, "--topology", s.topology,
             {{"layered", Topology::Layered}, {"uniform", Topology::Uniform}},
             "layered | uniform");
  sub->add_option("--layers", s.layers, "Tier count for the layered topology")
      ->capture_default_str();
  sub->add_option("--back-edge-fraction", s.back_edge_fraction,
                  "Share of arcs pointing to lower tiers")
      ->capture_default_str();
}

// ---------------------------------------------------------- commands

struct ValidateArgs {
  std::string catalog;
  OutputFlags output;
};

std::string run_validate(const ValidateArgs& a) {
  const io::GraphDocument doc = io::parse_graph_document(io::read_file(a.catalog));
  ojson out{{"valid", true},
            {"components", doc.catalog->component_count()},
            {"faults", doc.catalog->fault_count()}};
  if (doc.graph) out["edges"] = doc.graph->arc_count();
  if (doc.trigger) {
    if (!doc.catalog->find_fault(*doc.trigger))
      throw Error(ErrorCode::UnknownTrigger, "trigger '" + doc.trigger->str() + "' is not a catalog fault");
    out["trigger"] = doc.trigger->str();
  }
  return out.dump(2) + "\n";
}

struct BuildArgs {
  std::string catalog, log, ifv, probs, trigger;
  OutputFlags output;
};

std::string run_build(const BuildArgs& a) {
  const std::string catalog_text = io::read_file(a.catalog);
  std::optional<FaultId> trigger;
  if (!a.trigger.empty()) trigger = FaultId(a.trigger);

  auto catalog = std::make_shared<const FaultCatalog>(io::parse_catalog(catalog_text));
  std::vector<FaultLogRecord> log;
  if (!a.log.empty()) log = io::parse_fault_log(io::read_file(a.log));

  ImpactFactors ifv;
  if (!a.ifv.empty()) {
    ifv = io::parse_impact_factors(io::read_file(a.ifv));
  } else if (!a.log.empty()) {
    ifv = estimate_impact_factors(log, *catalog);
  } else {
    // A graph document already carries its impact factors.
    io::GraphDocument doc = io::parse_graph_document(catalog_text);
    if (!doc.graph) throw UsageError("build needs --log or --ifv when the catalog has no edges");
    for (const Arc& arc : doc.graph->arcs())
      ifv.set(doc.graph->id(arc.source), doc.graph->id(arc.target), arc.impact);
    if (!trigger) trigger = doc.trigger;
  }

  ProbabilityMap estimated;
  if (!a.log.empty()) estimated = estimate_independent_probabilities(log, *catalog);
  ProbabilityMap probs = resolve_probabilities(*catalog, estimated);
  if (!a.probs.empty()) {
    for (const auto& [id, p] : io::parse_probabilities(io::read_file(a.probs))) {
      if (!catalog->find_fault(id))
        throw Error(ErrorCode::UnknownFault, "probability given for unknown fault '" + id.str() + "'");
      probs[id] = p;
    }
  }
  const FaultGraph graph = build_fault_graph(catalog, probs, ifv);
  if (trigger && !graph.find(*trigger))
    throw Error(ErrorCode::UnknownTrigger, "trigger '" + trigger->str() + "' is not in the graph");
  return io::write_graph_json(graph, trigger);
}

struct LocalizeArgs {
  std::string graph, trigger, signals, format = "json";
  Measure measure = Measure::Alpha;
  double threshold = 0.6;
  SignalThresholds signal_thresholds;
  LocalizationFlags localization;
  OutputFlags output;
};

std::string scores_csv(const FaultGraph& graph, const FaultId& trigger, Measure measure,
                       const LocalizationConfig& config) {
  const PropagationResult propagated = propagate_weights(graph, trigger, config.propagation);
  const PropagationGraph fp = build_propagation_graph(propagated.graph, trigger);
  return io::write_scores_csv(compute_centrality(fp, measure, config.centrality));
}

std::string run_localize(const LocalizeArgs& a) {
  io::GraphDocument doc = io::parse_graph_document(io::read_file(a.graph));
  if (!doc.graph) throw Error(ErrorCode::ParseError, "graph file has no \"edges\" array");
  const FaultGraph& graph = *doc.graph;
  const LocalizationConfig config = a.localization.resolved();

  if (!a.signals.empty()) {
    if (!a.trigger.empty()) throw UsageError("--trigger and --signals are exclusive");
    const auto samples = io::parse_signals(io::read_file(a.signals));
    const TriggerDetection detection = detect_triggers(samples, a.signal_thresholds, graph.catalog());
    if (a.format == "csv") {
      if (detection.triggers.size() != 1)
        throw UsageError("csv output needs exactly one detected trigger, found " +
                         std::to_string(detection.triggers.size()));
      return scores_csv(graph, detection.triggers.front().fault, a.measure, config);
    }
    ojson reports = ojson::array();
    for (const TriggerEvent& t : detection.triggers) {
      ojson report = ojson::parse(io::write_report_json(localize(graph, t, a.measure, a.threshold, config)));
      ojson signals = ojson::array();
      for (Signal s : t.crossed_signals) signals.push_back(std::string(to_string(s)));
      report["crossed_signals"] = std::move(signals);
      reports.push_back(std::move(report));
    }
    ojson unattributed = ojson::array();
    for (const UnattributedCrossing& u : detection.unattributed) {
      ojson signals = ojson::array();
      for (Signal s : u.crossed_signals) signals.push_back(std::string(to_string(s)));
      unattributed.push_back(
          ojson{{"sample", u.sample_index}, {"component", u.component.str()}, {"signals", signals}});
    }
    return ojson{{"reports", reports}, {"unattributed", unattributed}}.dump(2) + "\n";
  }

  FaultId trigger;
  if (!a.trigger.empty()) trigger = FaultId(a.trigger);
  else if (doc.trigger) trigger = *doc.trigger;
  else throw UsageError("localize needs --trigger, --signals, or a graph file with a trigger");

  if (a.format == "csv") return scores_csv(graph, trigger, a.measure, config);
  return io::write_report_json(localize(graph, trigger, a.measure, a.threshold, config));
}

struct SimulateArgs {
  ScenarioSpec spec;
  CLI::Option* seed_option = nullptr;
  OutputFlags output;
};

std::string run_simulate(SimulateArgs& a) {
  if (a.seed_option->count() == 0) a.spec.seed = env_seed().value_or(0);
  return io::write_scenario_json(generate_scenario(a.spec));
}

struct SweepArgs {
  std::string grid, format = "csv";
  std::vector<std::uint64_t> seeds;
  std::size_t seed_count = 0;
  SweepOptions options;
  std::string truth_mode = "auto";
  LocalizationFlags localization;
  OutputFlags output;
};

std::string run_sweep_command(SweepArgs& a) {
  SweepGrid grid;
  bool grid_has_seeds = false;
  if (!a.grid.empty()) {
    const std::string text = io::read_file(a.grid);
    grid = io::parse_grid(text);
    const json raw = json::parse(text);
    grid_has_seeds = raw.contains("seeds");
  }
  if (!a.seeds.empty() && a.seed_count > 0) throw UsageError("--seeds and --seed-count are exclusive");
  if (!a.seeds.empty()) {
    grid.seeds = a.seeds;
  } else if (a.seed_count > 0) {
    grid.seeds.clear();
    for (std::uint64_t s = 1; s <= a.seed_count; ++s) grid.seeds.push_back(s);
  } else if (!grid_has_seeds) {
    if (auto s = env_seed()) grid.seeds = {*s};
  }
  a.options.localization = a.localization.resolved();
  if (a.truth_mode == "exact") a.options.truth.mode = GroundTruthMode::Exact;
  else if (a.truth_mode == "monte-carlo") a.options.truth.mode = GroundTruthMode::MonteCarlo;

  const AccuracyReport report = run_sweep(grid, a.options);
  return a.format == "csv" ? io::write_accuracy_csv(report) : io::write_accuracy_json(report);
}

struct ExportDotArgs {
  std::string graph, trigger, name = "faults";
  PropagationConfig propagation;
  OutputFlags output;
};

std::string run_export_dot(const ExportDotArgs& a) {
  io::GraphDocument doc = io::parse_graph_document(io::read_file(a.graph));
  if (!doc.graph) throw Error(ErrorCode::ParseError, "graph file has no \"edges\" array");
  DotStyle style;
  style.graph_name = a.name;
  if (a.trigger.empty()) return to_dot(*doc.graph, style);
  const FaultId trigger(a.trigger);
  const PropagationResult propagated = propagate_weights(*doc.graph, trigger, a.propagation);
  return to_dot(build_propagation_graph(propagated.graph, trigger), style);
}

void print_error(std::ostream& err, std::string_view code, std::string_view message) {
  err << json{{"code", code}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fault localization over probabilistic fault graphs", "faultrank"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");
  // Handled by expand_config before parsing; declared for the help text.
  app.add_option("--config", "JSON file whose keys mirror the flag names");

  ValidateArgs validate_args;
  CLI::App* validate = app.add_subcommand("validate", "Check a catalog (and its edges, if any)");
  validate->add_option("--catalog", validate_args.catalog, "Catalog or graph JSON")->required();
  add_output_flags(validate, validate_args.output);

  BuildArgs build_args;
  CLI::App* build = app.add_subcommand("build", "Build a fault graph from a catalog and a fault log");
  build->add_option("--catalog", build_args.catalog, "Catalog JSON")->required();
  build->add_option("--log", build_args.log, "Fault log CSV (timestamp,incident,fault)");
  build->add_option("--ifv", build_args.ifv, "Impact factor CSV (source,target,ifv)");
  build->add_option("--probs", build_args.probs, "Independent probability CSV (fault,p)");
  build->add_option("--trigger", build_args.trigger, "Trigger fault stored with the graph");
  add_output_flags(build, build_args.output);

  LocalizeArgs localize_args;
  CLI::App* localize_cmd = app.add_subcommand("localize", "Rank vulnerable faults and components");
  localize_cmd->add_option("--graph", localize_args.graph, "Fault graph JSON")->required();
  localize_cmd->add_option("--trigger", localize_args.trigger, "Triggered fault id");
  localize_cmd->add_option("--signals", localize_args.signals,
                           "Golden-signal CSV; every crossing with a recorded fault is a trigger");
  add_choice(localize_cmd, "--measure", localize_args.measure, kMeasures,
             "alpha | eigenvector | closeness");
  localize_cmd->add_option("--threshold", localize_args.threshold, "Normalized score cut-off")
      ->capture_default_str();
  localize_cmd->add_option("--format", localize_args.format, "json (report) | csv (fault,score)")
      ->check(CLI::IsMember({"json", "csv"}));
  localize_cmd->add_option("--traffic-threshold", localize_args.signal_thresholds.traffic);
  localize_cmd->add_option("--latency-threshold", localize_args.signal_thresholds.latency);
  localize_cmd->add_option("--saturation-threshold", localize_args.signal_thresholds.saturation);
  localize_cmd->add_option("--errors-threshold", localize_args.signal_thresholds.errors);
  add_localization_flags(localize_cmd, localize_args.localization);
  add_output_flags(localize_cmd, localize_args.output);

  SimulateArgs simulate_args;
  CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic scenario");
  simulate->add_option("--n-faults", simulate_args.spec.n_faults, "Number of faults")
      ->capture_default_str();
  simulate_args.seed_option =
      simulate->add_option("--seed", simulate_args.spec.seed, "Generator seed (default $FAULTRANK_SEED or 0)");
  add_scenario_flags(simulate, simulate_args.spec);
  add_output_flags(simulate, simulate_args.output);

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Accuracy sweep over fault counts, thresholds and measures");
  sweep->add_option("--grid", sweep_args.grid, "Grid JSON (n_faults, thresholds, measures, seeds)");
  sweep->add_option("--seeds", sweep_args.seeds, "Seeds to run (overrides the grid)");
  sweep->add_option("--seed-count", sweep_args.seed_count, "Run seeds 1..K");
  sweep->add_option("--format", sweep_args.format, "csv (one row per cell) | json (full report)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sweep->add_option("--threads", sweep_args.options.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  sweep->add_option("--trials", sweep_args.options.truth.trials, "Monte-Carlo ground-truth trials")
      ->capture_default_str();
  sweep->add_option("--truth-cutoff", sweep_args.options.truth.truth_cutoff,
                    "Occurrence probability that makes a fault truly vulnerable")
      ->capture_default_str();
  sweep->add_option("--truth-mode", sweep_args.truth_mode, "auto | exact | monte-carlo")
      ->check(CLI::IsMember({"auto", "exact", "monte-carlo"}));
  add_scenario_flags(sweep, sweep_args.options.spec);
  add_localization_flags(sweep, sweep_args.localization);
  add_output_flags(sweep, sweep_args.output);

  ExportDotArgs dot_args;
  CLI::App* export_dot = app.add_subcommand("export-dot", "Write a fault graph as Graphviz DOT");
  export_dot->add_option("--graph", dot_args.graph, "Fault graph JSON")->required();
  export_dot->add_option("--trigger", dot_args.trigger,
                         "Export the propagation graph of this trigger instead");
  export_dot->add_option("--name", dot_args.name, "DOT graph name")->capture_default_str();
  add_propagation_flags(export_dot, dot_args.propagation);
  add_output_flags(export_dot, dot_args.output);

  try {
    std::vector<std::string> expanded = expand_config(std::move(args));
    std::reverse(expanded.begin(), expanded.end());
    app.parse(expanded);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    const auto active = app.get_subcommands();
    err << (active.empty() ? app.help() : active.front()->help());
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "faultrank: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    print_error(err, to_string(e.code()), e.what());
    return kExitDomainError;
  }

  try {
    if (validate->parsed()) {
      emit(stamped(run_validate(validate_args), validate_args.output), validate_args.output, out);
    } else if (build->parsed()) {
      emit(stamped(run_build(build_args), build_args.output), build_args.output, out);
    } else if (localize_cmd->parsed()) {
      std::string result = run_localize(localize_args);
      if (localize_args.format == "json") result = stamped(result, localize_args.output);
      emit(result, localize_args.output, out);
    } else if (simulate->parsed()) {
      emit(stamped(run_simulate(simulate_args), simulate_args.output), simulate_args.output, out);
    } else if (sweep->parsed()) {
      std::string result = run_sweep_command(sweep_args);
      if (sweep_args.format == "json") result = stamped(result, sweep_args.output);
      emit(result, sweep_args.output, out);
    } else if (export_dot->parsed()) {
      emit(run_export_dot(dot_args), dot_args.output, out);
    }
  } catch (const UsageError& e) {
    err << "faultrank: " << e.what() << "\n";
    for (CLI::App* sub : app.get_subcommands()) err << sub->help();
    return kExitUsage;
  } catch (const Error& e) {
    print_error(err, to_string(e.code()), e.what());
    return kExitDomainError;
  } catch (const std::exception& e) {
    print_error(err, "InternalError", e.what());
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace faultrank::cli
