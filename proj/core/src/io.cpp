#include "faultrank/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#ifdef FAULTRANK_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#include "faultrank/error.hpp"

namespace faultrank::io {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_error(const std::string& message) {
  throw Error(ErrorCode::ParseError, message);
}

// ---------------------------------------------------------------- CSV

class CsvTable {
 public:
  CsvTable(std::string_view text, std::vector<std::string_view> columns) {
    auto records = split_records(text);
    if (records.empty()) parse_error("csv: missing header");
    const auto& header = records.front().fields;
    for (auto col : columns) {
      auto it = std::find(header.begin(), header.end(), col);
      if (it == header.end()) parse_error("csv: missing column '" + std::string(col) + "'");
      index_.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    width_ = header.size();
    for (std::size_t r = 1; r < records.size(); ++r) {
      if (records[r].fields.size() != width_)
        parse_error("csv line " + std::to_string(records[r].line) + ": expected " +
                    std::to_string(width_) + " fields, found " +
                    std::to_string(records[r].fields.size()));
      rows_.push_back(std::move(records[r]));
    }
  }

  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t line(std::size_t row) const { return rows_[row].line; }
  const std::string& at(std::size_t row, std::size_t column) const {
    return rows_[row].fields[index_[column]];
  }

  double number(std::size_t row, std::size_t column) const {
    const std::string& s = at(row, column);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
      parse_error("csv line " + std::to_string(line(row)) + ": '" + s + "' is not a number");
    return v;
  }

 private:
  struct Record {
    std::size_t line = 0;
    std::vector<std::string> fields;
  };

  static std::vector<Record> split_records(std::string_view text) {
    std::vector<Record> out;
    Record current;
    std::string field;
    bool quoted = false, any = false;
    std::size_t line = 1;
    current.line = 1;
    auto end_record = [&] {
      current.fields.push_back(std::move(field));
      field.clear();
      const bool blank = current.fields.size() == 1 && current.fields[0].empty() && !any;
      if (!blank) out.push_back(std::move(current));
      current = Record{};
      current.line = line;
      any = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
      const char c = text[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        continue;
      }
      switch (c) {
        case '"':
          quoted = true;
          any = true;
          break;
        case ',':
          current.fields.push_back(std::move(field));
          field.clear();
          any = true;
          break;
        case '\r':
          break;
        case '\n':
          ++line;
          end_record();
          break;
        default:
          field += c;
          any = true;
      }
    }
    if (quoted) parse_error("csv: unterminated quoted field");
    if (any || !field.empty()) end_record();
    for (auto& r : out)
      for (auto& f : r.fields) {
        const auto b = f.find_first_not_of(" \t");
        const auto e = f.find_last_not_of(" \t");
        f = b == std::string::npos ? std::string{} : f.substr(b, e - b + 1);
      }
    return out;
  }

  std::vector<std::size_t> index_;
  std::size_t width_ = 0;
  std::vector<Record> rows_;
};

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

// ---------------------------------------------------------------- JSON

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("json: ") + e.what());
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) parse_error(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_error(where + ": missing \"" + key + "\"");
  return *it;
}

std::string string_at(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_string()) parse_error(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

double number_of(const json& v, const std::string& where) {
  if (!v.is_number()) parse_error(where + " must be a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  return number_of(*it, where + ": \"" + key + "\"");
}

std::uint64_t unsigned_of(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) parse_error(where + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

const json& array_at(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_array()) parse_error(where + ": \"" + key + "\" must be an array");
  return v;
}

std::string item(const char* list, std::size_t i) {
  return std::string(list) + "[" + std::to_string(i) + "]";
}

struct ParsedFaults {
  std::vector<Component> components;
  std::vector<Fault> faults;
  std::map<FaultId, double> weights;
};

ParsedFaults parse_catalog_parts(const json& doc) {
  if (!doc.is_object()) parse_error("catalog: top level must be an object");
  ParsedFaults out;
  const json& components = array_at(doc, "components", "catalog");
  for (std::size_t i = 0; i < components.size(); ++i) {
    const json& c = components[i];
    const std::string where = item("components", i);
    Component comp;
    comp.id = ComponentId(string_at(c, "id", where));
    comp.name = c.contains("name") ? string_at(c, "name", where) : comp.id.str();
    const std::string kind = c.contains("kind") ? string_at(c, "kind", where) : "Other";
    comp.kind = parse_component_kind(kind);
    if (comp.kind == ComponentKind::Other && kind != to_string(ComponentKind::Other))
      comp.other_kind = kind;
    out.components.push_back(std::move(comp));
  }
  const json& faults = array_at(doc, "faults", "catalog");
  for (std::size_t i = 0; i < faults.size(); ++i) {
    const json& f = faults[i];
    const std::string where = item("faults", i);
    Fault fault;
    fault.id = FaultId(string_at(f, "id", where));
    fault.component = ComponentId(string_at(f, "component", where));
    fault.independent_probability = optional_number(f, "p", where);
    if (auto w = optional_number(f, "weight", where)) out.weights[fault.id] = *w;
    out.faults.push_back(std::move(fault));
  }
  return out;
}

ojson catalog_components(const FaultCatalog& catalog) {
  ojson arr = ojson::array();
  for (const Component& c : catalog.components())
    arr.push_back(ojson{{"id", c.id.str()}, {"name", c.name}, {"kind", c.kind_label()}});
  return arr;
}

ojson propagation_json(const PropagationConfig& c) {
  return ojson{{"cycle_epsilon", c.cycle_epsilon},
               {"tolerance", c.tolerance},
               {"max_iters", c.max_iters},
               {"combine", std::string(to_string(c.combine))}};
}

ojson centrality_json(const CentralityConfig& c) {
  ojson out{{"alpha_fraction", c.alpha_fraction}};
  out["alpha_override"] = c.alpha_override ? ojson(*c.alpha_override) : ojson(nullptr);
  out["tolerance"] = c.tolerance;
  out["max_iters"] = c.max_iters;
  out["katz_mode"] = std::string(to_string(c.katz_mode));
  return out;
}

ojson localization_json(const LocalizationConfig& c) {
  return ojson{{"propagation", propagation_json(c.propagation)},
               {"centrality", centrality_json(c.centrality)}};
}

Measure measure_of(const json& v, const std::string& where) {
  if (!v.is_string()) parse_error(where + " must be a string");
  auto m = parse_measure(v.get<std::string>());
  if (!m) parse_error(where + ": unknown measure '" + v.get<std::string>() + "'");
  return *m;
}

std::string_view to_string(Topology t) { return t == Topology::Layered ? "layered" : "uniform"; }

std::string_view to_string(GroundTruthMode m) {
  switch (m) {
    case GroundTruthMode::Auto: return "auto";
    case GroundTruthMode::Exact: return "exact";
    case GroundTruthMode::MonteCarlo: return "monte_carlo";
  }
  return "auto";
}

// -------------------------------------------------------------- time

int digits(std::string_view s, std::size_t pos, std::size_t count, std::string_view whole) {
  if (pos + count > s.size()) parse_error("timestamp '" + std::string(whole) + "' is truncated");
  int v = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (s[i] < '0' || s[i] > '9')
      parse_error("timestamp '" + std::string(whole) + "' has a non-digit where a digit belongs");
    v = v * 10 + (s[i] - '0');
  }
  return v;
}

void expect(std::string_view s, std::size_t pos, char c, std::string_view whole) {
  if (pos >= s.size() || s[pos] != c)
    parse_error("timestamp '" + std::string(whole) + "': expected '" + std::string(1, c) + "'");
}

}  // namespace

// -------------------------------------------------------------- files

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path.string() + "' failed");
}

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::int64_t parse_timestamp(std::string_view text) {
  if (text.empty()) parse_error("empty timestamp");
  {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc{} && ptr == text.data() + text.size()) return v;
  }
  using namespace std::chrono;
  const std::string_view s = text;
  const int y = digits(s, 0, 4, text);
  expect(s, 4, '-', text);
  const int mo = digits(s, 5, 2, text);
  expect(s, 7, '-', text);
  const int d = digits(s, 8, 2, text);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) parse_error("timestamp '" + std::string(text) + "' is not a valid date");
  std::int64_t ms = duration_cast<milliseconds>(sys_days{ymd}.time_since_epoch()).count();
  std::size_t pos = 10;
  if (pos == s.size()) return ms;
  if (s[pos] != 'T' && s[pos] != 't' && s[pos] != ' ')
    parse_error("timestamp '" + std::string(text) + "': expected 'T' after the date");
  const int hh = digits(s, pos + 1, 2, text);
  expect(s, pos + 3, ':', text);
  const int mi = digits(s, pos + 4, 2, text);
  int ss = 0;
  pos += 6;
  if (pos < s.size() && s[pos] == ':') {
    ss = digits(s, pos + 1, 2, text);
    pos += 3;
  }
  if (hh > 23 || mi > 59 || ss > 60) parse_error("timestamp '" + std::string(text) + "' is out of range");
  ms += ((hh * 60LL + mi) * 60LL + ss) * 1000LL;
  if (pos < s.size() && (s[pos] == '.' || s[pos] == ',')) {
    ++pos;
    std::int64_t frac = 0;
    int n = 0;
    for (; pos < s.size() && s[pos] >= '0' && s[pos] <= '9'; ++pos, ++n)
      if (n < 3) frac = frac * 10 + (s[pos] - '0');
    if (n == 0) parse_error("timestamp '" + std::string(text) + "': empty fraction");
    for (; n < 3; ++n) frac *= 10;
    ms += frac;
  }
  if (pos == s.size()) return ms;
  if (s[pos] == 'Z' || s[pos] == 'z') {
    if (pos + 1 != s.size()) parse_error("timestamp '" + std::string(text) + "': trailing text");
    return ms;
  }
  if (s[pos] != '+' && s[pos] != '-')
    parse_error("timestamp '" + std::string(text) + "': bad zone designator");
  const int sign = s[pos] == '+' ? 1 : -1;
  const int oh = digits(s, pos + 1, 2, text);
  pos += 3;
  if (pos < s.size() && s[pos] == ':') ++pos;
  const int om = digits(s, pos, 2, text);
  if (pos + 2 != s.size()) parse_error("timestamp '" + std::string(text) + "': trailing text");
  return ms - sign * (oh * 60LL + om) * 60000LL;
}

// ------------------------------------------------------------ catalog

FaultCatalog parse_catalog(std::string_view text) {
  auto parts = parse_catalog_parts(parse_json(text));
  return build_catalog(std::move(parts.components), std::move(parts.faults));
}

GraphDocument parse_graph_document(std::string_view text) {
  const json doc = parse_json(text);
  auto parts = parse_catalog_parts(doc);
  GraphDocument out;
  out.catalog = std::make_shared<const FaultCatalog>(
      build_catalog(std::move(parts.components), std::move(parts.faults)));

  if (auto t = doc.find("trigger"); t != doc.end() && !t->is_null()) {
    if (!t->is_string()) parse_error("graph: \"trigger\" must be a string");
    out.trigger = FaultId(t->get<std::string>());
  }
  auto edges_it = doc.find("edges");
  if (edges_it == doc.end()) return out;
  if (!edges_it->is_array()) parse_error("graph: \"edges\" must be an array");

  std::vector<Node> nodes;
  for (const Fault& f : out.catalog->faults()) {
    if (!f.independent_probability)
      throw Error(ErrorCode::MissingProbability, "fault '" + f.id.str() + "' has no probability");
    const double p = *f.independent_probability;
    auto w = parts.weights.find(f.id);
    nodes.push_back(Node{f.id, p, w == parts.weights.end() ? p : w->second});
  }
  std::vector<ArcSpec> arcs;
  for (std::size_t i = 0; i < edges_it->size(); ++i) {
    const json& e = (*edges_it)[i];
    const std::string where = item("edges", i);
    ArcSpec arc;
    arc.source = FaultId(string_at(e, "source", where));
    arc.target = FaultId(string_at(e, "target", where));
    arc.impact = number_of(member(e, "ifv", where), where + ": \"ifv\"");
    arc.weight = optional_number(e, "weight", where).value_or(arc.impact);
    arcs.push_back(std::move(arc));
  }
  out.graph.emplace(out.catalog, Digraph(std::move(nodes), std::move(arcs)));
  return out;
}

FaultGraph parse_fault_graph(std::string_view text) {
  GraphDocument doc = parse_graph_document(text);
  if (!doc.graph) parse_error("graph: missing \"edges\"");
  return std::move(*doc.graph);
}

std::string write_catalog_json(const FaultCatalog& catalog) {
  ojson doc;
  doc["components"] = catalog_components(catalog);
  ojson faults = ojson::array();
  for (const Fault& f : catalog.faults()) {
    ojson entry{{"id", f.id.str()}, {"component", f.component.str()}};
    if (f.independent_probability) entry["p"] = *f.independent_probability;
    faults.push_back(std::move(entry));
  }
  doc["faults"] = std::move(faults);
  return doc.dump(2) + "\n";
}

std::string write_graph_json(const FaultGraph& graph, const std::optional<FaultId>& trigger) {
  ojson doc;
  if (trigger) doc["trigger"] = trigger->str();
  doc["components"] = catalog_components(graph.catalog());
  ojson faults = ojson::array();
  for (const Node& n : graph.nodes()) {
    ojson entry{{"id", n.id.str()},
                {"component", graph.catalog().component_of(n.id).str()},
                {"p", n.independent_probability}};
    if (n.weight != n.independent_probability) entry["weight"] = n.weight;
    faults.push_back(std::move(entry));
  }
  doc["faults"] = std::move(faults);
  ojson edges = ojson::array();
  for (const Arc& a : graph.arcs()) {
    ojson entry{{"source", graph.id(a.source).str()},
                {"target", graph.id(a.target).str()},
                {"ifv", a.impact}};
    if (a.weight != a.impact) entry["weight"] = a.weight;
    edges.push_back(std::move(entry));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

std::string write_scenario_json(const Scenario& scenario) {
  return write_graph_json(scenario.graph, scenario.trigger);
}

// ---------------------------------------------------------------- CSV

std::vector<FaultLogRecord> parse_fault_log(std::string_view text) {
  CsvTable t(text, {"timestamp", "incident", "fault"});
  std::vector<FaultLogRecord> out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    FaultLogRecord rec;
    try {
      rec.timestamp = parse_timestamp(t.at(r, 0));
    } catch (const Error& e) {
      parse_error("csv line " + std::to_string(t.line(r)) + ": " + e.what());
    }
    rec.incident = t.at(r, 1);
    rec.fault = FaultId(t.at(r, 2));
    if (rec.fault.empty()) parse_error("csv line " + std::to_string(t.line(r)) + ": empty fault");
    out.push_back(std::move(rec));
  }
  return out;
}

ImpactFactors parse_impact_factors(std::string_view text) {
  CsvTable t(text, {"source", "target", "ifv"});
  ImpactFactors out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    FaultId source(t.at(r, 0)), target(t.at(r, 1));
    if (out.get(source, target))
      throw Error(ErrorCode::DuplicateId, "impact factor " + source.str() + " -> " + target.str() +
                                              " given twice (csv line " +
                                              std::to_string(t.line(r)) + ")");
    out.set(source, target, t.number(r, 2));
  }
  return out;
}

ProbabilityMap parse_probabilities(std::string_view text) {
  CsvTable t(text, {"fault", "p"});
  ProbabilityMap out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    const double p = t.number(r, 1);
    if (!(p >= 0.0 && p <= 1.0))
      throw Error(ErrorCode::InvalidProbability,
                  "probability " + t.at(r, 1) + " outside [0,1] (csv line " + std::to_string(t.line(r)) + ")");
    if (!out.emplace(FaultId(t.at(r, 0)), p).second)
      throw Error(ErrorCode::DuplicateId, "fault '" + t.at(r, 0) + "' listed twice");
  }
  return out;
}

std::vector<SignalSample> parse_signals(std::string_view text) {
  CsvTable t(text, {"component", "traffic", "latency", "saturation", "errors", "observed_fault"});
  std::vector<SignalSample> out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    SignalSample s;
    s.component = ComponentId(t.at(r, 0));
    s.traffic = t.number(r, 1);
    s.latency = t.number(r, 2);
    s.saturation = t.number(r, 3);
    s.errors = t.number(r, 4);
    if (!t.at(r, 5).empty()) s.observed_fault = FaultId(t.at(r, 5));
    out.push_back(std::move(s));
  }
  return out;
}

std::string write_fault_log_csv(const std::vector<FaultLogRecord>& log) {
  std::string out = "timestamp,incident,fault\n";
  for (const auto& r : log)
    out += std::to_string(r.timestamp) + "," + csv_field(r.incident) + "," + csv_field(r.fault.str()) + "\n";
  return out;
}

std::string write_impact_factors_csv(const ImpactFactors& ifv) {
  std::string out = "source,target,ifv\n";
  for (const auto& [key, value] : ifv.entries())
    out += csv_field(key.first.str()) + "," + csv_field(key.second.str()) + "," + format_double(value) + "\n";
  return out;
}

std::string write_scores_csv(const CentralityScores& scores) {
  std::vector<std::size_t> order(scores.ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores.scores[a] != scores.scores[b]) return scores.scores[a] > scores.scores[b];
    return scores.ids[a] < scores.ids[b];
  });
  std::string out = "fault,score\n";
  for (std::size_t i : order)
    out += csv_field(scores.ids[i].str()) + "," + format_double(scores.scores[i]) + "\n";
  return out;
}

// ------------------------------------------------------------- report

std::string write_report_json(const LocalizationReport& report) {
  ojson doc;
  doc["trigger"] = report.trigger.str();
  doc["measure"] = std::string(to_string(report.measure));
  doc["threshold"] = report.threshold;
  ojson faults = ojson::array();
  for (const SelectedFault& f : report.faults)
    faults.push_back(ojson{{"id", f.id.str()}, {"score", f.score}, {"norm", f.normalized}});
  doc["faults"] = std::move(faults);
  ojson components = ojson::array();
  for (const VulnerableComponent& c : report.components)
    components.push_back(ojson{{"id", c.id.str()}, {"score", c.score}});
  doc["components"] = std::move(components);
  doc["config"] = localization_json(report.config);
  doc["diagnostics"] = ojson{{"propagation_converged", report.propagation_converged},
                             {"centrality_converged", report.centrality_converged},
                             {"alpha", report.alpha},
                             {"propagation_nodes", report.propagation_nodes},
                             {"propagation_edges", report.propagation_edges}};
  return doc.dump(2) + "\n";
}

LocalizationReport parse_report_json(std::string_view text) {
  const json doc = parse_json(text);
  LocalizationReport r;
  r.trigger = FaultId(string_at(doc, "trigger", "report"));
  r.measure = measure_of(member(doc, "measure", "report"), "report: \"measure\"");
  r.threshold = number_of(member(doc, "threshold", "report"), "report: \"threshold\"");
  const json& faults = array_at(doc, "faults", "report");
  for (std::size_t i = 0; i < faults.size(); ++i) {
    const std::string where = item("faults", i);
    r.faults.push_back(SelectedFault{FaultId(string_at(faults[i], "id", where)),
                                     number_of(member(faults[i], "score", where), where),
                                     number_of(member(faults[i], "norm", where), where)});
  }
  const json& components = array_at(doc, "components", "report");
  for (std::size_t i = 0; i < components.size(); ++i) {
    const std::string where = item("components", i);
    r.components.push_back(VulnerableComponent{ComponentId(string_at(components[i], "id", where)),
                                               number_of(member(components[i], "score", where), where)});
  }
  if (auto c = doc.find("config"); c != doc.end()) {
    if (auto p = c->find("propagation"); p != c->end()) {
      auto& pc = r.config.propagation;
      pc.cycle_epsilon = optional_number(*p, "cycle_epsilon", "config").value_or(pc.cycle_epsilon);
      pc.tolerance = optional_number(*p, "tolerance", "config").value_or(pc.tolerance);
      if (p->contains("max_iters")) pc.max_iters = unsigned_of((*p)["max_iters"], "config: max_iters");
      if (p->contains("combine")) {
        const std::string mode = string_at(*p, "combine", "config");
        if (mode == "literal") pc.combine = CombineMode::Literal;
        else if (mode == "noisy-or") pc.combine = CombineMode::NoisyOr;
        else parse_error("config: unknown combine mode '" + mode + "'");
      }
    }
    if (auto k = c->find("centrality"); k != c->end()) {
      auto& cc = r.config.centrality;
      cc.alpha_fraction = optional_number(*k, "alpha_fraction", "config").value_or(cc.alpha_fraction);
      cc.alpha_override = optional_number(*k, "alpha_override", "config");
      cc.tolerance = optional_number(*k, "tolerance", "config").value_or(cc.tolerance);
      if (k->contains("max_iters")) cc.max_iters = unsigned_of((*k)["max_iters"], "config: max_iters");
      if (k->contains("katz_mode")) {
        const std::string mode = string_at(*k, "katz_mode", "config");
        if (mode == "direct_solve") cc.katz_mode = KatzMode::DirectSolve;
        else if (mode == "iterative_series") cc.katz_mode = KatzMode::IterativeSeries;
        else parse_error("config: unknown katz_mode '" + mode + "'");
      }
    }
  }
  if (auto d = doc.find("diagnostics"); d != doc.end()) {
    if (d->contains("propagation_converged"))
      r.propagation_converged = (*d)["propagation_converged"].get<bool>();
    if (d->contains("centrality_converged"))
      r.centrality_converged = (*d)["centrality_converged"].get<bool>();
    r.alpha = optional_number(*d, "alpha", "diagnostics").value_or(0.0);
    if (d->contains("propagation_nodes"))
      r.propagation_nodes = unsigned_of((*d)["propagation_nodes"], "diagnostics");
    if (d->contains("propagation_edges"))
      r.propagation_edges = unsigned_of((*d)["propagation_edges"], "diagnostics");
  }
  return r;
}

// -------------------------------------------------------------- sweep

std::string write_accuracy_json(const AccuracyReport& report) {
  ojson doc;
  ojson measures = ojson::array();
  for (Measure m : report.grid.measures) measures.push_back(std::string(to_string(m)));
  doc["grid"] = ojson{{"n_faults", report.grid.n_faults},
                      {"thresholds", report.grid.thresholds},
                      {"measures", measures},
                      {"seeds", report.grid.seeds}};

  const ScenarioSpec& s = report.options.spec;
  ojson mix = ojson::object();
  for (const auto& [kind, share] : s.module_mix) mix[std::string(to_string(kind))] = share;
  const GroundTruthConfig& t = report.options.truth;
  doc["options"] = ojson{
      {"scenario",
       ojson{{"module_mix", mix},
             {"faults_per_component", s.faults_per_component},
             {"edge_density", s.edge_density},
             {"topology", std::string(to_string(s.topology))},
             {"layers", s.layers},
             {"back_edge_fraction", s.back_edge_fraction},
             {"ifv", ojson::array({s.ifv.lo, s.ifv.hi})},
             {"probability", ojson::array({s.probability.lo, s.probability.hi})},
             {"max_retries", s.max_retries}}},
      {"localization", localization_json(report.options.localization)},
      {"truth", ojson{{"truth_cutoff", t.truth_cutoff},
                      {"trials", t.trials},
                      {"exact_limit", t.exact_limit},
                      {"mode", std::string(to_string(t.mode))}}}};

  ojson cells = ojson::array();
  for (const SweepCell& c : report.cells)
    cells.push_back(ojson{{"measure", std::string(to_string(c.measure))},
                          {"threshold", c.threshold},
                          {"n_faults", c.n_faults},
                          {"seed", c.seed},
                          {"tp", c.counts.tp},
                          {"fp", c.counts.fp},
                          {"fn", c.counts.fn},
                          {"tn", c.counts.tn},
                          {"accuracy", c.accuracy},
                          {"selected_faults", c.selected_faults},
                          {"truth_components", c.truth_components}});
  doc["cells"] = std::move(cells);

  ojson aggregates = ojson::array();
  for (const SweepAggregate& a : report.aggregates)
    aggregates.push_back(ojson{{"measure", std::string(to_string(a.measure))},
                               {"threshold", a.threshold},
                               {"cells", a.cells},
                               {"mean_accuracy", a.mean_accuracy},
                               {"stddev_accuracy", a.stddev_accuracy},
                               {"mean_fp", a.mean_fp}});
  doc["aggregates"] = std::move(aggregates);
  return doc.dump(2) + "\n";
}

std::string write_accuracy_csv(const AccuracyReport& report) {
  std::string out = "measure,threshold,n_faults,seed,tp,fp,fn,tn,accuracy\n";
  for (const SweepCell& c : report.cells) {
    out += std::string(to_string(c.measure)) + "," + format_double(c.threshold) + "," +
           std::to_string(c.n_faults) + "," + std::to_string(c.seed) + "," +
           std::to_string(c.counts.tp) + "," + std::to_string(c.counts.fp) + "," +
           std::to_string(c.counts.fn) + "," + std::to_string(c.counts.tn) + "," +
           format_double(c.accuracy) + "\n";
  }
  return out;
}

SweepGrid parse_grid(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) parse_error("grid: top level must be an object");
  SweepGrid grid;
  if (doc.contains("n_faults")) {
    grid.n_faults.clear();
    for (const json& v : array_at(doc, "n_faults", "grid"))
      grid.n_faults.push_back(unsigned_of(v, "grid: n_faults entry"));
  }
  if (doc.contains("thresholds")) {
    grid.thresholds.clear();
    for (const json& v : array_at(doc, "thresholds", "grid"))
      grid.thresholds.push_back(number_of(v, "grid: thresholds entry"));
  }
  if (doc.contains("measures")) {
    grid.measures.clear();
    for (const json& v : array_at(doc, "measures", "grid"))
      grid.measures.push_back(measure_of(v, "grid: measures entry"));
  }
  if (doc.contains("seeds")) {
    grid.seeds.clear();
    for (const json& v : array_at(doc, "seeds", "grid"))
      grid.seeds.push_back(unsigned_of(v, "grid: seeds entry"));
  }
  return grid;
}

}  // namespace faultrank::io
