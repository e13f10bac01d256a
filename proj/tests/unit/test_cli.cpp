#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

#ifdef FAULTRANK_VENDORED_JSON
#include "json.hpp"
#else
#include <nlohmann/json.hpp>
#endif

#include "cli.hpp"
#include "faultrank/io.hpp"

namespace faultrank {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return (fs::path(FAULTRANK_TEST_DATA_DIR) / name).string(); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("faultrank-cli-" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const char* name, std::string_view content) {
    const fs::path p = dir_ / name;
    io::write_file(p, content);
    return p.string();
  }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, LocalizeWorkedExample) {
  const Result r = run({"localize", "--graph", fixture("fig42.json"), "--trigger", "f2j", "--measure", "alpha",
                        "--threshold", "0.6"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report["trigger"], "f2j");
  EXPECT_EQ(report["measure"], "alpha");
  ASSERT_EQ(report["faults"].size(), 1u);
  EXPECT_EQ(report["faults"][0]["id"], "f2j");
  EXPECT_EQ(report["components"][0]["id"], "C2");
  EXPECT_TRUE(report.contains("config"));
}

TEST_F(Cli, LocalizeCsvScores) {
  const Result r = run({"localize", "--graph", fixture("fig42.json"), "--trigger", "f2j", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "fault,score\nf2j,1\nf1i,0.07888\n");
}

TEST_F(Cli, ValidateEmptyCatalogFails) {
  const Result r = run({"validate", "--catalog", fixture("empty_catalog.json")});
  EXPECT_EQ(r.code, cli::kExitDomainError);
  EXPECT_TRUE(r.out.empty());
  ASSERT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  const json e = json::parse(r.err);
  EXPECT_EQ(e["code"], "EmptyCatalog");
  EXPECT_TRUE(e["message"].is_string());
}

TEST_F(Cli, ValidateSummary) {
  const Result r = run({"validate", "--catalog", fixture("fig42.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json v = json::parse(r.out);
  EXPECT_EQ(v["valid"], true);
  EXPECT_EQ(v["components"], 2);
  EXPECT_EQ(v["faults"], 2);
  EXPECT_EQ(v["edges"], 1);
}

TEST_F(Cli, MissingFileIsIoError) {
  const Result r = run({"validate", "--catalog", path("absent.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.err)["code"], "IoError");
}

TEST_F(Cli, UsageErrorsExitTwo) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"localize", "--graph", fixture("fig42.json"), "--bogus"},
           {"frobnicate"},
           {},
           {"localize", "--graph", fixture("fig42.json"), "--measure", "pagerank"},
           {"localize", "--graph", fixture("fig42.json")},
           {"sweep", "--format", "xml"}}) {
    const Result r = run(args);
    EXPECT_EQ(r.code, cli::kExitUsage) << r.err;
    EXPECT_NE(r.err.find("Usage"), std::string::npos) << r.err;
  }
}

TEST_F(Cli, DefaultSweepCsvRows) {
  const Result r = run({"sweep"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 1 + 6 * 3 * 3);
  EXPECT_EQ(r.out.rfind("measure,threshold,n_faults,seed,tp,fp,fn,tn,accuracy\n", 0), 0u);

  const Result two = run({"sweep", "--seeds", "1", "2", "--n-faults", "85"});
  EXPECT_EQ(two.code, cli::kExitUsage);  // --n-faults belongs to simulate
  const Result seeds = run({"sweep", "--seeds", "1", "2"});
  ASSERT_EQ(seeds.code, 0) << seeds.err;
  EXPECT_EQ(std::count(seeds.out.begin(), seeds.out.end(), '\n'), 1 + 2 * 54);
}

TEST_F(Cli, SweepJsonIsThreadIndependent) {
  const std::string grid = write("grid.json", R"({"n_faults":[85,90],"seeds":[3,4]})");
  const Result a = run({"sweep", "--grid", grid, "--format", "json", "--threads", "1"});
  const Result b = run({"sweep", "--grid", grid, "--format", "json", "--threads", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json doc = json::parse(a.out);
  EXPECT_EQ(doc["cells"].size(), 2u * 2u * 9u);
}

TEST_F(Cli, SimulateBuildLocalizeRoundTrip) {
  const Result sim = run({"simulate", "--n-faults", "40", "--seed", "7"});
  ASSERT_EQ(sim.code, 0) << sim.err;
  EXPECT_EQ(run({"simulate", "--n-faults", "40", "--seed", "7"}).out, sim.out);

  const std::string scenario = write("scenario.json", sim.out);
  const Result rebuilt = run({"build", "--catalog", scenario});
  ASSERT_EQ(rebuilt.code, 0) << rebuilt.err;
  EXPECT_EQ(rebuilt.out, sim.out);

  // The scenario file carries its trigger, so --trigger is optional.
  for (const char* measure : {"alpha", "eigenvector", "closeness"}) {
    const Result loc = run({"localize", "--graph", scenario, "--measure", measure});
    ASSERT_EQ(loc.code, 0) << loc.err;
    EXPECT_EQ(json::parse(loc.out)["trigger"], json::parse(sim.out)["trigger"]);
    EXPECT_FALSE(json::parse(loc.out)["faults"].empty());
  }
}

TEST_F(Cli, BuildFromLogAndOverrides) {
  const std::string catalog = write("catalog.json", R"({
    "components": [{"id": "C1", "name": "api", "kind": "Runtime"}, {"id": "C2", "name": "db", "kind": "Database"}],
    "faults": [{"id": "a", "component": "C1"}, {"id": "b", "component": "C2"}]})");
  const std::string log = write("log.csv",
                                "timestamp,incident,fault\n"
                                "2024-03-01T00:00:00Z,i1,a\n2024-03-01T00:00:05Z,i1,b\n"
                                "2024-03-01T01:00:00Z,i2,a\n");
  const Result r = run({"build", "--catalog", catalog, "--log", log});
  ASSERT_EQ(r.code, 0) << r.err;
  const json g = json::parse(r.out);
  ASSERT_EQ(g["edges"].size(), 1u);
  EXPECT_EQ(g["edges"][0]["source"], "a");
  EXPECT_EQ(g["edges"][0]["ifv"], 1.0);
  EXPECT_EQ(g["faults"][0]["p"], 1.0);
  EXPECT_EQ(g["faults"][1]["p"], 0.5);

  const std::string probs = write("probs.csv", "fault,p\nb,0.2\n");
  const json overridden = json::parse(run({"build", "--catalog", catalog, "--log", log, "--probs", probs}).out);
  EXPECT_EQ(overridden["faults"][1]["p"], 0.2);

  const std::string bad = write("bad.csv", "fault,p\nzz,0.2\n");
  const Result unknown = run({"build", "--catalog", catalog, "--log", log, "--probs", bad});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_EQ(json::parse(unknown.err)["code"], "UnknownFault");

  EXPECT_EQ(run({"build", "--catalog", catalog}).code, cli::kExitUsage);
}

TEST_F(Cli, LocalizeFromSignals) {
  const std::string signals = write("signals.csv",
                                    "component,traffic,latency,saturation,errors,observed_fault\n"
                                    "C2,0.1,0.95,0.1,0.1,f2j\n"
                                    "C1,0.99,0.1,0.1,0.1,\n"
                                    "C1,0.1,0.1,0.1,0.1,f1i\n");
  const Result r = run({"localize", "--graph", fixture("fig42.json"), "--signals", signals});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["reports"].size(), 1u);
  EXPECT_EQ(doc["reports"][0]["trigger"], "f2j");
  EXPECT_EQ(doc["reports"][0]["crossed_signals"], json::array({"latency"}));
  ASSERT_EQ(doc["unattributed"].size(), 1u);
  EXPECT_EQ(doc["unattributed"][0]["component"], "C1");
}

TEST_F(Cli, TimestampsAndOutFile) {
  const Result r = run({"validate", "--catalog", fixture("fig42.json"), "--timestamps"});
  ASSERT_EQ(r.code, 0);
  const json v = json::parse(r.out);
  ASSERT_TRUE(v.contains("generated_at"));
  EXPECT_TRUE(std::regex_match(v["generated_at"].get<std::string>(),
                               std::regex(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z)")));
  EXPECT_FALSE(json::parse(run({"validate", "--catalog", fixture("fig42.json")}).out).contains("generated_at"));

  const std::string target = path("out.json");
  const Result to_file = run({"validate", "--catalog", fixture("fig42.json"), "--out", target});
  ASSERT_EQ(to_file.code, 0);
  EXPECT_TRUE(to_file.out.empty());
  EXPECT_EQ(json::parse(io::read_file(target))["faults"], 2);
}

TEST_F(Cli, ConfigFileMirrorsFlags) {
  const std::string config = write("cfg.json", R"({"measure": "closeness", "threshold": 0.1, "trigger": "f2j",
                                                   "format": "csv"})");
  const Result r = run({"localize", "--graph", fixture("fig42.json"), "--config", config});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "fault,score\nf2j,0.34\nf1i,0\n");

  // Explicit flags win.
  const Result json_out = run({"localize", "--graph", fixture("fig42.json"), "--config", config, "--format", "json"});
  ASSERT_EQ(json_out.code, 0) << json_out.err;
  EXPECT_EQ(json::parse(json_out.out)["measure"], "closeness");

  const std::string broken = write("broken.json", "{");
  EXPECT_EQ(run({"localize", "--graph", fixture("fig42.json"), "--config", broken}).code, 1);
}

TEST_F(Cli, SeedFromEnvironment) {
  ::setenv("FAULTRANK_SEED", "11", 1);
  const Result env = run({"simulate", "--n-faults", "30"});
  ::unsetenv("FAULTRANK_SEED");
  const Result explicit_seed = run({"simulate", "--n-faults", "30", "--seed", "11"});
  const Result default_seed = run({"simulate", "--n-faults", "30"});
  ASSERT_EQ(env.code, 0) << env.err;
  EXPECT_EQ(env.out, explicit_seed.out);
  EXPECT_NE(env.out, default_seed.out);

  ::setenv("FAULTRANK_SEED", "eleven", 1);
  const Result bad = run({"simulate", "--n-faults", "30"});
  ::unsetenv("FAULTRANK_SEED");
  EXPECT_EQ(bad.code, cli::kExitUsage);
}

TEST_F(Cli, ExportDot) {
  const Result whole = run({"export-dot", "--graph", fixture("fig42.json")});
  ASSERT_EQ(whole.code, 0) << whole.err;
  EXPECT_EQ(whole.out.rfind("digraph \"faults\" {", 0), 0u);
  EXPECT_NE(whole.out.find("\"f2j\" -> \"f1i\""), std::string::npos);
  EXPECT_NE(whole.out.find("p=0.1790"), std::string::npos);

  const Result propagated = run({"export-dot", "--graph", fixture("fig42.json"), "--trigger", "f2j"});
  ASSERT_EQ(propagated.code, 0) << propagated.err;
  EXPECT_NE(propagated.out.find("p=0.0789"), std::string::npos);
  EXPECT_NE(propagated.out.find("ifv=0.0789"), std::string::npos);

  const Result unknown = run({"export-dot", "--graph", fixture("fig42.json"), "--trigger", "zz"});
  EXPECT_EQ(unknown.code, 1);
  EXPECT_EQ(json::parse(unknown.err)["code"], "UnknownTrigger");
}

}  // namespace
}  // namespace faultrank
