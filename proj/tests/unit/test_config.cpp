#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bmolab/csv.hpp"
#include "bmolab/harness/config.hpp"
#include "bmolab/harness/experiments.hpp"

using namespace bmolab;
using nlohmann::json;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.grid.cells = 32;
  c.corpus = {CorpusKind::mixed, 6, 3};
  return c;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "bmolab_test_config";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, DefaultsRoundTrip) {
  const ExperimentConfig c;
  const json j = to_json(c);
  EXPECT_EQ(to_json(config_from_json(j)), j);
  EXPECT_EQ(j["kernel"], "odd1d");
  EXPECT_EQ(j["grid"]["cells"], 128);
}

TEST(Config, PartialJsonKeepsDefaults) {
  const auto c = config_from_json(json::parse(R"({"grid": {"cells": 64}, "weight": "power:a=-0.5,center=0.5"})"));
  EXPECT_EQ(c.grid.cells, 64u);
  EXPECT_EQ(c.grid.dim, 1);
  EXPECT_EQ(c.weight, "power:a=-0.5,center=0.5");
  EXPECT_EQ(c.family, "dyadic");
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(config_from_json(json::parse(R"({"gird": {}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"grid": {"cels": 4}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"grid": {"cells": "many"}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"weight": "gaussian"})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"norms": ["strong:0"]})")), Error);
  EXPECT_THROW(config_from_json(json::parse(R"({"lemma1": {"pairs": [[3, 2]]}})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse(R"({"boundary": "reflective"})")), ConfigError);
  EXPECT_THROW(config_from_json(json::parse("[1, 2]")), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/bmolab.json"), ConfigError);
}

TEST(Config, DigestTracksContent) {
  const json a = to_json(ExperimentConfig{});
  json b = a;
  EXPECT_EQ(json_digest(a), json_digest(b));
  b["grid"]["cells"] = 256;
  EXPECT_NE(json_digest(a), json_digest(b));
  EXPECT_EQ(json_digest(a).size(), 16u);
}

TEST(Runners, NormReportLayout) {
  const auto c = small_config();
  const auto out = run_norm(c);
  ASSERT_EQ(out.result["members"].size(), 6u);
  const auto& first = out.result["members"][0][0];
  for (const char* key : {"variant", "parameter", "value", "witness_anchor", "witness_side", "family_kind"}) {
    EXPECT_TRUE(first.contains(key)) << key;
  }
  EXPECT_EQ(out.table.rows.size(), 6u);
  EXPECT_EQ(out.table.header.size(), 1 + c.norms.size());
}

TEST(Runners, SmallExperimentsPass) {
  const auto c = small_config();
  EXPECT_TRUE(run_lemma1(c).passed);
  EXPECT_TRUE(run_cz_decompose(c).passed);
  EXPECT_TRUE(run_weight_check(c).passed);
  const auto rep = make_report("lemma1", c, run_lemma1(c));
  for (const char* key : {"command", "config", "config_digest", "passed", "result", "result_digest"}) {
    EXPECT_TRUE(rep.contains(key)) << key;
  }
  EXPECT_EQ(rep["config_digest"], json_digest(to_json(c)));
  EXPECT_EQ(make_report("lemma1", c, run_lemma1(c)).dump(), rep.dump());
  EXPECT_THROW(run_command("nonsense", c), ConfigError);
}

TEST(Runners, InputFunctionReplacesCorpus) {
  auto c = small_config();
  const Grid g = c.make_grid();
  const auto f = log_exemplar(g, {0.3, 0.3});
  EXPECT_EQ(run_norm(c, &f).result["members"].size(), 1u);
  const auto other = GridFunction::constant(Grid(1, 1.0, 16), 1.0);
  EXPECT_THROW(run_norm(c, &other), ConfigError);
}

TEST(Table, CsvOutput) {
  Table t;
  t.header = {"a", "b"};
  t.add({"1", format_number(0.1)});
  std::stringstream ss;
  t.write_csv(ss);
  EXPECT_EQ(ss.str(), "a,b\n1,0.1\n");
}

TEST(Cli, SmokeRun) {
  const auto cfg = scratch("config.json");
  const auto report = scratch("report.json");
  const auto table = scratch("table.csv");
  const auto input = scratch("input.csv");
  {
    std::ofstream f(cfg);
    f << to_json(small_config()).dump();
  }
  save_csv(log_exemplar(Grid(1, 1.0, 32), {0.5, 0.5}), input.string());
  const std::string cli = BMOLAB_CLI_PATH;
  const std::string cmd = cli + " lemma1 -c " + cfg.string() + " -o " + report.string() + " --csv " +
                          table.string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const json rep = json::parse(slurp(report));
  EXPECT_EQ(rep["command"], "lemma1");
  EXPECT_TRUE(rep["passed"].get<bool>());
  EXPECT_EQ(rep["config"]["grid"]["cells"], 32);
  EXPECT_EQ(slurp(table).substr(0, 6), "member");

  const std::string norm = cli + " norm -c " + cfg.string() + " -i " + input.string() + " -o " + report.string();
  ASSERT_EQ(std::system(norm.c_str()), 0);
  EXPECT_EQ(json::parse(slurp(report))["result"]["members"].size(), 1u);

  const std::string bad = cli + " lemma1 -c /nonexistent.json > /dev/null 2>&1";
  EXPECT_NE(std::system(bad.c_str()), 0);
  const auto dumped = scratch("defaults.json");
  ASSERT_EQ(std::system((cli + " --dump-config " + dumped.string()).c_str()), 0);
  EXPECT_EQ(json::parse(slurp(dumped)), to_json(ExperimentConfig{}));
}
