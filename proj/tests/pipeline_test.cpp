#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <map>

#include "lexevo/error.hpp"
#include "lexevo/io.hpp"
#include "lexevo/pipeline.hpp"
#include "support.hpp"

using namespace lexevo;
namespace fs = std::filesystem;

namespace {

RunConfig synthetic_config(const fs::path& out) {
  auto config = RunConfig::load(testkit::data_path("example.conf"));
  config.output = out;
  return config;
}

std::map<std::string, std::string> artifact_set(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name == "timings.json") continue;
    out[name] = read_file(entry.path());
  }
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no lexevo::Error thrown";
  return ErrorCode::internal;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LEXEVO_CLI) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, ParsesKeysAndResolvesPaths) {
  const auto config = RunConfig::parse(
      "# comment\ninput = corpus.csv\n min_term_frequency = 3 \nweighting = tf-idf\nca_matrix = weighted\n"
      "exclude_types = other, book\nschema.citations =\nperiods = A:2000-2004, B:2005-2010\n",
      "/base/dir");
  EXPECT_EQ(config.input, fs::path("/base/dir/corpus.csv"));
  EXPECT_EQ(config.min_term_frequency, 3u);
  EXPECT_EQ(config.weighting, WeightingScheme::tf_idf);
  EXPECT_EQ(config.ca_matrix, CaMatrixSource::weighted);
  EXPECT_EQ(config.excluded_types, (std::set<DocType>{DocType::other, DocType::book}));
  EXPECT_FALSE(config.schema.citations);
  EXPECT_EQ(config.periods.size(), 2u);
}

TEST(Config, Errors) {
  EXPECT_EQ(code_of([] { RunConfig::parse("colour = blue\n", "/"); }), ErrorCode::config);
  EXPECT_EQ(code_of([] { RunConfig::parse("ca_dims = two\n", "/"); }), ErrorCode::config);
  EXPECT_EQ(code_of([] { RunConfig::parse("no equals sign\n", "/"); }), ErrorCode::config);
  EXPECT_EQ(code_of([] { RunConfig::parse("exclude_types = pamphlet\n", "/"); }), ErrorCode::config);
  EXPECT_EQ(code_of([] { RunConfig::parse("input = /definitely/missing.csv\n", "/").validate(); }), ErrorCode::config);
  auto config = synthetic_config("/tmp/unused");
  config.ca_dims = 0;
  EXPECT_EQ(code_of([&] { config.validate(); }), ErrorCode::config);
}

TEST(Config, EchoReloadsIdentically) {
  const auto config = synthetic_config("/tmp/x");
  const auto echo = config.echo();
  const auto again = RunConfig::parse(echo, "/somewhere/else");
  EXPECT_EQ(again.echo(), echo);
  EXPECT_EQ(echo.find("output"), echo.find("output directory omitted"));
}

TEST(Pipeline, FullRunProducesEveryArtifact) {
  const auto out = testkit::scratch_dir("full");
  const auto config = synthetic_config(out);
  const auto manifest = nlohmann::json::parse(run_pipeline(config));
  EXPECT_EQ(manifest["status"], "OK");
  for (Stage s : {Stage::ingest, Stage::stats, Stage::ca, Stage::periods, Stage::figures}) {
    for (const auto& name : stage_artifacts(s, config)) {
      EXPECT_TRUE(fs::exists(out / name)) << name;
      EXPECT_EQ(manifest["artifacts"][name], fnv1a_hex(read_file(out / name))) << name;
    }
  }
  EXPECT_EQ(manifest["stages"]["stats"]["vocabulary_size"], 40);
  EXPECT_EQ(manifest["stages"]["ca"]["singular_values"].size(), 39u);
  EXPECT_EQ(manifest["config"]["min_term_frequency"], "5");
  EXPECT_TRUE(manifest["stages"]["ingest"].contains("corpus_hash"));
  EXPECT_TRUE(fs::exists(out / "timings.json"));
}

TEST(Pipeline, StagedRunEqualsFullRun) {
  const auto full = testkit::scratch_dir("staged-full");
  const auto staged = testkit::scratch_dir("staged-steps");
  run_pipeline(synthetic_config(full));
  const auto config = synthetic_config(staged);
  for (Stage s : {Stage::ingest, Stage::stats, Stage::ca, Stage::periods, Stage::figures}) run_stage(s, config);
  EXPECT_EQ(artifact_set(full), artifact_set(staged));
}

TEST(Pipeline, MissingUpstreamNamesProducer) {
  const auto out = testkit::scratch_dir("missing");
  try {
    run_stage(Stage::ca, synthetic_config(out));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::dependency);
    EXPECT_NE(std::string(e.what()).find("lexevo ingest"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("stage 'ca'"), std::string::npos);
  }
  const auto manifest = nlohmann::json::parse(read_file(out / "manifest.json"));
  EXPECT_EQ(manifest["status"], "FAILED");
  EXPECT_EQ(manifest["failed_stage"], "ca");
}

TEST(Pipeline, EmptyInputFailsAtIngest) {
  const auto out = testkit::scratch_dir("empty");
  write_file(out / "empty.csv", "");
  auto config = synthetic_config(out / "run");
  config.input = out / "empty.csv";
  EXPECT_EQ(code_of([&] { run_pipeline(config); }), ErrorCode::schema);
  const auto manifest = nlohmann::json::parse(read_file(out / "run" / "manifest.json"));
  EXPECT_EQ(manifest["failed_stage"], "ingest");
}

TEST(Pipeline, WeightedMatrixOption) {
  const auto out = testkit::scratch_dir("weighted");
  auto config = synthetic_config(out);
  config.ca_matrix = CaMatrixSource::weighted;
  config.weighting = WeightingScheme::entropy;
  const auto manifest = nlohmann::json::parse(run_pipeline(config));
  EXPECT_EQ(manifest["stages"]["ca"]["matrix"], "entropy");
}

TEST(Pipeline, RerunFromEchoedConfig) {
  const auto first = testkit::scratch_dir("echo-a");
  const auto second = testkit::scratch_dir("echo-b");
  run_pipeline(synthetic_config(first));
  auto again = RunConfig::load(first / "config.echo");
  again.output = second;
  run_pipeline(again);
  EXPECT_EQ(artifact_set(first), artifact_set(second));
}

TEST(Cli, ExitCodesAndStaging) {
  const auto out = testkit::scratch_dir("cli");
  const std::string conf = testkit::data_path("example.conf").string();
  EXPECT_EQ(run_cli("ca --config " + conf + " --out " + out.string()), 1);
  EXPECT_EQ(run_cli("ingest --config " + conf + " --out " + out.string()), 0);
  EXPECT_EQ(run_cli("stats --config " + conf + " --out " + out.string()), 0);
  EXPECT_TRUE(fs::exists(out / "stats.json"));
  EXPECT_EQ(run_cli("stats --config /no/such.conf"), 1);
  EXPECT_EQ(run_cli("stats --config " + conf + " --set ca_dims=x"), 1);
  EXPECT_EQ(run_cli("bogus"), 1);

  const auto bad = testkit::scratch_dir("cli-bad");
  write_file(bad / "bad.csv", "EID,Title,Abstract,Author Keywords,Year,Document Type,Cited by\n");
  write_file(bad / "bad.conf", "input = bad.csv\n");
  EXPECT_EQ(run_cli("run --config " + (bad / "bad.conf").string() + " --out " + (bad / "o").string()), 2);
}

TEST(Cli, FiguresSeedIsDeterministic) {
  const auto out = testkit::scratch_dir("cli-seed");
  const std::string conf = testkit::data_path("example.conf").string();
  ASSERT_EQ(run_cli("run --config " + conf + " --out " + out.string()), 0);
  ASSERT_EQ(run_cli("figures --config " + conf + " --out " + out.string() + " --seed 7"), 0);
  const auto first = read_file(out / "fig_word_cloud.svg");
  ASSERT_EQ(run_cli("figures --config " + conf + " --out " + out.string() + " --seed 7"), 0);
  EXPECT_EQ(read_file(out / "fig_word_cloud.svg"), first);
  const auto manifest = nlohmann::json::parse(read_file(out / "manifest.json"));
  EXPECT_EQ(manifest["config"]["seed"], "7");
}
