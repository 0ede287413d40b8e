// Copyright 2026 The anomatch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Runs the anomatch binary as a subprocess.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "anomatch/checkpoint.h"
#include "anomatch/graph.h"
#include "anomatch/preprocess.h"
#include "anomatch/synthetic.h"
#include "anomatch/text_io.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace anomatch {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr
};

RunResult RunCli(const std::string& args, const fs::path& scratch,
              const std::string& env = {}) {
  const fs::path log = scratch / "run_output.txt";
  const std::string cmd = env + " '" ANOMATCH_CLI_PATH "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.output = ReadFileBytes(log);
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ClusteredGraphConfig cfg;
    cfg.num_nodes = 100;
    cfg.feature_dim = 8;
    cfg.clusters = 4;
    cfg.seed = 11;
    graph_ = GenerateClusteredGraph(cfg).graph;
    SaveGraph(graph_, Edges(), Features());
  }
  fs::path Edges() const { return dir_ / "e.txt"; }
  fs::path Features() const { return dir_ / "x.txt"; }
  std::string GraphArgs() const {
    return "--edges " + Edges().string() + " --features " + Features().string();
  }

  testing::TempDir dir_;
  Graph graph_;
};

TEST_F(CliTest, InjectWritesAllOutputs) {
  auto r = RunCli("inject " + GraphArgs() + " --p 5 --q 2 --seed 7 --out " +
                   (dir_ / "inj").string(),
               dir_.path());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  for (const char* f : {"edges.txt", "features.txt", "labels.txt", "provenance.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "inj" / f)) << f;
  }
  auto labels = ReadLabels(dir_ / "inj" / "labels.txt");
  EXPECT_EQ(std::count(labels.begin(), labels.end(), 1), 20);
  auto prov = nlohmann::json::parse(ReadFileBytes(dir_ / "inj" / "provenance.json"));
  EXPECT_EQ(prov["seed"], 7);
  EXPECT_EQ(prov["config"]["seed"], 7);
  EXPECT_NE(ReadFileBytes(dir_ / "inj" / "labels.txt").find("# seed: 7"),
            std::string::npos);
}

TEST_F(CliTest, InjectIsByteReproducible) {
  for (const char* out : {"a", "b"}) {
    auto r = RunCli("inject " + GraphArgs() + " --p 5 --q 2 --seed 7 --out " +
                     (dir_ / out).string(),
                 dir_.path());
    ASSERT_EQ(r.exit_code, 0) << r.output;
  }
  for (const char* f : {"edges.txt", "features.txt", "labels.txt", "provenance.json"}) {
    EXPECT_EQ(ReadFileBytes(dir_ / "a" / f), ReadFileBytes(dir_ / "b" / f)) << f;
  }
}

TEST_F(CliTest, InjectNamesViolatedBound) {
  auto r = RunCli("inject " + GraphArgs() + " --p 200 --q 200 --out " +
                   (dir_ / "bad").string(),
               dir_.path());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("2pq <= n"), std::string::npos) << r.output;
}

TEST_F(CliTest, InjectRequiresPAndQ) {
  auto r = RunCli("inject " + GraphArgs() + " --p 3 --out " + (dir_ / "bad").string(),
               dir_.path());
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, ZeroEpochsRejected) {
  auto r = RunCli("train " + GraphArgs() + " --epochs 0 --out " +
                   (dir_ / "t").string(),
               dir_.path());
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_FALSE(fs::exists(dir_ / "t" / "checkpoint.txt"));
}

TEST_F(CliTest, MissingInputFileIsUserError) {
  auto r = RunCli("train --edges /nonexistent --features " + Features().string() +
                   " --out " + (dir_ / "t").string(),
               dir_.path());
  EXPECT_EQ(r.exit_code, 2);
}

TEST_F(CliTest, ExplicitDefaultsMatchNoFlags) {
  const std::string common = "train " + GraphArgs() + " --epochs 5 --out ";
  auto a = RunCli(common + (dir_ / "a").string(), dir_.path());
  auto b = RunCli(common + (dir_ / "b").string() +
                   " --lr 3e-4 --alpha 0.9 --gamma 0.1 --k 2 --dh 128",
               dir_.path());
  ASSERT_EQ(a.exit_code, 0) << a.output;
  ASSERT_EQ(b.exit_code, 0) << b.output;
  EXPECT_EQ(ReadFileBytes(dir_ / "a" / "checkpoint.txt"),
            ReadFileBytes(dir_ / "b" / "checkpoint.txt"));
}

TEST_F(CliTest, TrainLogHasOneLinePerEpoch) {
  auto r = RunCli("train " + GraphArgs() + " --epochs 4 --seed 9 --out " +
                   (dir_ / "t").string(),
               dir_.path());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto lines = ReadDataLines(dir_ / "t" / "train_log.txt", nullptr);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(SplitFields(lines[3]).size(), 3u);
  EXPECT_EQ(SplitFields(lines[3])[0], "4");
  auto ckpt = LoadCheckpoint(dir_ / "t" / "checkpoint.txt");
  EXPECT_EQ(nlohmann::json::parse(ckpt.config_json)["seed"], 9);
}

TEST_F(CliTest, ThreadCountDoesNotChangeCheckpoint) {
  const std::string common = "train " + GraphArgs() + " --epochs 3 --out ";
  auto a = RunCli(common + (dir_ / "a").string(), dir_.path(), "ANOMATCH_NUM_THREADS=1");
  auto b = RunCli(common + (dir_ / "b").string(), dir_.path(), "ANOMATCH_NUM_THREADS=4");
  ASSERT_EQ(a.exit_code, 0) << a.output;
  ASSERT_EQ(b.exit_code, 0) << b.output;
  EXPECT_EQ(ReadFileBytes(dir_ / "a" / "checkpoint.txt"),
            ReadFileBytes(dir_ / "b" / "checkpoint.txt"));
}

TEST_F(CliTest, ConfigFileIsOverriddenByFlags) {
  testing::WriteText(dir_ / "cfg.json", R"({"epochs": 0, "seed": 4})");
  const std::string base = "train " + GraphArgs() + " --config " +
                           (dir_ / "cfg.json").string() + " --out ";
  EXPECT_EQ(RunCli(base + (dir_ / "a").string(), dir_.path()).exit_code, 2);
  auto r = RunCli(base + (dir_ / "b").string() + " --epochs 2", dir_.path());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto j = nlohmann::json::parse(
      LoadCheckpoint(dir_ / "b" / "checkpoint.txt").config_json);
  EXPECT_EQ(j["epochs"], 2);
  EXPECT_EQ(j["seed"], 4);
}

TEST_F(CliTest, UnknownConfigKeyRejected) {
  testing::WriteText(dir_ / "cfg.json", R"({"learning_rate": 0.1})");
  auto r = RunCli("train " + GraphArgs() + " --config " +
                   (dir_ / "cfg.json").string() + " --out " + (dir_ / "a").string(),
               dir_.path());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("learning_rate"), std::string::npos);
}

TEST_F(CliTest, PreprocessThenTrainFromDirectory) {
  ASSERT_EQ(RunCli("preprocess " + GraphArgs() + " --k 3 --out " +
                    (dir_ / "prep").string(),
                dir_.path())
                .exit_code,
            0);
  auto prep = LoadPreprocessed(dir_ / "prep");
  EXPECT_EQ(prep.k, 3);
  EXPECT_EQ(MaxAbsDiff(prep.neighbor, AnonymizedPropagate(graph_, 3).neighbor), 0.0);
  auto r = RunCli("train --prep " + (dir_ / "prep").string() +
                   " --epochs 2 --out " + (dir_ / "t").string(),
               dir_.path());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto j = nlohmann::json::parse(
      LoadCheckpoint(dir_ / "t" / "checkpoint.txt").config_json);
  EXPECT_EQ(j["k"], 3);
  EXPECT_EQ(RunCli("train --prep " + (dir_ / "prep").string() +
                    " --k 2 --epochs 2 --out " + (dir_ / "u").string(),
                dir_.path())
                .exit_code,
            2);
}

TEST_F(CliTest, EvalWithoutLabelsWritesScoresOnly) {
  ASSERT_EQ(RunCli("train " + GraphArgs() + " --epochs 2 --out " +
                    (dir_ / "t").string(),
                dir_.path())
                .exit_code,
            0);
  auto r = RunCli("eval " + GraphArgs() + " --checkpoint " +
                   (dir_ / "t" / "checkpoint.txt").string() + " --out " +
                   (dir_ / "e").string(),
               dir_.path());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(ReadColumn(dir_ / "e" / "scores.txt").size(), 100u);
  EXPECT_FALSE(fs::exists(dir_ / "e" / "metrics.json"));

  // score matches eval's scores file.
  ASSERT_EQ(RunCli("score " + GraphArgs() + " --checkpoint " +
                    (dir_ / "t" / "checkpoint.txt").string() + " --out " +
                    (dir_ / "s.txt").string(),
                dir_.path())
                .exit_code,
            0);
  EXPECT_EQ(ReadColumn(dir_ / "s.txt"), ReadColumn(dir_ / "e" / "scores.txt"));
}

TEST_F(CliTest, PerfectSeparationGivesUnitAuc) {
  // Identity model: normal nodes have ego == neighbor (score -1), anomalies
  // have ego == -neighbor (score +1).
  const std::size_t n = 10, d = 3;
  std::mt19937_64 gen(5);
  PreprocessedFeatures prep;
  prep.k = 2;
  prep.ego = testing::RandomMatrix(n, d, gen);
  prep.neighbor = prep.ego;
  LabelVector labels(n, 0);
  for (std::size_t i : {2, 7}) {
    labels[i] = 1;
    for (std::size_t c = 0; c < d; ++c) prep.neighbor(i, c) = -prep.ego(i, c);
  }
  SavePreprocessed(prep, dir_ / "prep");
  Checkpoint ckpt{ModelParameters::Zeros(d, d), "{}"};
  ckpt.params.w1 = Matrix::Identity(d);
  ckpt.params.w2 = Matrix::Identity(d);
  SaveCheckpoint(dir_ / "ckpt.txt", ckpt);
  WriteLabels(dir_ / "labels.txt", labels);

  auto r = RunCli("eval --prep " + (dir_ / "prep").string() + " --checkpoint " +
                   (dir_ / "ckpt.txt").string() + " --labels " +
                   (dir_ / "labels.txt").string() + " --out " +
                   (dir_ / "e").string(),
               dir_.path());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto j = nlohmann::json::parse(ReadFileBytes(dir_ / "e" / "metrics.json"));
  EXPECT_EQ(j["auc"], 1.0);
  EXPECT_EQ(j["anomalies"], 2);
}

TEST_F(CliTest, CheckpointDimensionMismatch) {
  SaveCheckpoint(dir_ / "ckpt.txt", Checkpoint{ModelParameters::Zeros(5, 4), "{}"});
  auto r = RunCli("eval " + GraphArgs() + " --checkpoint " +
                   (dir_ / "ckpt.txt").string() + " --out " + (dir_ / "e").string(),
               dir_.path());
  EXPECT_EQ(r.exit_code, 2) << r.output;
}

TEST_F(CliTest, PipelineProducesMetrics) {
  auto r = RunCli("pipeline " + GraphArgs() + " --p 3 --q 2 --epochs 3 --seed 1 --out " +
                   (dir_ / "run").string(),
               dir_.path());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto j = nlohmann::json::parse(ReadFileBytes(dir_ / "run" / "metrics.json"));
  EXPECT_EQ(j["anomalies"], 12);
  EXPECT_EQ(j["config"]["seed"], 1);
  EXPECT_TRUE(fs::exists(dir_ / "run" / "checkpoint.txt"));
}

}  // namespace
}  // namespace anomatch
