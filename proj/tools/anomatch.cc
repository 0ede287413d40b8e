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

// anomatch: inject, preprocess, train, score, eval, pipeline, generate.
//
// Exit codes: 0 success, 2 user or configuration error, 1 internal error.
// Thread count comes from ANOMATCH_NUM_THREADS.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "anomatch/checkpoint.h"
#include "anomatch/errors.h"
#include "anomatch/graph.h"
#include "anomatch/injection.h"
#include "anomatch/metrics.h"
#include "anomatch/parallel.h"
#include "anomatch/preprocess.h"
#include "anomatch/synthetic.h"
#include "anomatch/text_io.h"
#include "anomatch/trainer.h"
#include "cli_config.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace anomatch::cli {
namespace {

struct Inputs {
  std::optional<fs::path> config;
  std::optional<fs::path> edges;
  std::optional<fs::path> features;
  std::optional<fs::path> labels;
  std::optional<fs::path> prep;
  std::optional<fs::path> checkpoint;
  fs::path out;
};

struct GenerateFlags {
  ClusteredGraphConfig graph;
};

std::string Header(const std::string& command, const std::string& config_json,
                   std::uint64_t seed) {
  return "anomatch " + command + "\nseed: " + std::to_string(seed) +
         "\nconfig: " + config_json;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

Graph LoadInputGraph(const Inputs& in, const RunConfig& cfg) {
  if (!in.edges || !in.features) {
    throw ConfigError("--edges and --features are both required");
  }
  GraphLoadOptions options;
  options.normalize_features = cfg.normalize_features;
  return LoadGraph(*in.edges, *in.features, options);
}

// Preprocessed features from --prep, or computed from the raw graph.
PreprocessedFeatures LoadOrPropagate(const Inputs& in, const RunConfig& cfg) {
  if (in.prep) return LoadPreprocessed(*in.prep);
  const Graph g = LoadInputGraph(in, cfg);
  if (cfg.training.k < 1) throw ConfigError("k must be >= 1");
  return AnonymizedPropagate(g, cfg.training.k);
}

// --- inject ---------------------------------------------------------------

LabelVector RunInject(const Graph& g, const RunConfig& cfg, const fs::path& out) {
  const InjectionConfig icfg = cfg.injection();
  icfg.Validate(g.num_nodes());
  const InjectionResult result = InjectAnomalies(g, icfg);
  MakeDir(out);
  const std::string header = Header("inject", FullJson(cfg), cfg.seed());
  SaveGraph(result.graph, out / "edges.txt", out / "features.txt", header);
  WriteLabels(out / "labels.txt", result.labels, header);
  auto provenance = nlohmann::json::parse(ProvenanceJson(icfg, result));
  provenance["config"] = nlohmann::json::parse(FullJson(cfg));
  WriteText(out / "provenance.json", provenance.dump(2) + "\n");
  std::cout << "injected " << 2 * icfg.p * icfg.q << " anomalies ("
            << result.added_edges << " new edges) into " << out.string() << "\n";
  return result.labels;
}

int CmdInject(const Inputs& in, const RunConfig& cfg) {
  RunInject(LoadInputGraph(in, cfg), cfg, in.out);
  return 0;
}

// --- preprocess -----------------------------------------------------------

int CmdPreprocess(const Inputs& in, const RunConfig& cfg) {
  const Graph g = LoadInputGraph(in, cfg);
  const PreprocessedFeatures prep = AnonymizedPropagate(g, cfg.training.k);
  MakeDir(in.out);
  SavePreprocessed(prep, in.out,
                   Header("preprocess", TrainingJson(cfg), cfg.seed()));
  std::cout << "wrote preprocessed features (n=" << prep.num_nodes()
            << ", d=" << prep.feature_dim() << ", k=" << prep.k << ") to "
            << in.out.string() << "\n";
  return 0;
}

// --- train ----------------------------------------------------------------

ModelParameters RunTrain(const Graph* g, const PreprocessedFeatures* prep,
                         const RunConfig& cfg, const fs::path& out) {
  MakeDir(out);
  const std::string config_json = TrainingJson(cfg);
  std::ofstream log(out / "train_log.txt", std::ios::binary);
  if (!log) throw IoError("cannot write " + (out / "train_log.txt").string());
  WriteCommentBlock(log, Header("train", config_json, cfg.seed()));
  log << "# epoch\tmean_loss\tseconds\n";
  auto on_epoch = [&](const EpochStats& s) {
    const std::string line = std::to_string(s.epoch) + "\t" +
                             FormatDouble(s.mean_loss) + "\t" +
                             std::to_string(s.seconds);
    log << line << '\n';
    std::cout << "epoch " << line << "\n";
  };
  TrainResult result = g ? Train(*g, cfg.training, on_epoch)
                         : TrainOnFeatures(*prep, cfg.training, on_epoch);
  SaveCheckpoint(out / "checkpoint.txt", Checkpoint{result.params, config_json});
  return std::move(result.params);
}

int CmdTrain(const Inputs& in, RunConfig cfg, bool k_given) {
  if (in.prep) {
    const PreprocessedFeatures prep = LoadPreprocessed(*in.prep);
    if (k_given && cfg.training.k != prep.k) {
      throw ConfigError("--k " + std::to_string(cfg.training.k) +
                        " disagrees with preprocessed k = " +
                        std::to_string(prep.k));
    }
    cfg.training.k = prep.k;
    RunTrain(nullptr, &prep, cfg, in.out);
  } else {
    const Graph g = LoadInputGraph(in, cfg);
    RunTrain(&g, nullptr, cfg, in.out);
  }
  std::cout << "wrote " << (in.out / "checkpoint.txt").string() << "\n";
  return 0;
}

// --- score / eval ---------------------------------------------------------

// Scores with the checkpoint's recorded k and normalization when the
// features must be computed from the raw graph.
std::vector<double> ScoreFromCheckpoint(const Inputs& in, Checkpoint& ckpt,
                                        RunConfig& recorded) {
  if (!in.checkpoint) throw ConfigError("--checkpoint is required");
  ckpt = LoadCheckpoint(*in.checkpoint);
  recorded = FromRecordedJson(ckpt.config_json);
  const PreprocessedFeatures prep = LoadOrPropagate(in, recorded);
  if (prep.feature_dim() != ckpt.params.input_dim()) {
    throw ShapeError("checkpoint expects " +
                     std::to_string(ckpt.params.input_dim()) +
                     " features but the input has " +
                     std::to_string(prep.feature_dim()));
  }
  return Score(ckpt.params, prep);
}

void WriteEval(const std::vector<double>& scores,
               const std::optional<LabelVector>& labels,
               const std::string& config_json, std::uint64_t seed,
               const fs::path& out) {
  MakeDir(out);
  WriteColumn(out / "scores.txt", scores, Header("score", config_json, seed));
  if (!labels) {
    std::cout << "wrote " << (out / "scores.txt").string()
              << " (no labels, no metrics)\n";
    return;
  }
  const ScoreReport report = MakeReport(scores, labels);
  WriteText(out / "metrics.json", MetricsJson(report, config_json) + "\n");
  std::cout << "auc " << FormatDouble(*report.auc) << "\n";
}

int CmdScore(const Inputs& in) {
  Checkpoint ckpt;
  RunConfig recorded;
  const auto scores = ScoreFromCheckpoint(in, ckpt, recorded);
  if (!in.out.parent_path().empty()) MakeDir(in.out.parent_path());
  WriteColumn(in.out, scores,
              Header("score", ckpt.config_json, recorded.seed()));
  std::cout << "wrote " << scores.size() << " scores to " << in.out.string()
            << "\n";
  return 0;
}

int CmdEval(const Inputs& in) {
  Checkpoint ckpt;
  RunConfig recorded;
  const auto scores = ScoreFromCheckpoint(in, ckpt, recorded);
  std::optional<LabelVector> labels;
  if (in.labels) labels = ReadLabels(*in.labels);
  WriteEval(scores, labels, ckpt.config_json, recorded.seed(), in.out);
  return 0;
}

// --- pipeline -------------------------------------------------------------

int CmdPipeline(const Inputs& in, const RunConfig& cfg) {
  Graph g = LoadInputGraph(in, cfg);
  std::optional<LabelVector> labels;
  if (in.labels) labels = ReadLabels(*in.labels);
  if (cfg.p || cfg.q) {
    if (labels) throw ConfigError("--labels cannot be combined with --p/--q");
    labels = RunInject(g, cfg, in.out / "injected");
    // Continue from the written files.
    g = LoadGraph(in.out / "injected" / "edges.txt",
                  in.out / "injected" / "features.txt");
  }
  cfg.training.Validate(g.num_nodes());
  const PreprocessedFeatures prep = AnonymizedPropagate(g, cfg.training.k);
  const std::string config_json = TrainingJson(cfg);
  SavePreprocessed(prep, in.out / "prep",
                   Header("preprocess", config_json, cfg.seed()));
  const ModelParameters params = RunTrain(nullptr, &prep, cfg, in.out);
  WriteEval(Score(params, prep), labels, config_json, cfg.seed(), in.out);
  return 0;
}

// --- generate -------------------------------------------------------------

int CmdGenerate(const GenerateFlags& flags, const fs::path& out) {
  const ClusteredGraph cg = GenerateClusteredGraph(flags.graph);
  nlohmann::json j;
  j["num_nodes"] = flags.graph.num_nodes;
  j["mean_degree"] = flags.graph.mean_degree;
  j["feature_dim"] = flags.graph.feature_dim;
  j["clusters"] = flags.graph.clusters;
  j["homophily"] = flags.graph.homophily;
  j["center_scale"] = flags.graph.center_scale;
  j["noise_scale"] = flags.graph.noise_scale;
  j["seed"] = flags.graph.seed;
  MakeDir(out);
  const std::string header = Header("generate", j.dump(), flags.graph.seed);
  SaveGraph(cg.graph, out / "edges.txt", out / "features.txt", header);
  std::vector<double> clusters(cg.cluster.begin(), cg.cluster.end());
  WriteColumn(out / "clusters.txt", clusters, header);
  std::cout << "generated n=" << cg.graph.num_nodes()
            << " m=" << cg.graph.num_edges() << " into " << out.string() << "\n";
  return 0;
}

// --- wiring ---------------------------------------------------------------

void AddTrainingFlags(CLI::App* app, Overrides& o) {
  app->add_option("--k", o.k, "propagation depth (default 2)");
  app->add_option("--dh", o.hidden_dim, "embedding dimension (default 128)");
  app->add_option("--lr", o.lr, "Adam learning rate (default 3e-4)");
  app->add_option("--epochs", o.epochs, "training epochs (default 100)");
  app->add_option("--alpha", o.alpha, "neighbor-negative weight (default 0.9)");
  app->add_option("--gamma", o.gamma, "ego-negative weight (default 0.1)");
  app->add_option("--batch-size", o.batch_size, "'full' or a batch size");
  app->add_option("--eps-clamp", o.eps_clamp, "similarity clamp (default 1e-7)");
  app->add_flag("--fast", o.fast, "parallel reductions, not bit-reproducible");
}

void AddInjectionFlags(CLI::App* app, Overrides& o) {
  app->add_option("--p", o.p, "clique size");
  app->add_option("--q", o.q, "clique count");
  app->add_option("--candidate-size", o.candidate_size,
                  "attribute-swap candidates (default 50)");
}

void AddCommon(CLI::App* app, Inputs& in, Overrides& o) {
  app->add_option("--config", in.config, "JSON config file")
      ->check(CLI::ExistingFile);
  app->add_option("--seed", o.seed, "random seed (default 0)");
}

void AddGraphInputs(CLI::App* app, Inputs& in, Overrides& o) {
  app->add_option("--edges", in.edges, "edge list")->check(CLI::ExistingFile);
  app->add_option("--features", in.features, "feature matrix")
      ->check(CLI::ExistingFile);
  app->add_flag("--normalize-features", o.normalize_features,
                "L1-normalize feature rows");
}

int Main(int argc, char** argv) {
  ConfigureThreadsFromEnv();
  CLI::App app{"Ego-neighbor matching graph anomaly detector"};
  app.require_subcommand(1);

  Inputs in;
  Overrides o;
  GenerateFlags gen;

  auto* inject = app.add_subcommand("inject", "plant clique and attribute anomalies");
  AddCommon(inject, in, o);
  AddGraphInputs(inject, in, o);
  AddInjectionFlags(inject, o);
  inject->add_option("--out", in.out, "output directory")->required();

  auto* preprocess = app.add_subcommand("preprocess", "compute propagated features");
  AddCommon(preprocess, in, o);
  AddGraphInputs(preprocess, in, o);
  preprocess->add_option("--k", o.k, "propagation depth (default 2)");
  preprocess->add_option("--out", in.out, "output directory")->required();

  auto* train = app.add_subcommand("train", "preprocess once, then train");
  AddCommon(train, in, o);
  AddGraphInputs(train, in, o);
  AddTrainingFlags(train, o);
  train->add_option("--prep", in.prep, "precomputed feature directory")
      ->check(CLI::ExistingDirectory);
  train->add_option("--out", in.out, "output directory")->required();

  auto* score = app.add_subcommand("score", "write anomaly scores");
  auto* eval = app.add_subcommand("eval", "write scores and, with labels, AUC");
  for (auto* sub : {score, eval}) {
    AddGraphInputs(sub, in, o);
    sub->add_option("--checkpoint", in.checkpoint, "checkpoint file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--prep", in.prep, "precomputed feature directory")
        ->check(CLI::ExistingDirectory);
  }
  score->add_option("--out", in.out, "scores file")->required();
  eval->add_option("--labels", in.labels, "0/1 labels")->check(CLI::ExistingFile);
  eval->add_option("--out", in.out, "output directory")->required();

  auto* pipeline = app.add_subcommand(
      "pipeline", "optional inject, then preprocess, train, score, eval");
  AddCommon(pipeline, in, o);
  AddGraphInputs(pipeline, in, o);
  AddTrainingFlags(pipeline, o);
  AddInjectionFlags(pipeline, o);
  pipeline->add_option("--labels", in.labels, "0/1 labels")
      ->check(CLI::ExistingFile);
  pipeline->add_option("--out", in.out, "output directory")->required();

  auto* generate = app.add_subcommand("generate", "synthetic clustered graph");
  auto& gc = gen.graph;
  generate->add_option("--nodes", gc.num_nodes, "node count")->capture_default_str();
  generate->add_option("--mean-degree", gc.mean_degree, "mean degree")
      ->capture_default_str();
  generate->add_option("--dim", gc.feature_dim, "feature dimension")
      ->capture_default_str();
  generate->add_option("--clusters", gc.clusters, "cluster count")
      ->capture_default_str();
  generate->add_option("--homophily", gc.homophily, "intra-cluster edge share")
      ->capture_default_str();
  generate->add_option("--noise", gc.noise_scale, "feature noise std-dev")
      ->capture_default_str();
  generate->add_option("--seed", gc.seed, "random seed")->capture_default_str();
  generate->add_option("--out", in.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) return CmdGenerate(gen, in.out);
    if (score->parsed()) return CmdScore(in);
    if (eval->parsed()) return CmdEval(in);
    const RunConfig cfg = Resolve(in.config, o);
    if (inject->parsed()) return CmdInject(in, cfg);
    if (preprocess->parsed()) return CmdPreprocess(in, cfg);
    if (train->parsed()) return CmdTrain(in, cfg, o.k.has_value());
    if (pipeline->parsed()) return CmdPipeline(in, cfg);
    return 1;
  } catch (const UserError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace
}  // namespace anomatch::cli

int main(int argc, char** argv) { return anomatch::cli::Main(argc, argv); }
