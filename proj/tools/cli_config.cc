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

#include "cli_config.h"

#include <fstream>
#include <set>

#include "anomatch/errors.h"
#include "anomatch/text_io.h"
#include "json.hpp"

namespace anomatch::cli {
namespace {

using nlohmann::json;

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "k",    "hidden_dim", "lr",   "epochs",         "alpha",
      "gamma", "batch_size", "seed", "eps_clamp",     "fast",
      "normalize_features", "p", "q", "candidate_size"};
  return keys;
}

template <typename T>
T Get(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::size_t GetCount(const json& j, const std::string& key) {
  if (!j.at(key).is_number_unsigned()) {
    throw ConfigError("config key '" + key + "' must be a non-negative integer");
  }
  return j.at(key).get<std::size_t>();
}

void ApplyJson(const std::string& text, const std::string& source,
               RunConfig& cfg) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(source + ": expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!KnownKeys().count(key)) {
      throw ConfigError(source + ": unknown config key '" + key + "'");
    }
  }
  TrainingConfig& t = cfg.training;
  if (j.contains("k")) t.k = Get<int>(j, "k");
  if (j.contains("hidden_dim")) t.hidden_dim = GetCount(j, "hidden_dim");
  if (j.contains("lr")) t.lr = Get<double>(j, "lr");
  if (j.contains("epochs")) t.epochs = Get<int>(j, "epochs");
  if (j.contains("alpha")) t.alpha = Get<double>(j, "alpha");
  if (j.contains("gamma")) t.gamma = Get<double>(j, "gamma");
  if (j.contains("batch_size")) {
    const json& b = j["batch_size"];
    if (b.is_string()) {
      t.batch_size = ParseBatchSize(b.get<std::string>());
    } else if (b.is_number_unsigned()) {
      t.batch_size = ParseBatchSize(std::to_string(b.get<std::size_t>()));
    } else {
      throw ConfigError("config key 'batch_size' must be \"full\" or a count");
    }
  }
  if (j.contains("seed")) t.seed = Get<std::uint64_t>(j, "seed");
  if (j.contains("eps_clamp")) t.eps_clamp = Get<double>(j, "eps_clamp");
  if (j.contains("fast") && Get<bool>(j, "fast")) t.mode = ExecutionMode::kFast;
  if (j.contains("normalize_features")) {
    cfg.normalize_features = Get<bool>(j, "normalize_features");
  }
  if (j.contains("p") && !j["p"].is_null()) cfg.p = GetCount(j, "p");
  if (j.contains("q") && !j["q"].is_null()) cfg.q = GetCount(j, "q");
  if (j.contains("candidate_size")) cfg.candidate_size = GetCount(j, "candidate_size");
}

json TrainingObject(const TrainingConfig& t) {
  json j;
  j["k"] = t.k;
  j["hidden_dim"] = t.hidden_dim;
  j["lr"] = t.lr;
  j["epochs"] = t.epochs;
  j["alpha"] = t.alpha;
  j["gamma"] = t.gamma;
  j["batch_size"] = BatchSizeText(t.batch_size);
  j["seed"] = t.seed;
  j["eps_clamp"] = t.eps_clamp;
  j["fast"] = t.mode == ExecutionMode::kFast;
  return j;
}

}  // namespace

InjectionConfig RunConfig::injection() const {
  if (!p || !q) throw ConfigError("injection needs both --p and --q");
  return InjectionConfig{*p, *q, candidate_size, training.seed};
}

std::size_t ParseBatchSize(const std::string& text) {
  if (text == "full") return kFullBatch;
  long long v;
  try {
    v = ParseInteger(text);
  } catch (const UserError&) {
    throw ConfigError("batch size must be 'full' or a count, got '" + text + "'");
  }
  if (v < 2) throw ConfigError("batch_size must be >= 2 (got " + text + ")");
  return static_cast<std::size_t>(v);
}

std::string BatchSizeText(std::size_t batch_size) {
  return batch_size == kFullBatch ? "full" : std::to_string(batch_size);
}

RunConfig Resolve(const std::optional<std::filesystem::path>& path,
                  const Overrides& flags) {
  RunConfig cfg;
  if (path) ApplyJson(ReadFileBytes(*path), path->string(), cfg);
  TrainingConfig& t = cfg.training;
  if (flags.k) t.k = *flags.k;
  if (flags.hidden_dim) t.hidden_dim = *flags.hidden_dim;
  if (flags.lr) t.lr = *flags.lr;
  if (flags.epochs) t.epochs = *flags.epochs;
  if (flags.alpha) t.alpha = *flags.alpha;
  if (flags.gamma) t.gamma = *flags.gamma;
  if (flags.batch_size) t.batch_size = ParseBatchSize(*flags.batch_size);
  if (flags.seed) t.seed = *flags.seed;
  if (flags.eps_clamp) t.eps_clamp = *flags.eps_clamp;
  if (flags.fast) t.mode = ExecutionMode::kFast;
  if (flags.normalize_features) cfg.normalize_features = true;
  if (flags.p) cfg.p = *flags.p;
  if (flags.q) cfg.q = *flags.q;
  if (flags.candidate_size) cfg.candidate_size = *flags.candidate_size;
  return cfg;
}

std::string TrainingJson(const RunConfig& cfg) {
  json j = TrainingObject(cfg.training);
  j["normalize_features"] = cfg.normalize_features;
  return j.dump();
}

std::string FullJson(const RunConfig& cfg) {
  json j = TrainingObject(cfg.training);
  j["normalize_features"] = cfg.normalize_features;
  j["p"] = cfg.p ? json(*cfg.p) : json(nullptr);
  j["q"] = cfg.q ? json(*cfg.q) : json(nullptr);
  j["candidate_size"] = cfg.candidate_size;
  return j.dump();
}

RunConfig FromRecordedJson(const std::string& json_text) {
  RunConfig cfg;
  ApplyJson(json_text, "checkpoint config", cfg);
  return cfg;
}

}  // namespace anomatch::cli
