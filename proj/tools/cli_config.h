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

#ifndef ANOMATCH_TOOLS_CLI_CONFIG_H_
#define ANOMATCH_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "anomatch/injection.h"
#include "anomatch/synthetic.h"
#include "anomatch/trainer.h"

namespace anomatch::cli {

// Values given on the command line. Unset members fall back to the config
// file, then to the built-in defaults.
struct Overrides {
  std::optional<int> k;
  std::optional<std::size_t> hidden_dim;
  std::optional<double> lr;
  std::optional<int> epochs;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<std::string> batch_size;  // "full" or a count
  std::optional<std::uint64_t> seed;
  std::optional<double> eps_clamp;
  bool fast = false;
  bool normalize_features = false;
  std::optional<std::size_t> p;
  std::optional<std::size_t> q;
  std::optional<std::size_t> candidate_size;
};

struct RunConfig {
  TrainingConfig training;
  // p and q have no defaults; inject requires both.
  std::optional<std::size_t> p;
  std::optional<std::size_t> q;
  std::size_t candidate_size = 50;
  bool normalize_features = false;

  std::uint64_t seed() const { return training.seed; }
  // Throws ConfigError when p or q is missing.
  InjectionConfig injection() const;
};

// Merges defaults, the JSON file at `path` (if any), and `flags`, in that
// order of increasing precedence. Unknown keys and ill-typed values are
// ConfigErrors.
RunConfig Resolve(const std::optional<std::filesystem::path>& path,
                  const Overrides& flags);

// Compact one-line JSON with sorted keys. Training keys only, or everything.
std::string TrainingJson(const RunConfig& cfg);
std::string FullJson(const RunConfig& cfg);

// Rebuilds a config from JSON written by TrainingJson or FullJson.
RunConfig FromRecordedJson(const std::string& json_text);

std::size_t ParseBatchSize(const std::string& text);
std::string BatchSizeText(std::size_t batch_size);

}  // namespace anomatch::cli

#endif  // ANOMATCH_TOOLS_CLI_CONFIG_H_
