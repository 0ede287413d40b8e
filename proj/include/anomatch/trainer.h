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

#ifndef ANOMATCH_TRAINER_H_
#define ANOMATCH_TRAINER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "anomatch/contrastive.h"
#include "anomatch/graph.h"
#include "anomatch/model.h"
#include "anomatch/parallel.h"
#include "anomatch/preprocess.h"

namespace anomatch {

// batch_size == kFullBatch trains on all nodes at once.
inline constexpr std::size_t kFullBatch = 0;

struct TrainingConfig {
  int k = 2;
  std::size_t hidden_dim = 128;
  double lr = 3e-4;
  int epochs = 100;
  double alpha = 0.9;
  double gamma = 0.1;
  std::size_t batch_size = kFullBatch;
  std::uint64_t seed = 0;
  double eps_clamp = 1e-7;
  ExecutionMode mode = ExecutionMode::kDeterministic;

  LossWeights loss_weights() const { return {alpha, gamma, eps_clamp}; }

  // Throws ConfigError naming the first violated bound. `num_nodes` is used
  // for the batch-size bound and the two-node minimum.
  void Validate(std::size_t num_nodes) const;
};

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adam with bias correction, one moment pair per parameter.
class AdamOptimizer {
 public:
  AdamOptimizer(std::size_t input_dim, std::size_t hidden_dim,
                AdamOptions options = {});

  void Step(ModelParameters& params, const ModelParameters& grad, double lr);
  long steps() const { return steps_; }

 private:
  AdamOptions options_;
  ModelParameters first_;
  ModelParameters second_;
  long steps_ = 0;
};

// The four parameter tensors as flat spans, in the order w1, b1, w2, b2.
std::array<std::span<double>, 4> Tensors(ModelParameters& p);
std::array<std::span<const double>, 4> Tensors(const ModelParameters& p);

struct EpochStats {
  int epoch = 0;           // 1-based
  double mean_loss = 0.0;  // summed batch losses / n
  double seconds = 0.0;
};

using EpochCallback = std::function<void(const EpochStats&)>;

struct TrainResult {
  ModelParameters params;
  std::vector<EpochStats> history;
};

// Parameters before the first update, drawn from the init stream.
ModelParameters InitialParameters(std::size_t input_dim,
                                  const TrainingConfig& cfg);

// Consecutive chunks of `order`. A trailing chunk of a single node cannot
// form a negative pair and is folded into the previous chunk.
std::vector<std::span<const std::size_t>> MakeBatches(
    std::span<const std::size_t> order, std::size_t batch_size);

// Training loop proper. Reads only the preprocessed features.
TrainResult TrainOnFeatures(const PreprocessedFeatures& prep,
                            const TrainingConfig& cfg,
                            const EpochCallback& on_epoch = {});

// Validates `cfg`, calls `propagate` once, then TrainOnFeatures.
TrainResult Train(const Graph& g, const TrainingConfig& cfg,
                  const EpochCallback& on_epoch = {},
                  const Propagator& propagate = AnonymizedPropagate);

}  // namespace anomatch

#endif  // ANOMATCH_TRAINER_H_
