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

#ifndef ANOMATCH_CONTRASTIVE_H_
#define ANOMATCH_CONTRASTIVE_H_

#include <cstddef>
#include <span>
#include <vector>

#include "anomatch/model.h"
#include "anomatch/parallel.h"
#include "anomatch/preprocess.h"
#include "anomatch/random.h"

namespace anomatch {

// Negative partners for the anchors of one batch. Partners are batch-local
// and obtained by a nonzero cyclic shift of the batch order: the anchor at
// position r is paired with position (r + shift) mod |B|.
struct NegativeAssignment {
  std::size_t neighbor_shift = 0;
  std::size_t ego_shift = 0;
  // Node ids, aligned with the batch positions.
  std::vector<std::size_t> neighbor_partner;
  std::vector<std::size_t> ego_partner;
};

// Draws the neighbor-negative shift from `neighbor_rng` and the ego-negative
// shift from `ego_rng`, each uniform over 1..|B|-1. Throws ConfigError when
// the batch has fewer than two nodes.
NegativeAssignment SampleNegatives(std::span<const std::size_t> batch,
                                   Rng& neighbor_rng, Rng& ego_rng);

struct LossWeights {
  double alpha = 0.9;  // neighbor-negative weight
  double gamma = 0.1;  // ego-negative weight
  double eps_clamp = 1e-7;
};

// Loss of one anchor given its three remapped similarities.
double AnchorLoss(double pos_hat, double neighbor_neg_hat, double ego_neg_hat,
                  const LossWeights& w);

// Sum over batch anchors of
//   -[log c^pos + alpha log(1 - c^nbr) + gamma log(1 - c^ego)].
double ContrastiveLoss(const ModelParameters& params,
                       const PreprocessedFeatures& prep,
                       std::span<const std::size_t> batch,
                       const NegativeAssignment& neg, const LossWeights& w,
                       ExecutionMode mode = ExecutionMode::kDeterministic);

// Same loss, plus its gradient written to `grad` (resized as needed).
// Batched kernel: embeds every batch row once, evaluates all 3|B| pairs,
// then reduces the embedding gradients into the weight gradients.
double ContrastiveLossAndGradient(
    const ModelParameters& params, const PreprocessedFeatures& prep,
    std::span<const std::size_t> batch, const NegativeAssignment& neg,
    const LossWeights& w, ModelParameters& grad,
    ExecutionMode mode = ExecutionMode::kDeterministic);

// The 3|B| pairs of a batch in the form consumed by model Backward.
std::vector<PairSample> BatchPairs(const PreprocessedFeatures& prep,
                                   std::span<const std::size_t> batch,
                                   const NegativeAssignment& neg,
                                   const LossWeights& w);

}  // namespace anomatch

#endif  // ANOMATCH_CONTRASTIVE_H_
