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

#ifndef ANOMATCH_PREPROCESS_H_
#define ANOMATCH_PREPROCESS_H_

#include <filesystem>
#include <functional>
#include <vector>

#include "anomatch/graph.h"
#include "anomatch/matrix.h"

namespace anomatch {

// Ego and neighbor features, computed once before training. These are the
// only inputs the training loop sees; the adjacency is not reachable from
// here.
struct PreprocessedFeatures {
  Matrix ego;       // the raw features, copied bit-for-bit
  Matrix neighbor;  // anonymized k-step propagation of the raw features
  int k = 0;

  std::size_t num_nodes() const { return ego.rows(); }
  std::size_t feature_dim() const { return ego.cols(); }
};

// Returns S * v with S = D^-1/2 (A + I) D^-1/2, D the degree matrix of A + I.
// S is applied through the CSR structure and never materialized. Rows are
// computed in parallel, each with a fixed accumulation order.
Matrix NormalizedAdjacencyApply(const Graph& g, const Matrix& v);

// Diagonal of S^k, via (S^k)_ii = (S^ceil(k/2) e_i) . (S^floor(k/2) e_i) on
// sparse columns. k >= 1.
std::vector<double> PropagationSelfWeights(const Graph& g, int k);

// neighbor = (S^k - diag(S^k)) X, i.e. the k-step propagation with the
// diagonal of the k-step operator masked out. Throws ConfigError for k < 1.
PreprocessedFeatures AnonymizedPropagate(const Graph& g, int k);

using Propagator = std::function<PreprocessedFeatures(const Graph&, int)>;

// Directory layout: ego.txt, neighbor.txt, and prep.json with k/n/d.
void SavePreprocessed(const PreprocessedFeatures& prep,
                      const std::filesystem::path& dir,
                      std::string_view header_comment = {});
PreprocessedFeatures LoadPreprocessed(const std::filesystem::path& dir);

}  // namespace anomatch

#endif  // ANOMATCH_PREPROCESS_H_
