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

#ifndef ANOMATCH_REFERENCE_H_
#define ANOMATCH_REFERENCE_H_

#include <span>
#include <vector>

#include "anomatch/contrastive.h"
#include "anomatch/graph.h"
#include "anomatch/model.h"
#include "anomatch/preprocess.h"

// Straightforward serial versions of the parallel kernels. They share no
// loop structure with the kernels and exist to cross-check them in tests
// and benchmarks.
namespace anomatch::reference {

Matrix NormalizedAdjacencyApply(const Graph& g, const Matrix& v);

// Same contract as anomatch::AnonymizedPropagate.
PreprocessedFeatures AnonymizedPropagate(const Graph& g, int k);

// Builds the 3|B| pairs and evaluates them one at a time through model
// Backward.
double ContrastiveLossAndGradient(const ModelParameters& params,
                                  const PreprocessedFeatures& prep,
                                  std::span<const std::size_t> batch,
                                  const NegativeAssignment& neg,
                                  const LossWeights& w, ModelParameters& grad);

std::vector<double> Score(const ModelParameters& params,
                          const PreprocessedFeatures& prep);

}  // namespace anomatch::reference

#endif  // ANOMATCH_REFERENCE_H_
