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

#include "anomatch/reference.h"

#include <cmath>
#include <map>

#include "anomatch/errors.h"

namespace anomatch::reference {
namespace {

using SparseVector = std::map<std::size_t, double>;

double NormalizedEntry(const Graph& g, std::size_t i, std::size_t j) {
  return 1.0 / std::sqrt(static_cast<double>((g.degree(i) + 1) *
                                             (g.degree(j) + 1)));
}

SparseVector Apply(const Graph& g, const SparseVector& v) {
  SparseVector out;
  for (const auto& [l, value] : v) {
    out[l] += NormalizedEntry(g, l, l) * value;
    for (NodeId j : g.neighbors(l)) out[j] += NormalizedEntry(g, j, l) * value;
  }
  return out;
}

}  // namespace

Matrix NormalizedAdjacencyApply(const Graph& g, const Matrix& v) {
  if (v.rows() != g.num_nodes()) throw ShapeError("row count mismatch");
  Matrix out(v.rows(), v.cols());
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    for (std::size_t c = 0; c < v.cols(); ++c) {
      double acc = NormalizedEntry(g, i, i) * v(i, c);
      for (NodeId j : g.neighbors(i)) acc += NormalizedEntry(g, i, j) * v(j, c);
      out(i, c) = acc;
    }
  }
  return out;
}

PreprocessedFeatures AnonymizedPropagate(const Graph& g, int k) {
  if (k < 1) throw ConfigError("propagation steps k must be >= 1");
  PreprocessedFeatures prep;
  prep.k = k;
  prep.ego = g.features();
  Matrix x = g.features();
  for (int s = 0; s < k; ++s) x = reference::NormalizedAdjacencyApply(g, x);
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    SparseVector hi{{i, 1.0}};
    SparseVector lo{{i, 1.0}};
    for (int s = 0; s < (k + 1) / 2; ++s) hi = Apply(g, hi);
    for (int s = 0; s < k / 2; ++s) lo = Apply(g, lo);
    double self = 0.0;
    for (const auto& [j, value] : lo) {
      auto it = hi.find(j);
      if (it != hi.end()) self += it->second * value;
    }
    for (std::size_t c = 0; c < x.cols(); ++c) x(i, c) -= self * prep.ego(i, c);
  }
  prep.neighbor = std::move(x);
  return prep;
}

double ContrastiveLossAndGradient(const ModelParameters& params,
                                  const PreprocessedFeatures& prep,
                                  std::span<const std::size_t> batch,
                                  const NegativeAssignment& neg,
                                  const LossWeights& w, ModelParameters& grad) {
  const auto pairs = BatchPairs(prep, batch, neg, w);
  grad = Backward(params, pairs, w.eps_clamp);
  return SampleLoss(params, pairs, w.eps_clamp);
}

std::vector<double> Score(const ModelParameters& params,
                          const PreprocessedFeatures& prep) {
  std::vector<double> s(prep.num_nodes());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto e = Embed(params, prep.ego.row(i), prep.neighbor.row(i));
    s[i] = -Cosine(e.ego, e.neighbor);
  }
  return s;
}

}  // namespace anomatch::reference
