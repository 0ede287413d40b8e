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

#include "anomatch/preprocess.h"

#include <cmath>
#include <fstream>
#include <string>

#include "anomatch/errors.h"
#include "anomatch/parallel.h"
#include "anomatch/text_io.h"
#include "json.hpp"

namespace anomatch {
namespace {

std::vector<double> InverseSqrtDegrees(const Graph& g) {
  std::vector<double> out(g.num_nodes());
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    out[i] = 1.0 / std::sqrt(static_cast<double>(g.degree(i) + 1));
  }
  return out;
}

// Dense scratch vector with a list of touched positions, so clearing costs
// O(support) instead of O(n).
struct SparseAccumulator {
  std::vector<double> value;
  std::vector<char> present;
  std::vector<NodeId> support;

  explicit SparseAccumulator(std::size_t n) : value(n, 0.0), present(n, 0) {}

  void Add(NodeId j, double v) {
    if (!present[j]) {
      present[j] = 1;
      support.push_back(j);
    }
    value[j] += v;
  }

  void Clear() {
    for (NodeId j : support) {
      value[j] = 0.0;
      present[j] = 0;
    }
    support.clear();
  }
};

// out = S * in on sparse vectors. `out` must be clear.
void ApplySparse(const Graph& g, const std::vector<double>& inv_sqrt,
                 const SparseAccumulator& in, SparseAccumulator& out) {
  for (NodeId l : in.support) {
    const double scaled = in.value[l] * inv_sqrt[l];
    out.Add(l, inv_sqrt[l] * scaled);
    for (NodeId j : g.neighbors(l)) out.Add(j, inv_sqrt[j] * scaled);
  }
}

}  // namespace

Matrix NormalizedAdjacencyApply(const Graph& g, const Matrix& v) {
  const std::size_t n = g.num_nodes();
  if (v.rows() != n) {
    throw ShapeError("NormalizedAdjacencyApply: operand has " +
                     std::to_string(v.rows()) + " rows, graph has " +
                     std::to_string(n) + " nodes");
  }
  const std::size_t d = v.cols();
  const auto inv_sqrt = InverseSqrtDegrees(g);
  Matrix out(n, d);

#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t i = 0; i < n; ++i) {
    auto dst = out.row(i);
    // Self-loop first, then neighbors in CSR order.
    auto self = v.row(i);
    const double ws = inv_sqrt[i];
    for (std::size_t c = 0; c < d; ++c) dst[c] = ws * self[c];
    for (NodeId j : g.neighbors(i)) {
      auto src = v.row(j);
      const double w = inv_sqrt[j];
      for (std::size_t c = 0; c < d; ++c) dst[c] += w * src[c];
    }
    for (std::size_t c = 0; c < d; ++c) dst[c] *= ws;
  }
  return out;
}

std::vector<double> PropagationSelfWeights(const Graph& g, int k) {
  if (k < 1) throw ConfigError("propagation steps k must be >= 1");
  const std::size_t n = g.num_nodes();
  const auto inv_sqrt = InverseSqrtDegrees(g);
  const int hi = (k + 1) / 2;
  const int lo = k / 2;
  std::vector<double> weights(n, 0.0);

#pragma omp parallel
  {
    SparseAccumulator cur(n);
    SparseAccumulator next(n);
#pragma omp for schedule(dynamic, 64)
    for (std::size_t i = 0; i < n; ++i) {
      const NodeId id = static_cast<NodeId>(i);
      cur.Add(id, 1.0);
      for (int step = 1; step <= hi; ++step) {
        ApplySparse(g, inv_sqrt, cur, next);
        if (step < hi) {
          cur.Clear();
          std::swap(cur, next);
        }
      }
      // next = S^hi e_i and cur = S^(hi-1) e_i.
      double dot = 0.0;
      if (lo == hi) {
        for (NodeId j : next.support) dot += next.value[j] * next.value[j];
      } else {
        for (NodeId j : cur.support) dot += cur.value[j] * next.value[j];
      }
      weights[i] = dot;
      cur.Clear();
      next.Clear();
    }
  }
  return weights;
}

PreprocessedFeatures AnonymizedPropagate(const Graph& g, int k) {
  if (k < 1) throw ConfigError("propagation steps k must be >= 1, got " +
                               std::to_string(k));
  PreprocessedFeatures prep;
  prep.k = k;
  prep.ego = g.features();
  Matrix propagated = g.features();
  for (int step = 0; step < k; ++step) {
    propagated = NormalizedAdjacencyApply(g, propagated);
  }
  const auto self_weights = PropagationSelfWeights(g, k);
  const std::size_t n = g.num_nodes();
  const std::size_t d = g.feature_dim();
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    auto dst = propagated.row(i);
    auto x = prep.ego.row(i);
    const double w = self_weights[i];
    for (std::size_t c = 0; c < d; ++c) dst[c] -= w * x[c];
  }
  prep.neighbor = std::move(propagated);
  return prep;
}

void SavePreprocessed(const PreprocessedFeatures& prep,
                      const std::filesystem::path& dir,
                      std::string_view header_comment) {
  std::filesystem::create_directories(dir);
  WriteMatrix(dir / "ego.txt", prep.ego, header_comment);
  WriteMatrix(dir / "neighbor.txt", prep.neighbor, header_comment);
  nlohmann::ordered_json meta;
  meta["k"] = prep.k;
  meta["n"] = prep.num_nodes();
  meta["d"] = prep.feature_dim();
  std::ofstream out(dir / "prep.json");
  if (!out) throw IoError("cannot write " + (dir / "prep.json").string());
  out << meta.dump(2) << '\n';
}

PreprocessedFeatures LoadPreprocessed(const std::filesystem::path& dir) {
  PreprocessedFeatures prep;
  prep.ego = ReadMatrix(dir / "ego.txt");
  prep.neighbor = ReadMatrix(dir / "neighbor.txt");
  if (prep.ego.rows() != prep.neighbor.rows() ||
      prep.ego.cols() != prep.neighbor.cols()) {
    throw ShapeError("ego and neighbor feature matrices differ in shape");
  }
  const auto meta_path = dir / "prep.json";
  if (std::filesystem::exists(meta_path)) {
    try {
      auto meta = nlohmann::json::parse(ReadFileBytes(meta_path));
      prep.k = meta.value("k", 0);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(meta_path.string() + ": " + e.what());
    }
  }
  return prep;
}

}  // namespace anomatch
