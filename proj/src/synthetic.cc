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

#include "anomatch/synthetic.h"

#include <cmath>
#include <set>

#include "anomatch/errors.h"
#include "anomatch/random.h"

namespace anomatch {

ClusteredGraph GenerateClusteredGraph(const ClusteredGraphConfig& cfg) {
  const std::size_t n = cfg.num_nodes;
  if (n < 2 || cfg.clusters < 1 || cfg.feature_dim < 1) {
    throw ConfigError("synthetic graph needs n >= 2, clusters >= 1, d >= 1");
  }
  if (cfg.homophily < 0.0 || cfg.homophily > 1.0) {
    throw ConfigError("homophily must lie in [0, 1]");
  }
  const double max_edges = 0.5 * static_cast<double>(n) * (n - 1);
  const auto target_edges = static_cast<std::size_t>(
      std::llround(0.5 * cfg.mean_degree * static_cast<double>(n)));
  if (cfg.mean_degree < 0.0 || static_cast<double>(target_edges) > 0.5 * max_edges) {
    throw ConfigError("mean degree too large for an ER-style sample");
  }

  Rng rng = Rng::ForStream(cfg.seed, StreamId::kSynthetic);
  ClusteredGraph out;
  out.cluster.resize(n);
  std::vector<std::vector<std::size_t>> members(cfg.clusters);
  for (std::size_t i = 0; i < n; ++i) {
    out.cluster[i] = rng.UniformIndex(cfg.clusters);
    members[out.cluster[i]].push_back(i);
  }

  Matrix centers(cfg.clusters, cfg.feature_dim);
  for (double& v : centers.values()) v = cfg.center_scale * rng.Normal();
  Matrix features(n, cfg.feature_dim);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = centers.row(out.cluster[i]);
    auto x = features.row(i);
    for (std::size_t k = 0; k < cfg.feature_dim; ++k) {
      x[k] = c[k] + cfg.noise_scale * rng.Normal();
    }
  }

  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<Edge> edges;
  edges.reserve(target_edges);
  while (edges.size() < target_edges) {
    const std::size_t u = rng.UniformIndex(n);
    std::size_t v;
    const auto& group = members[out.cluster[u]];
    if (rng.UniformUnit() < cfg.homophily && group.size() > 1) {
      v = group[rng.UniformIndex(group.size())];
    } else {
      v = rng.UniformIndex(n);
    }
    if (u == v) continue;
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) continue;
    edges.emplace_back(static_cast<NodeId>(key.first),
                       static_cast<NodeId>(key.second));
  }
  out.graph = Graph::FromEdges(edges, std::move(features));
  return out;
}

}  // namespace anomatch
