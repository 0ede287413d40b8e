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

#ifndef ANOMATCH_SYNTHETIC_H_
#define ANOMATCH_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "anomatch/graph.h"

namespace anomatch {

// Random attributed graph with community structure: every node belongs to
// one of `clusters` groups and its features are the group center plus
// isotropic Gaussian noise. Edges are sampled uniformly at random (ER-style)
// with probability `homophily` of being redrawn inside the source node's
// group, until the target mean degree is reached.
struct ClusteredGraphConfig {
  std::size_t num_nodes = 1000;
  double mean_degree = 8.0;
  std::size_t feature_dim = 64;
  std::size_t clusters = 8;
  double homophily = 0.9;
  double center_scale = 1.0;  // std-dev of each center coordinate
  double noise_scale = 1.0;   // std-dev of per-node noise
  std::uint64_t seed = 0;
};

struct ClusteredGraph {
  Graph graph;
  std::vector<std::size_t> cluster;
};

ClusteredGraph GenerateClusteredGraph(const ClusteredGraphConfig& cfg);

}  // namespace anomatch

#endif  // ANOMATCH_SYNTHETIC_H_
