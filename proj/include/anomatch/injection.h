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

#ifndef ANOMATCH_INJECTION_H_
#define ANOMATCH_INJECTION_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "anomatch/graph.h"
#include "anomatch/random.h"

namespace anomatch {

struct InjectionConfig {
  std::size_t p = 0;  // clique size
  std::size_t q = 0;  // clique count
  std::size_t candidate_size = 50;
  std::uint64_t seed = 0;

  // p >= 2, q >= 1, candidate_size >= 1 and 2pq <= n.
  void Validate(std::size_t num_nodes) const;
};

struct StructuralInjection {
  Graph graph;
  LabelVector labels;
  std::vector<std::vector<std::size_t>> cliques;
  std::size_t added_edges = 0;
};

// Picks p*q distinct nodes uniformly, splits them into q groups of p, and
// completes each group into a clique. Features are untouched.
StructuralInjection InjectStructural(const Graph& g, std::size_t p,
                                     std::size_t q, Rng& rng);

struct AttributeInjection {
  Graph graph;
  LabelVector labels;
  std::vector<std::size_t> targets;
  std::vector<std::size_t> sources;  // node whose features replaced each target
};

// Picks `count` targets among nodes with exclude[i] == 0. Each target's row
// is replaced by the row, among candidate_size distinct random other nodes,
// farthest from it in Euclidean distance. Distances always use the input
// features. Edges are untouched.
AttributeInjection InjectAttribute(const Graph& g, std::size_t count,
                                   std::size_t candidate_size, Rng& rng,
                                   const LabelVector& exclude);

struct InjectionResult {
  Graph graph;
  LabelVector labels;  // union of structural and attribute anomalies
  std::vector<std::vector<std::size_t>> cliques;
  std::vector<std::size_t> attribute_targets;
  std::vector<std::size_t> attribute_sources;
  std::size_t added_edges = 0;
};

// Structural then attribute injection (p*q of each, disjoint), both drawn
// from the injection stream of cfg.seed.
InjectionResult InjectAnomalies(const Graph& g, const InjectionConfig& cfg);

// JSON record of the seed, parameters, and chosen node ids.
std::string ProvenanceJson(const InjectionConfig& cfg,
                           const InjectionResult& result);

}  // namespace anomatch

#endif  // ANOMATCH_INJECTION_H_
