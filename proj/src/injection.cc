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

#include "anomatch/injection.h"

#include <algorithm>
#include <limits>

#include "anomatch/errors.h"
#include "json.hpp"

namespace anomatch {

void InjectionConfig::Validate(std::size_t num_nodes) const {
  if (p < 2) throw ConfigError("clique size p must be >= 2");
  if (q < 1) throw ConfigError("clique count q must be >= 1");
  if (candidate_size < 1) throw ConfigError("candidate_size must be >= 1");
  // Compare without overflowing for absurd p, q.
  if (p > num_nodes || q > num_nodes || 2 * p * q > num_nodes) {
    throw ConfigError("2pq <= n violated: p=" + std::to_string(p) +
                      ", q=" + std::to_string(q) +
                      ", n=" + std::to_string(num_nodes));
  }
}

StructuralInjection InjectStructural(const Graph& g, std::size_t p,
                                     std::size_t q, Rng& rng) {
  const std::size_t n = g.num_nodes();
  if (p < 2 || q < 1) throw ConfigError("need p >= 2 and q >= 1");
  if (p > n || q > n || p * q > n) {
    throw ConfigError("p*q = " + std::to_string(p * q) +
                      " structural anomalies requested but n = " +
                      std::to_string(n));
  }
  auto chosen = rng.SampleWithoutReplacement(n, p * q);
  StructuralInjection out;
  out.labels.assign(n, 0);
  std::vector<Edge> extra;
  for (std::size_t c = 0; c < q; ++c) {
    std::vector<std::size_t> group(chosen.begin() + c * p,
                                   chosen.begin() + (c + 1) * p);
    for (std::size_t a = 0; a < p; ++a) {
      out.labels[group[a]] = 1;
      for (std::size_t b = a + 1; b < p; ++b) {
        if (!g.HasEdge(group[a], group[b])) {
          extra.emplace_back(static_cast<NodeId>(group[a]),
                             static_cast<NodeId>(group[b]));
        }
      }
    }
    out.cliques.push_back(std::move(group));
  }
  out.added_edges = extra.size();
  out.graph = g.WithAddedEdges(extra);
  return out;
}

AttributeInjection InjectAttribute(const Graph& g, std::size_t count,
                                   std::size_t candidate_size, Rng& rng,
                                   const LabelVector& exclude) {
  const std::size_t n = g.num_nodes();
  if (!exclude.empty() && exclude.size() != n) {
    throw ShapeError("exclude mask length does not match node count");
  }
  if (candidate_size < 1) throw ConfigError("candidate_size must be >= 1");
  if (n < 1 || candidate_size > n - 1) {
    throw ConfigError("candidate pool of " + std::to_string(n ? n - 1 : 0) +
                      " nodes is smaller than candidate_size " +
                      std::to_string(candidate_size));
  }
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < n; ++i) {
    if (exclude.empty() || exclude[i] == 0) eligible.push_back(i);
  }
  if (eligible.size() < count) {
    throw ConfigError("only " + std::to_string(eligible.size()) +
                      " nodes available for " + std::to_string(count) +
                      " attribute anomalies");
  }
  auto picks = rng.SampleWithoutReplacement(eligible.size(), count);

  const Matrix& original = g.features();
  Matrix features = original;
  AttributeInjection out;
  out.labels.assign(n, 0);
  for (std::size_t pick : picks) {
    const std::size_t target = eligible[pick];
    // Candidates: distinct nodes other than the target.
    auto draws = rng.SampleWithoutReplacement(n - 1, candidate_size);
    std::size_t best = 0;
    double best_dist = -1.0;
    auto xt = original.row(target);
    for (std::size_t draw : draws) {
      const std::size_t c = draw >= target ? draw + 1 : draw;
      auto xc = original.row(c);
      double dist = 0.0;
      for (std::size_t k = 0; k < xt.size(); ++k) {
        const double diff = xt[k] - xc[k];
        dist += diff * diff;
      }
      if (dist > best_dist) {
        best_dist = dist;
        best = c;
      }
    }
    auto src = original.row(best);
    std::copy(src.begin(), src.end(), features.row(target).begin());
    out.labels[target] = 1;
    out.targets.push_back(target);
    out.sources.push_back(best);
  }
  out.graph = g.WithFeatures(std::move(features));
  return out;
}

InjectionResult InjectAnomalies(const Graph& g, const InjectionConfig& cfg) {
  cfg.Validate(g.num_nodes());
  Rng rng = Rng::ForStream(cfg.seed, StreamId::kInjection);
  auto structural = InjectStructural(g, cfg.p, cfg.q, rng);
  auto attribute = InjectAttribute(structural.graph, cfg.p * cfg.q,
                                   cfg.candidate_size, rng, structural.labels);
  InjectionResult out;
  out.graph = std::move(attribute.graph);
  out.labels = structural.labels;
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    out.labels[i] |= attribute.labels[i];
  }
  out.cliques = std::move(structural.cliques);
  out.attribute_targets = std::move(attribute.targets);
  out.attribute_sources = std::move(attribute.sources);
  out.added_edges = structural.added_edges;
  return out;
}

std::string ProvenanceJson(const InjectionConfig& cfg,
                           const InjectionResult& result) {
  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["p"] = cfg.p;
  j["q"] = cfg.q;
  j["candidate_size"] = cfg.candidate_size;
  j["n"] = result.graph.num_nodes();
  j["added_edges"] = result.added_edges;
  j["structural_cliques"] = result.cliques;
  j["attribute_targets"] = result.attribute_targets;
  j["attribute_sources"] = result.attribute_sources;
  return j.dump(2);
}

}  // namespace anomatch
