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
#include <random>
#include <set>

#include "anomatch/errors.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "test_util.h"

namespace anomatch {
namespace {

Graph Edgeless(std::size_t n, std::size_t d = 1) {
  Matrix x(n, d);
  for (std::size_t i = 0; i < n; ++i) x(i, 0) = static_cast<double>(i);
  return Graph::FromEdges({}, std::move(x));
}

std::size_t Count(const LabelVector& l) {
  return std::count(l.begin(), l.end(), std::uint8_t{1});
}

TEST(InjectStructuralTest, SmallestClique) {
  Rng rng(1);
  auto out = InjectStructural(Edgeless(4), 2, 1, rng);
  EXPECT_EQ(out.graph.num_edges(), 1u);
  EXPECT_EQ(out.added_edges, 1u);
  EXPECT_EQ(Count(out.labels), 2u);
}

TEST(InjectStructuralTest, EdgeCountOnEdgelessGraph) {
  Rng rng(2);
  auto out = InjectStructural(Edgeless(100), 5, 2, rng);
  EXPECT_EQ(out.graph.num_edges(), 20u);
  EXPECT_EQ(Count(out.labels), 10u);
  ASSERT_EQ(out.cliques.size(), 2u);
}

TEST(InjectStructuralTest, GroupsAreCompleteAndDisjoint) {
  std::mt19937_64 gen(3);
  auto edges = testing::RandomEdges(80, 0.05, gen);
  Graph g = Graph::FromEdges(edges, testing::RandomMatrix(80, 3, gen));
  Rng rng(3);
  auto out = InjectStructural(g, 5, 2, rng);
  std::set<std::size_t> members;
  std::vector<Edge> all_edges = out.graph.UndirectedEdges();
  auto dense = testing::DenseAdjacency(80, all_edges);
  for (const auto& group : out.cliques) {
    ASSERT_EQ(group.size(), 5u);
    for (std::size_t a : group) {
      EXPECT_TRUE(members.insert(a).second);
      EXPECT_EQ(out.labels[a], 1);
      for (std::size_t b : group) {
        if (a != b) EXPECT_EQ(dense[a][b], 1.0);
      }
    }
  }
  EXPECT_EQ(Count(out.labels), 10u);
  // Existing edges untouched; features untouched.
  for (auto [u, v] : g.UndirectedEdges()) EXPECT_TRUE(out.graph.HasEdge(u, v));
  EXPECT_EQ(out.graph.features(), g.features());
  EXPECT_EQ(out.graph.num_edges(), g.num_edges() + out.added_edges);
}

TEST(InjectStructuralTest, InsufficientNodes) {
  Rng rng(4);
  EXPECT_THROW(InjectStructural(Edgeless(9), 5, 2, rng), ConfigError);
}

TEST(InjectAttributeTest, IdenticalCandidateLeavesFeaturesButLabels) {
  Matrix x(2, 2, 1.5);
  Graph g = Graph::FromEdges(std::vector<Edge>{{0, 1}}, x);
  Rng rng(5);
  auto out = InjectAttribute(g, 1, 1, rng, {});
  EXPECT_EQ(out.graph.features(), x);
  EXPECT_EQ(Count(out.labels), 1u);
}

TEST(InjectAttributeTest, FarthestCandidateWins) {
  Matrix x(3, 1);
  x(0, 0) = 0.0;
  x(1, 0) = 1.0;
  x(2, 0) = 10.0;
  Graph g = Graph::FromEdges({}, x);
  Rng rng(6);
  // Nodes 1 and 2 excluded from targeting, so node 0 is the target and both
  // others are its candidates.
  auto out = InjectAttribute(g, 1, 2, rng, LabelVector{0, 1, 1});
  EXPECT_EQ(out.targets, (std::vector<std::size_t>{0}));
  EXPECT_EQ(out.graph.features()(0, 0), 10.0);
  EXPECT_EQ(out.labels, (LabelVector{1, 0, 0}));
}

TEST(InjectAttributeTest, MatchesBruteForceArgmax) {
  std::mt19937_64 gen(7);
  auto edges = testing::RandomEdges(200, 0.02, gen);
  Graph g = Graph::FromEdges(edges, testing::RandomMatrix(200, 16, gen));
  Rng rng(7);
  Rng replay(7);
  auto out = InjectAttribute(g, 25, 50, rng, {});
  EXPECT_EQ(out.graph.UndirectedEdges(), g.UndirectedEdges());

  // Replay the same draws and recompute each argmax by brute force.
  auto picks = replay.SampleWithoutReplacement(200, 25);
  for (std::size_t t = 0; t < picks.size(); ++t) {
    const std::size_t target = picks[t];
    ASSERT_EQ(out.targets[t], target);
    auto draws = replay.SampleWithoutReplacement(199, 50);
    double best = -1;
    std::size_t arg = 0;
    for (std::size_t dr : draws) {
      std::size_t c = dr >= target ? dr + 1 : dr;
      ASSERT_NE(c, target);
      double dist = 0;
      for (std::size_t k = 0; k < 16; ++k) {
        dist += std::pow(g.features()(target, k) - g.features()(c, k), 2);
      }
      if (dist > best) {
        best = dist;
        arg = c;
      }
    }
    for (std::size_t k = 0; k < 16; ++k) {
      EXPECT_EQ(out.graph.features()(target, k), g.features()(arg, k));
    }
  }
}

TEST(InjectAttributeTest, CandidatePoolTooSmall) {
  Rng rng(8);
  EXPECT_THROW(InjectAttribute(Edgeless(5), 1, 5, rng, {}), ConfigError);
  EXPECT_THROW(InjectAttribute(Edgeless(5), 4, 2, rng, LabelVector{1, 1, 0, 0, 0}),
               ConfigError);
}

TEST(InjectAnomaliesTest, DisjointSetsOfEqualSize) {
  std::mt19937_64 gen(9);
  auto edges = testing::RandomEdges(150, 0.04, gen);
  Graph g = Graph::FromEdges(edges, testing::RandomMatrix(150, 8, gen));
  InjectionConfig cfg{5, 3, 50, 9};
  auto out = InjectAnomalies(g, cfg);
  std::set<std::size_t> structural;
  for (const auto& c : out.cliques) structural.insert(c.begin(), c.end());
  EXPECT_EQ(structural.size(), 15u);
  ASSERT_EQ(out.attribute_targets.size(), 15u);
  for (std::size_t t : out.attribute_targets) EXPECT_EQ(structural.count(t), 0u);
  EXPECT_EQ(Count(out.labels), 30u);
}

TEST(InjectAnomaliesTest, SameSeedSameOutput) {
  std::mt19937_64 gen(10);
  auto edges = testing::RandomEdges(100, 0.05, gen);
  Graph g = Graph::FromEdges(edges, testing::RandomMatrix(100, 4, gen));
  InjectionConfig cfg{4, 2, 20, 77};
  auto a = InjectAnomalies(g, cfg);
  auto b = InjectAnomalies(g, cfg);
  EXPECT_EQ(a.graph, b.graph);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(ProvenanceJson(cfg, a), ProvenanceJson(cfg, b));
  cfg.seed = 78;
  EXPECT_NE(InjectAnomalies(g, cfg).labels, a.labels);
}

TEST(InjectionConfigTest, BoundsNamed) {
  InjectionConfig cfg{200, 200, 50, 0};
  try {
    cfg.Validate(100);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("2pq <= n"), std::string::npos);
  }
  EXPECT_THROW((InjectionConfig{1, 1, 1, 0}).Validate(10), ConfigError);
  EXPECT_THROW((InjectionConfig{2, 0, 1, 0}).Validate(10), ConfigError);
  EXPECT_NO_THROW((InjectionConfig{5, 10, 50, 0}).Validate(100));
}

TEST(ProvenanceTest, RecordsSeedAndChosenNodes) {
  auto g = Edgeless(20, 2);
  InjectionConfig cfg{2, 2, 5, 123};
  auto out = InjectAnomalies(g, cfg);
  auto j = nlohmann::json::parse(ProvenanceJson(cfg, out));
  EXPECT_EQ(j["seed"], 123);
  EXPECT_EQ(j["p"], 2);
  EXPECT_EQ(j["structural_cliques"].size(), 2u);
  EXPECT_EQ(j["attribute_targets"].size(), 4u);
}

}  // namespace
}  // namespace anomatch
