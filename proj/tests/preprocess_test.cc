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

#include <random>

#include "anomatch/errors.h"
#include "anomatch/parallel.h"
#include "anomatch/reference.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace anomatch {
namespace {

Graph PairGraph(Matrix x) {
  return Graph::FromEdges(std::vector<Edge>{{0, 1}}, std::move(x));
}

TEST(NormalizedAdjacencyTest, SingleEdgeIsHalfOnes) {
  Graph g = PairGraph(Matrix::Identity(2));
  Matrix s = NormalizedAdjacencyApply(g, Matrix::Identity(2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_DOUBLE_EQ(s(i, j), 0.5);
}

TEST(NormalizedAdjacencyTest, EdgelessIsIdentity) {
  std::mt19937_64 gen(1);
  Matrix v = testing::RandomMatrix(5, 3, gen);
  Graph g = Graph::FromEdges({}, Matrix(5, 1));
  EXPECT_EQ(NormalizedAdjacencyApply(g, v), v);
}

TEST(NormalizedAdjacencyTest, MatchesDenseOracle) {
  std::mt19937_64 gen(2);
  const std::size_t n = 30;
  auto edges = testing::RandomEdges(n, 0.15, gen);
  Graph g = Graph::FromEdges(edges, Matrix(n, 1));
  Matrix v = testing::RandomMatrix(n, 4, gen);
  auto oracle = testing::Multiply(
      testing::DenseNormalized(testing::DenseAdjacency(n, edges)),
      testing::FromMatrix(v));
  EXPECT_LE(testing::MaxAbsDiff(oracle, NormalizedAdjacencyApply(g, v)), 1e-12);
}

TEST(NormalizedAdjacencyTest, RowCountMismatch) {
  Graph g = PairGraph(Matrix(2, 1));
  EXPECT_THROW(NormalizedAdjacencyApply(g, Matrix(3, 1)), ShapeError);
}

TEST(AnonymizedPropagateTest, SingleEdgeK1) {
  Graph g = PairGraph(Matrix::Identity(2));
  auto prep = AnonymizedPropagate(g, 1);
  EXPECT_EQ(prep.k, 1);
  EXPECT_EQ(prep.ego, Matrix::Identity(2));
  EXPECT_NEAR(prep.neighbor(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(prep.neighbor(0, 1), 0.5, 1e-15);
  EXPECT_NEAR(prep.neighbor(1, 0), 0.5, 1e-15);
  EXPECT_NEAR(prep.neighbor(1, 1), 0.0, 1e-15);
}

TEST(AnonymizedPropagateTest, EdgelessGivesZeroNeighbors) {
  std::mt19937_64 gen(3);
  Graph g = Graph::FromEdges({}, testing::RandomMatrix(6, 3, gen));
  for (int k : {1, 2, 5}) {
    auto prep = AnonymizedPropagate(g, k);
    for (double v : prep.neighbor.values()) EXPECT_EQ(v, 0.0);
  }
}

TEST(AnonymizedPropagateTest, KZeroRejected) {
  Graph g = PairGraph(Matrix(2, 1));
  EXPECT_THROW(AnonymizedPropagate(g, 0), ConfigError);
  EXPECT_THROW(PropagationSelfWeights(g, 0), ConfigError);
}

TEST(AnonymizedPropagateTest, MatchesDenseMatrixPower) {
  std::mt19937_64 gen(4);
  const std::size_t n = 50;
  auto edges = testing::RandomEdges(n, 0.08, gen);
  Matrix x = testing::RandomMatrix(n, 6, gen);
  Graph g = Graph::FromEdges(edges, x);
  auto dense_a = testing::DenseAdjacency(n, edges);
  for (int k : {1, 2, 3}) {
    auto prep = AnonymizedPropagate(g, k);
    auto oracle = testing::DenseAnonymized(dense_a, testing::FromMatrix(x), k);
    EXPECT_LE(testing::MaxAbsDiff(oracle, prep.neighbor), 1e-10) << "k=" << k;
    EXPECT_EQ(prep.ego, x);
  }
}

TEST(AnonymizedPropagateTest, SelfWeightsAreDiagonalOfPower) {
  std::mt19937_64 gen(5);
  const std::size_t n = 25;
  auto edges = testing::RandomEdges(n, 0.2, gen);
  Graph g = Graph::FromEdges(edges, Matrix(n, 1));
  auto s = testing::DenseNormalized(testing::DenseAdjacency(n, edges));
  auto p = s;
  for (int k = 1; k <= 4; ++k) {
    if (k > 1) p = testing::Multiply(p, s);
    auto w = PropagationSelfWeights(g, k);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(w[i], p[i][i], 1e-13);
  }
}

TEST(AnonymizedPropagateTest, OwnFeaturesDoNotReachNeighborRow) {
  std::mt19937_64 gen(6);
  const std::size_t n = 40;
  auto edges = testing::RandomEdges(n, 0.1, gen);
  Matrix x = testing::RandomMatrix(n, 5, gen);
  Graph g = Graph::FromEdges(edges, x);
  for (int k : {1, 2, 3}) {
    auto base = AnonymizedPropagate(g, k);
    for (std::size_t i = 0; i < n; i += 7) {
      Matrix perturbed = x;
      for (double& v : perturbed.row(i)) v = 100.0 * (v + 3.0);
      auto prep = AnonymizedPropagate(g.WithFeatures(perturbed), k);
      for (std::size_t c = 0; c < x.cols(); ++c) {
        EXPECT_NEAR(prep.neighbor(i, c), base.neighbor(i, c), 1e-10);
      }
    }
  }
}

TEST(AnonymizedPropagateTest, LinearInFeatures) {
  std::mt19937_64 gen(7);
  const std::size_t n = 35;
  auto edges = testing::RandomEdges(n, 0.1, gen);
  Matrix x1 = testing::RandomMatrix(n, 4, gen);
  Matrix x2 = testing::RandomMatrix(n, 4, gen);
  const double a = 1.7, b = -0.4;
  Matrix mix(n, 4);
  for (std::size_t i = 0; i < mix.values().size(); ++i) {
    mix.values()[i] = a * x1.values()[i] + b * x2.values()[i];
  }
  Graph g = Graph::FromEdges(edges, x1);
  auto p1 = AnonymizedPropagate(g, 2).neighbor;
  auto p2 = AnonymizedPropagate(g.WithFeatures(x2), 2).neighbor;
  auto pm = AnonymizedPropagate(g.WithFeatures(mix), 2).neighbor;
  for (std::size_t i = 0; i < pm.values().size(); ++i) {
    EXPECT_NEAR(pm.values()[i], a * p1.values()[i] + b * p2.values()[i], 1e-10);
  }
}

TEST(AnonymizedPropagateTest, ParallelKernelMatchesSerialReference) {
  std::mt19937_64 gen(8);
  const std::size_t n = 300;
  auto edges = testing::RandomEdges(n, 0.03, gen);
  Graph g = Graph::FromEdges(edges, testing::RandomMatrix(n, 8, gen));
  for (int k : {1, 2, 3}) {
    auto kernel = AnonymizedPropagate(g, k);
    auto ref = reference::AnonymizedPropagate(g, k);
    EXPECT_LE(MaxAbsDiff(kernel.neighbor, ref.neighbor), 1e-12);
  }
}

TEST(AnonymizedPropagateTest, ThreadCountDoesNotChangeBits) {
  std::mt19937_64 gen(9);
  const std::size_t n = 500;
  auto edges = testing::RandomEdges(n, 0.02, gen);
  Graph g = Graph::FromEdges(edges, testing::RandomMatrix(n, 8, gen));
  const int saved = MaxThreads();
  SetThreads(1);
  auto serial = AnonymizedPropagate(g, 2);
  SetThreads(4);
  auto parallel = AnonymizedPropagate(g, 2);
  SetThreads(saved);
  EXPECT_EQ(serial.neighbor, parallel.neighbor);
}

TEST(PreprocessedIoTest, SaveLoadRoundTrip) {
  testing::TempDir dir;
  std::mt19937_64 gen(10);
  auto edges = testing::RandomEdges(20, 0.2, gen);
  Graph g = Graph::FromEdges(edges, testing::RandomMatrix(20, 3, gen));
  auto prep = AnonymizedPropagate(g, 2);
  SavePreprocessed(prep, dir.path() / "prep");
  auto back = LoadPreprocessed(dir.path() / "prep");
  EXPECT_EQ(back.ego, prep.ego);
  EXPECT_EQ(back.neighbor, prep.neighbor);
  EXPECT_EQ(back.k, 2);
}

}  // namespace
}  // namespace anomatch
