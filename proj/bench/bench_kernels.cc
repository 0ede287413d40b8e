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

// Parallel kernels against their serial references. Thread count follows
// ANOMATCH_NUM_THREADS.

#include <map>
#include <numeric>
#include <vector>

#include "anomatch/contrastive.h"
#include "anomatch/metrics.h"
#include "anomatch/parallel.h"
#include "anomatch/preprocess.h"
#include "anomatch/random.h"
#include "anomatch/reference.h"
#include "anomatch/synthetic.h"
#include "anomatch/trainer.h"
#include "benchmark/benchmark.h"

namespace anomatch {
namespace {

const Graph& BenchGraph(std::size_t n) {
  static std::map<std::size_t, Graph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    ClusteredGraphConfig cfg;
    cfg.num_nodes = n;
    cfg.seed = 1;
    it = cache.emplace(n, GenerateClusteredGraph(cfg).graph).first;
  }
  return it->second;
}

void BM_Propagate(benchmark::State& state) {
  const Graph& g = BenchGraph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(AnonymizedPropagate(g, 2));
}

void BM_PropagateReference(benchmark::State& state) {
  const Graph& g = BenchGraph(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::AnonymizedPropagate(g, 2));
  }
}

struct LossFixture {
  PreprocessedFeatures prep;
  ModelParameters params;
  std::vector<std::size_t> batch;
  NegativeAssignment neg;

  explicit LossFixture(std::size_t n) {
    prep = AnonymizedPropagate(BenchGraph(n), 2);
    TrainingConfig cfg;
    params = InitialParameters(prep.feature_dim(), cfg);
    batch.resize(n);
    std::iota(batch.begin(), batch.end(), std::size_t{0});
    Rng a(1), b(2);
    neg = SampleNegatives(batch, a, b);
  }
};

void BM_LossGradient(benchmark::State& state) {
  LossFixture f(state.range(0));
  const auto mode = state.range(1) ? ExecutionMode::kFast
                                   : ExecutionMode::kDeterministic;
  ModelParameters grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ContrastiveLossAndGradient(f.params, f.prep, f.batch, f.neg, {}, grad, mode));
  }
}

void BM_LossGradientReference(benchmark::State& state) {
  LossFixture f(state.range(0));
  ModelParameters grad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::ContrastiveLossAndGradient(
        f.params, f.prep, f.batch, f.neg, {}, grad));
  }
}

void BM_Score(benchmark::State& state) {
  LossFixture f(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Score(f.params, f.prep));
}

void BM_ScoreReference(benchmark::State& state) {
  LossFixture f(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reference::Score(f.params, f.prep));
  }
}

BENCHMARK(BM_Propagate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropagateReference)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LossGradient)
    ->Args({1000, 0})
    ->Args({1000, 1})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LossGradientReference)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Score)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreReference)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace anomatch

int main(int argc, char** argv) {
  anomatch::ConfigureThreadsFromEnv();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
