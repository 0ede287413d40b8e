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

#include "anomatch/trainer.h"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "anomatch/errors.h"
#include "anomatch/random.h"

namespace anomatch {

void TrainingConfig::Validate(std::size_t num_nodes) const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (k < 1) fail("k must be >= 1 (got " + std::to_string(k) + ")");
  if (hidden_dim < 1) fail("d_h must be >= 1");
  if (!(lr >= 0.0) || !std::isfinite(lr)) fail("lr must be finite and >= 0");
  if (epochs < 1) fail("epochs must be >= 1 (got " + std::to_string(epochs) + ")");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) fail("alpha must be >= 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) fail("gamma must be >= 0");
  if (!(eps_clamp > 0.0 && eps_clamp < 0.5)) {
    fail("eps_clamp must lie in (0, 0.5)");
  }
  if (num_nodes < 2) fail("training needs at least 2 nodes");
  if (batch_size != kFullBatch) {
    if (batch_size < 2) fail("batch_size must be >= 2");
    if (batch_size > num_nodes) {
      fail("batch_size " + std::to_string(batch_size) + " exceeds n = " +
           std::to_string(num_nodes));
    }
  }
}

std::array<std::span<double>, 4> Tensors(ModelParameters& p) {
  return {p.w1.values(), std::span<double>(p.b1), p.w2.values(),
          std::span<double>(p.b2)};
}

std::array<std::span<const double>, 4> Tensors(const ModelParameters& p) {
  return {p.w1.values(), std::span<const double>(p.b1), p.w2.values(),
          std::span<const double>(p.b2)};
}

AdamOptimizer::AdamOptimizer(std::size_t input_dim, std::size_t hidden_dim,
                             AdamOptions options)
    : options_(options),
      first_(ModelParameters::Zeros(input_dim, hidden_dim)),
      second_(ModelParameters::Zeros(input_dim, hidden_dim)) {}

void AdamOptimizer::Step(ModelParameters& params, const ModelParameters& grad,
                         double lr) {
  ++steps_;
  const double b1 = options_.beta1;
  const double b2 = options_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(steps_));
  auto p = Tensors(params);
  auto g = Tensors(grad);
  auto m = Tensors(first_);
  auto v = Tensors(second_);
  for (int t = 0; t < 4; ++t) {
    for (std::size_t i = 0; i < p[t].size(); ++i) {
      const double gi = g[t][i];
      m[t][i] = b1 * m[t][i] + (1.0 - b1) * gi;
      v[t][i] = b2 * v[t][i] + (1.0 - b2) * gi * gi;
      const double m_hat = m[t][i] / c1;
      const double v_hat = v[t][i] / c2;
      p[t][i] -= lr * m_hat / (std::sqrt(v_hat) + options_.epsilon);
    }
  }
}

ModelParameters InitialParameters(std::size_t input_dim,
                                  const TrainingConfig& cfg) {
  Rng rng = Rng::ForStream(cfg.seed, StreamId::kInit);
  return ModelParameters::Initialize(input_dim, cfg.hidden_dim, rng);
}

std::vector<std::span<const std::size_t>> MakeBatches(
    std::span<const std::size_t> order, std::size_t batch_size) {
  std::vector<std::span<const std::size_t>> batches;
  const std::size_t n = order.size();
  if (batch_size == kFullBatch || batch_size >= n) {
    batches.push_back(order);
    return batches;
  }
  for (std::size_t start = 0; start < n; start += batch_size) {
    std::size_t len = std::min(batch_size, n - start);
    batches.push_back(order.subspan(start, len));
  }
  if (batches.size() > 1 && batches.back().size() == 1) {
    auto last = batches.back();
    batches.pop_back();
    auto& prev = batches.back();
    prev = std::span<const std::size_t>(prev.data(), prev.size() + last.size());
  }
  return batches;
}

TrainResult TrainOnFeatures(const PreprocessedFeatures& prep,
                            const TrainingConfig& cfg,
                            const EpochCallback& on_epoch) {
  const std::size_t n = prep.num_nodes();
  cfg.Validate(n);
  if (prep.neighbor.rows() != n || prep.neighbor.cols() != prep.feature_dim()) {
    throw ShapeError("ego and neighbor feature matrices differ in shape");
  }
  const std::size_t d = prep.feature_dim();

  TrainResult result;
  result.params = InitialParameters(d, cfg);
  AdamOptimizer adam(d, cfg.hidden_dim);
  ModelParameters grad = ModelParameters::Zeros(d, cfg.hidden_dim);
  const LossWeights weights = cfg.loss_weights();

  Rng shuffle_rng = Rng::ForStream(cfg.seed, StreamId::kShuffle);
  Rng neighbor_rng = Rng::ForStream(cfg.seed, StreamId::kNeighborNegatives);
  Rng ego_rng = Rng::ForStream(cfg.seed, StreamId::kEgoNegatives);

  std::vector<std::size_t> order(n);
  using Clock = std::chrono::steady_clock;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const auto start = Clock::now();
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_rng.Shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    for (auto batch : MakeBatches(order, cfg.batch_size)) {
      const auto neg = SampleNegatives(batch, neighbor_rng, ego_rng);
      epoch_loss += ContrastiveLossAndGradient(result.params, prep, batch, neg,
                                               weights, grad, cfg.mode);
      adam.Step(result.params, grad, cfg.lr);
    }
    EpochStats stats;
    stats.epoch = epoch;
    stats.mean_loss = epoch_loss / static_cast<double>(n);
    stats.seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    result.history.push_back(stats);
    if (on_epoch) on_epoch(stats);
  }
  return result;
}

TrainResult Train(const Graph& g, const TrainingConfig& cfg,
                  const EpochCallback& on_epoch, const Propagator& propagate) {
  cfg.Validate(g.num_nodes());
  const PreprocessedFeatures prep = propagate(g, cfg.k);
  return TrainOnFeatures(prep, cfg, on_epoch);
}

}  // namespace anomatch
