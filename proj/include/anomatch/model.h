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

#ifndef ANOMATCH_MODEL_H_
#define ANOMATCH_MODEL_H_

#include <cstddef>
#include <span>
#include <vector>

#include "anomatch/matrix.h"
#include "anomatch/random.h"

namespace anomatch {

// Weights of the two affine maps: ego features go through (w1, b1), neighbor
// features through (w2, b2). Both map d inputs to hidden_dim outputs.
struct ModelParameters {
  Matrix w1;  // d x hidden_dim
  std::vector<double> b1;
  Matrix w2;  // d x hidden_dim
  std::vector<double> b2;

  std::size_t input_dim() const { return w1.rows(); }
  std::size_t hidden_dim() const { return w1.cols(); }

  static ModelParameters Zeros(std::size_t input_dim, std::size_t hidden_dim);

  // Weights uniform in +-sqrt(6 / (d + d_h)), biases zero. w1 is drawn
  // before w2.
  static ModelParameters Initialize(std::size_t input_dim,
                                    std::size_t hidden_dim, Rng& rng);

  // Throws ShapeError unless the four tensors agree on d and d_h.
  void Validate() const;
  bool AllFinite() const;

  // Flat views over all parameters in the order w1, b1, w2, b2.
  std::size_t size() const;
  double& at(std::size_t flat_index);
  double at(std::size_t flat_index) const;

  friend bool operator==(const ModelParameters&,
                         const ModelParameters&) = default;
};

struct EmbeddingPair {
  std::vector<double> ego;
  std::vector<double> neighbor;
};

// Norm below which a vector is treated as zero by Cosine.
inline constexpr double kDegenerateNorm = 1e-12;

// out = x * w + b. Accumulates over input features in order, starting from b.
void AffineInto(const Matrix& w, std::span<const double> b,
                std::span<const double> x, std::span<double> out);

EmbeddingPair Embed(const ModelParameters& params,
                    std::span<const double> x_ego,
                    std::span<const double> x_neighbor);

// Cosine similarity clamped to [-1, 1]; 0 when either norm < 1e-12.
double Cosine(std::span<const double> u, std::span<const double> v);

// Maps [-1, 1] onto [0, 1] preserving order.
inline double Remap(double c) { return 0.5 * (c + 1.0); }

// cos(x_ego W1 + b1, x_neighbor W2 + b2).
double PairwiseSimilarity(const ModelParameters& params,
                          std::span<const double> x_ego,
                          std::span<const double> x_neighbor);

// Which contrastive term a pair contributes to. Positive and neighbor
// negative pairs embed the partner with (w2, b2); ego negative pairs embed
// both sides with (w1, b1).
enum class PairRole { kPositive, kNeighborNegative, kEgoNegative };

struct PairSample {
  std::span<const double> anchor;   // ego features of the anchor node
  std::span<const double> partner;  // neighbor or ego features of the partner
  PairRole role = PairRole::kPositive;
  double weight = 1.0;              // 1, alpha, or gamma
};

// Per-pair loss: -w log(c^) for positives, -w log(1 - c^) for negatives,
// with c^ = Remap(c) clamped to [eps_clamp, 1 - eps_clamp].
double PairLoss(double c, PairRole role, double weight, double eps_clamp);

// dL/dc for the term above; zero where the clamp is active.
double PairLossSlope(double c, PairRole role, double weight, double eps_clamp);

// Gradients of cos(u, v): du = dc/du, dv = dc/dv. Both are zero when either
// vector is degenerate. Returns the cosine.
double CosineWithGradient(std::span<const double> u, std::span<const double> v,
                          std::span<double> du, std::span<double> dv);

// Sum of PairLoss over the samples.
double SampleLoss(const ModelParameters& params,
                  std::span<const PairSample> samples, double eps_clamp);

// Exact gradient of SampleLoss with respect to all four tensors, evaluated
// one pair at a time.
ModelParameters Backward(const ModelParameters& params,
                         std::span<const PairSample> samples,
                         double eps_clamp);

}  // namespace anomatch

#endif  // ANOMATCH_MODEL_H_
