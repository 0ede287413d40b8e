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

#include "anomatch/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "anomatch/errors.h"

namespace anomatch {
namespace {

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void CheckInput(const ModelParameters& params, std::span<const double> x,
                const char* what) {
  if (x.size() != params.input_dim()) {
    throw ShapeError(std::string(what) + " has length " +
                     std::to_string(x.size()) + ", model expects " +
                     std::to_string(params.input_dim()));
  }
}

// grad_w += x^T g, grad_b += g.
void AccumulateAffineGradient(std::span<const double> x,
                              std::span<const double> g, Matrix& grad_w,
                              std::vector<double>& grad_b) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double xk = x[k];
    if (xk == 0.0) continue;
    auto row = grad_w.row(k);
    for (std::size_t j = 0; j < g.size(); ++j) row[j] += xk * g[j];
  }
  for (std::size_t j = 0; j < g.size(); ++j) grad_b[j] += g[j];
}

}  // namespace

ModelParameters ModelParameters::Zeros(std::size_t input_dim,
                                       std::size_t hidden_dim) {
  ModelParameters p;
  p.w1 = Matrix(input_dim, hidden_dim);
  p.w2 = Matrix(input_dim, hidden_dim);
  p.b1.assign(hidden_dim, 0.0);
  p.b2.assign(hidden_dim, 0.0);
  return p;
}

ModelParameters ModelParameters::Initialize(std::size_t input_dim,
                                            std::size_t hidden_dim, Rng& rng) {
  ModelParameters p = Zeros(input_dim, hidden_dim);
  const double bound =
      std::sqrt(6.0 / static_cast<double>(input_dim + hidden_dim));
  for (double& w : p.w1.values()) w = rng.Uniform(-bound, bound);
  for (double& w : p.w2.values()) w = rng.Uniform(-bound, bound);
  return p;
}

void ModelParameters::Validate() const {
  const std::size_t d = w1.rows();
  const std::size_t h = w1.cols();
  if (w2.rows() != d || w2.cols() != h || b1.size() != h || b2.size() != h) {
    throw ShapeError("model parameters disagree on input/hidden dimensions");
  }
}

bool ModelParameters::AllFinite() const {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(w1.values().begin(), w1.values().end(), finite) &&
         std::all_of(w2.values().begin(), w2.values().end(), finite) &&
         std::all_of(b1.begin(), b1.end(), finite) &&
         std::all_of(b2.begin(), b2.end(), finite);
}

std::size_t ModelParameters::size() const {
  return w1.values().size() + b1.size() + w2.values().size() + b2.size();
}

double& ModelParameters::at(std::size_t i) {
  const std::size_t nw = w1.values().size();
  const std::size_t nb = b1.size();
  if (i < nw) return w1.values()[i];
  i -= nw;
  if (i < nb) return b1[i];
  i -= nb;
  if (i < nw) return w2.values()[i];
  return b2[i - nw];
}

double ModelParameters::at(std::size_t i) const {
  return const_cast<ModelParameters*>(this)->at(i);
}

void AffineInto(const Matrix& w, std::span<const double> b,
                std::span<const double> x, std::span<double> out) {
  std::copy(b.begin(), b.end(), out.begin());
  const std::size_t h = out.size();
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double xk = x[k];
    auto row = w.row(k);
    for (std::size_t j = 0; j < h; ++j) out[j] += xk * row[j];
  }
}

EmbeddingPair Embed(const ModelParameters& params,
                    std::span<const double> x_ego,
                    std::span<const double> x_neighbor) {
  CheckInput(params, x_ego, "ego feature vector");
  CheckInput(params, x_neighbor, "neighbor feature vector");
  EmbeddingPair e;
  e.ego.resize(params.hidden_dim());
  e.neighbor.resize(params.hidden_dim());
  AffineInto(params.w1, params.b1, x_ego, e.ego);
  AffineInto(params.w2, params.b2, x_neighbor, e.neighbor);
  return e;
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw ShapeError("Cosine: length mismatch");
  const double nu = std::sqrt(Dot(u, u));
  const double nv = std::sqrt(Dot(v, v));
  if (nu < kDegenerateNorm || nv < kDegenerateNorm) return 0.0;
  return std::clamp(Dot(u, v) / (nu * nv), -1.0, 1.0);
}

double PairwiseSimilarity(const ModelParameters& params,
                          std::span<const double> x_ego,
                          std::span<const double> x_neighbor) {
  const auto e = Embed(params, x_ego, x_neighbor);
  return Cosine(e.ego, e.neighbor);
}

double PairLoss(double c, PairRole role, double weight, double eps_clamp) {
  if (weight == 0.0) return 0.0;
  const double hat = std::clamp(Remap(c), eps_clamp, 1.0 - eps_clamp);
  if (role == PairRole::kPositive) return -weight * std::log(hat);
  return -weight * std::log(1.0 - hat);
}

double PairLossSlope(double c, PairRole role, double weight,
                     double eps_clamp) {
  if (weight == 0.0) return 0.0;
  const double hat = Remap(c);
  if (hat < eps_clamp || hat > 1.0 - eps_clamp) return 0.0;
  // d(hat)/dc = 1/2.
  if (role == PairRole::kPositive) return -weight * 0.5 / hat;
  return weight * 0.5 / (1.0 - hat);
}

double CosineWithGradient(std::span<const double> u, std::span<const double> v,
                          std::span<double> du, std::span<double> dv) {
  const double uu = Dot(u, u);
  const double vv = Dot(v, v);
  const double nu = std::sqrt(uu);
  const double nv = std::sqrt(vv);
  if (nu < kDegenerateNorm || nv < kDegenerateNorm) {
    std::fill(du.begin(), du.end(), 0.0);
    std::fill(dv.begin(), dv.end(), 0.0);
    return 0.0;
  }
  const double inv = 1.0 / (nu * nv);
  const double c = Dot(u, v) * inv;
  for (std::size_t j = 0; j < u.size(); ++j) {
    du[j] = v[j] * inv - c * u[j] / uu;
    dv[j] = u[j] * inv - c * v[j] / vv;
  }
  return std::clamp(c, -1.0, 1.0);
}

namespace {

struct PairEmbedding {
  std::vector<double> anchor;
  std::vector<double> partner;
};

PairEmbedding EmbedSample(const ModelParameters& params,
                          const PairSample& s) {
  CheckInput(params, s.anchor, "anchor feature vector");
  CheckInput(params, s.partner, "partner feature vector");
  PairEmbedding e;
  e.anchor.resize(params.hidden_dim());
  e.partner.resize(params.hidden_dim());
  AffineInto(params.w1, params.b1, s.anchor, e.anchor);
  if (s.role == PairRole::kEgoNegative) {
    AffineInto(params.w1, params.b1, s.partner, e.partner);
  } else {
    AffineInto(params.w2, params.b2, s.partner, e.partner);
  }
  return e;
}

}  // namespace

double SampleLoss(const ModelParameters& params,
                  std::span<const PairSample> samples, double eps_clamp) {
  double total = 0.0;
  for (const auto& s : samples) {
    const auto e = EmbedSample(params, s);
    total += PairLoss(Cosine(e.anchor, e.partner), s.role, s.weight, eps_clamp);
  }
  return total;
}

ModelParameters Backward(const ModelParameters& params,
                         std::span<const PairSample> samples,
                         double eps_clamp) {
  params.Validate();
  const std::size_t h = params.hidden_dim();
  ModelParameters grad = ModelParameters::Zeros(params.input_dim(), h);
  std::vector<double> du(h), dv(h);
  for (const auto& s : samples) {
    if (s.weight == 0.0) continue;
    const auto e = EmbedSample(params, s);
    const double c = CosineWithGradient(e.anchor, e.partner, du, dv);
    const double slope = PairLossSlope(c, s.role, s.weight, eps_clamp);
    if (slope == 0.0) continue;
    for (std::size_t j = 0; j < h; ++j) {
      du[j] *= slope;
      dv[j] *= slope;
    }
    AccumulateAffineGradient(s.anchor, du, grad.w1, grad.b1);
    if (s.role == PairRole::kEgoNegative) {
      AccumulateAffineGradient(s.partner, dv, grad.w1, grad.b1);
    } else {
      AccumulateAffineGradient(s.partner, dv, grad.w2, grad.b2);
    }
  }
  return grad;
}

}  // namespace anomatch
