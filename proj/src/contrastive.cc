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

#include "anomatch/contrastive.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "anomatch/errors.h"

namespace anomatch {

NegativeAssignment SampleNegatives(std::span<const std::size_t> batch,
                                   Rng& neighbor_rng, Rng& ego_rng) {
  const std::size_t b = batch.size();
  if (b < 2) {
    throw ConfigError("negative sampling needs a batch of at least 2 nodes");
  }
  NegativeAssignment neg;
  neg.neighbor_shift = 1 + neighbor_rng.UniformIndex(b - 1);
  neg.ego_shift = 1 + ego_rng.UniformIndex(b - 1);
  neg.neighbor_partner.resize(b);
  neg.ego_partner.resize(b);
  for (std::size_t r = 0; r < b; ++r) {
    neg.neighbor_partner[r] = batch[(r + neg.neighbor_shift) % b];
    neg.ego_partner[r] = batch[(r + neg.ego_shift) % b];
  }
  return neg;
}

double AnchorLoss(double pos_hat, double neighbor_neg_hat, double ego_neg_hat,
                  const LossWeights& w) {
  auto clamp = [&](double v) {
    return std::clamp(v, w.eps_clamp, 1.0 - w.eps_clamp);
  };
  double loss = -std::log(clamp(pos_hat));
  if (w.alpha != 0.0) loss -= w.alpha * std::log(1.0 - clamp(neighbor_neg_hat));
  if (w.gamma != 0.0) loss -= w.gamma * std::log(1.0 - clamp(ego_neg_hat));
  return loss;
}

std::vector<PairSample> BatchPairs(const PreprocessedFeatures& prep,
                                   std::span<const std::size_t> batch,
                                   const NegativeAssignment& neg,
                                   const LossWeights& w) {
  std::vector<PairSample> pairs;
  pairs.reserve(3 * batch.size());
  for (std::size_t r = 0; r < batch.size(); ++r) {
    const std::size_t i = batch[r];
    pairs.push_back({prep.ego.row(i), prep.neighbor.row(i),
                     PairRole::kPositive, 1.0});
    pairs.push_back({prep.ego.row(i), prep.neighbor.row(neg.neighbor_partner[r]),
                     PairRole::kNeighborNegative, w.alpha});
    pairs.push_back({prep.ego.row(i), prep.ego.row(neg.ego_partner[r]),
                     PairRole::kEgoNegative, w.gamma});
  }
  return pairs;
}

namespace {

constexpr int kRoles = 3;

// Per-pair quantities kept between the forward and backward sweeps.
struct PairStats {
  double cosine = 0.0;
  double slope = 0.0;     // dL/dc
  double inv_norms = 0.0; // 1 / (|u| |v|)
};

struct BatchForward {
  Matrix ego_embed;       // |B| x d_h
  Matrix neighbor_embed;  // |B| x d_h
  std::vector<double> ego_sq;       // squared norms
  std::vector<double> neighbor_sq;
  std::vector<PairStats> pairs;     // 3 per anchor: pos, nbr, ego
  double loss = 0.0;
};

double DotRows(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

void CheckBatch(const ModelParameters& params, const PreprocessedFeatures& prep,
                std::span<const std::size_t> batch,
                const NegativeAssignment& neg) {
  params.Validate();
  if (prep.feature_dim() != params.input_dim() ||
      prep.neighbor.cols() != params.input_dim()) {
    throw ShapeError("feature dimension " +
                     std::to_string(prep.feature_dim()) +
                     " does not match model input dimension " +
                     std::to_string(params.input_dim()));
  }
  if (neg.neighbor_partner.size() != batch.size() ||
      neg.ego_partner.size() != batch.size()) {
    throw ShapeError("negative assignment does not match batch size");
  }
  for (std::size_t i : batch) {
    if (i >= prep.num_nodes()) throw ShapeError("batch index out of range");
  }
}

BatchForward Forward(const ModelParameters& params,
                     const PreprocessedFeatures& prep,
                     std::span<const std::size_t> batch,
                     const NegativeAssignment& neg, const LossWeights& w,
                     ExecutionMode mode) {
  const std::size_t b = batch.size();
  const std::size_t h = params.hidden_dim();
  BatchForward f;
  f.ego_embed = Matrix(b, h);
  f.neighbor_embed = Matrix(b, h);
  f.ego_sq.resize(b);
  f.neighbor_sq.resize(b);
  f.pairs.resize(kRoles * b);

#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < b; ++r) {
    auto he = f.ego_embed.row(r);
    auto hn = f.neighbor_embed.row(r);
    AffineInto(params.w1, params.b1, prep.ego.row(batch[r]), he);
    AffineInto(params.w2, params.b2, prep.neighbor.row(batch[r]), hn);
    f.ego_sq[r] = DotRows(he, he);
    f.neighbor_sq[r] = DotRows(hn, hn);
  }

  const std::size_t sn = neg.neighbor_shift % b;
  const std::size_t se = neg.ego_shift % b;
  const double weights[kRoles] = {1.0, w.alpha, w.gamma};
  const PairRole roles[kRoles] = {PairRole::kPositive,
                                  PairRole::kNeighborNegative,
                                  PairRole::kEgoNegative};
  std::vector<double> anchor_loss(b);

#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < b; ++r) {
    auto he = f.ego_embed.row(r);
    const double ue = f.ego_sq[r];
    const std::size_t pn = (r + sn) % b;
    const std::size_t pe = (r + se) % b;
    const std::span<const double> partners[kRoles] = {
        f.neighbor_embed.row(r), f.neighbor_embed.row(pn), f.ego_embed.row(pe)};
    const double partner_sq[kRoles] = {f.neighbor_sq[r], f.neighbor_sq[pn],
                                       f.ego_sq[pe]};
    double hats[kRoles];
    for (int t = 0; t < kRoles; ++t) {
      PairStats& s = f.pairs[kRoles * r + t];
      const double nu = std::sqrt(ue);
      const double nv = std::sqrt(partner_sq[t]);
      if (nu < kDegenerateNorm || nv < kDegenerateNorm) {
        s = {};
      } else {
        s.inv_norms = 1.0 / (nu * nv);
        s.cosine = std::clamp(DotRows(he, partners[t]) * s.inv_norms, -1.0, 1.0);
        s.slope = PairLossSlope(s.cosine, roles[t], weights[t], w.eps_clamp);
      }
      hats[t] = Remap(s.cosine);
    }
    anchor_loss[r] = AnchorLoss(hats[0], hats[1], hats[2], w);
  }

  double total = 0.0;
  if (mode == ExecutionMode::kFast) {
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::size_t r = 0; r < b; ++r) total += anchor_loss[r];
  } else {
    for (std::size_t r = 0; r < b; ++r) total += anchor_loss[r];
  }
  f.loss = total;
  return f;
}

// dst += slope * (other * inv - c * self / |self|^2).
void AddCosineGradient(std::span<double> dst, std::span<const double> self,
                       double self_sq, std::span<const double> other,
                       const PairStats& s) {
  if (s.slope == 0.0) return;
  const double a = s.slope * s.inv_norms;
  const double b = s.slope * s.cosine / self_sq;
  for (std::size_t j = 0; j < dst.size(); ++j) {
    dst[j] += a * other[j] - b * self[j];
  }
}

// grad_w = sum_r x[batch[r]]^T g[r], grad_b = sum_r g[r].
void ReduceAffineGradient(const Matrix& x, std::span<const std::size_t> batch,
                          const Matrix& g, Matrix& grad_w,
                          std::vector<double>& grad_b, ExecutionMode mode) {
  const std::size_t d = grad_w.rows();
  const std::size_t h = grad_w.cols();
  const std::size_t b = batch.size();
  grad_w.Fill(0.0);
  std::fill(grad_b.begin(), grad_b.end(), 0.0);

  if (mode == ExecutionMode::kDeterministic) {
    // Each weight row is owned by one thread and summed in batch order.
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < d; ++k) {
      auto row = grad_w.row(k);
      for (std::size_t r = 0; r < b; ++r) {
        const double xk = x(batch[r], k);
        if (xk == 0.0) continue;
        auto gr = g.row(r);
        for (std::size_t j = 0; j < h; ++j) row[j] += xk * gr[j];
      }
    }
    for (std::size_t r = 0; r < b; ++r) {
      auto gr = g.row(r);
      for (std::size_t j = 0; j < h; ++j) grad_b[j] += gr[j];
    }
    return;
  }

  // Per-thread partial sums over batch rows, merged afterwards.
  const int threads = MaxThreads();
  std::vector<Matrix> partial_w(threads, Matrix(d, h));
  std::vector<std::vector<double>> partial_b(threads,
                                             std::vector<double>(h, 0.0));
#pragma omp parallel
  {
    const int t = ThreadIndex();
    auto& pw = partial_w[t];
    auto& pb = partial_b[t];
#pragma omp for schedule(static)
    for (std::size_t r = 0; r < b; ++r) {
      auto xr = x.row(batch[r]);
      auto gr = g.row(r);
      for (std::size_t k = 0; k < d; ++k) {
        const double xk = xr[k];
        if (xk == 0.0) continue;
        auto row = pw.row(k);
        for (std::size_t j = 0; j < h; ++j) row[j] += xk * gr[j];
      }
      for (std::size_t j = 0; j < h; ++j) pb[j] += gr[j];
    }
  }
  for (int t = 0; t < threads; ++t) {
    auto dst = grad_w.values();
    auto src = partial_w[t].values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    for (std::size_t j = 0; j < h; ++j) grad_b[j] += partial_b[t][j];
  }
}

}  // namespace

double ContrastiveLoss(const ModelParameters& params,
                       const PreprocessedFeatures& prep,
                       std::span<const std::size_t> batch,
                       const NegativeAssignment& neg, const LossWeights& w,
                       ExecutionMode mode) {
  CheckBatch(params, prep, batch, neg);
  if (batch.empty()) return 0.0;
  return Forward(params, prep, batch, neg, w, mode).loss;
}

double ContrastiveLossAndGradient(const ModelParameters& params,
                                  const PreprocessedFeatures& prep,
                                  std::span<const std::size_t> batch,
                                  const NegativeAssignment& neg,
                                  const LossWeights& w, ModelParameters& grad,
                                  ExecutionMode mode) {
  CheckBatch(params, prep, batch, neg);
  const std::size_t d = params.input_dim();
  const std::size_t h = params.hidden_dim();
  if (grad.input_dim() != d || grad.hidden_dim() != h ||
      grad.b1.size() != h || grad.w2.rows() != d) {
    grad = ModelParameters::Zeros(d, h);
  }
  const std::size_t b = batch.size();
  if (b == 0) {
    grad = ModelParameters::Zeros(d, h);
    return 0.0;
  }
  const BatchForward f = Forward(params, prep, batch, neg, w, mode);
  const std::size_t sn = neg.neighbor_shift % b;
  const std::size_t se = neg.ego_shift % b;

  // Gather the embedding gradients row by row: each row collects the pairs
  // in which it appears as anchor or as partner.
  Matrix ego_grad(b, h);
  Matrix neighbor_grad(b, h);
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < b; ++r) {
    auto he = f.ego_embed.row(r);
    auto hn = f.neighbor_embed.row(r);
    const std::size_t pn = (r + sn) % b;
    const std::size_t pe = (r + se) % b;
    auto ge = ego_grad.row(r);
    // As anchor of its own three pairs.
    AddCosineGradient(ge, he, f.ego_sq[r], hn, f.pairs[kRoles * r + 0]);
    AddCosineGradient(ge, he, f.ego_sq[r], f.neighbor_embed.row(pn),
                      f.pairs[kRoles * r + 1]);
    AddCosineGradient(ge, he, f.ego_sq[r], f.ego_embed.row(pe),
                      f.pairs[kRoles * r + 2]);
    // As ego partner of anchor q with q + se = r.
    const std::size_t qe = (r + b - se) % b;
    AddCosineGradient(ge, he, f.ego_sq[r], f.ego_embed.row(qe),
                      f.pairs[kRoles * qe + 2]);

    auto gn = neighbor_grad.row(r);
    AddCosineGradient(gn, hn, f.neighbor_sq[r], he, f.pairs[kRoles * r + 0]);
    const std::size_t qn = (r + b - sn) % b;
    AddCosineGradient(gn, hn, f.neighbor_sq[r], f.ego_embed.row(qn),
                      f.pairs[kRoles * qn + 1]);
  }

  ReduceAffineGradient(prep.ego, batch, ego_grad, grad.w1, grad.b1, mode);
  ReduceAffineGradient(prep.neighbor, batch, neighbor_grad, grad.w2, grad.b2,
                       mode);
  return f.loss;
}

}  // namespace anomatch
