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

#include "anomatch/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "anomatch/errors.h"
#include "json.hpp"

namespace anomatch {

std::vector<double> Score(const ModelParameters& params,
                          const PreprocessedFeatures& prep) {
  params.Validate();
  if (prep.feature_dim() != params.input_dim() ||
      prep.neighbor.cols() != params.input_dim()) {
    throw ShapeError("checkpoint expects " +
                     std::to_string(params.input_dim()) +
                     " features, preprocessed data has " +
                     std::to_string(prep.feature_dim()));
  }
  const std::size_t n = prep.num_nodes();
  std::vector<double> scores(n);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = -PairwiseSimilarity(params, prep.ego.row(i),
                                    prep.neighbor.row(i));
  }
  return scores;
}

RocResult RocAuc(std::span<const double> scores, const LabelVector& labels) {
  if (scores.size() != labels.size()) {
    throw ShapeError("scores and labels differ in length");
  }
  std::uint64_t positives = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!std::isfinite(scores[i])) throw ShapeError("non-finite score");
    if (labels[i] > 1) throw MalformedInputError("labels must be 0 or 1");
    positives += labels[i];
  }
  const std::uint64_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw UndefinedMetricError(
        "ROC-AUC needs at least one anomaly and one normal node");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  // twice_u counts 2 per won (anomaly, normal) pair and 1 per tie, so the
  // statistic stays an exact integer.
  unsigned __int128 twice_u = 0;
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  RocResult result;
  result.points.push_back({0.0, 0.0});
  const double p = static_cast<double>(positives);
  const double nn = static_cast<double>(negatives);
  for (std::size_t start = 0; start < order.size();) {
    std::size_t end = start;
    std::uint64_t group_pos = 0;
    std::uint64_t group_neg = 0;
    while (end < order.size() && scores[order[end]] == scores[order[start]]) {
      if (labels[order[end]]) {
        ++group_pos;
      } else {
        ++group_neg;
      }
      ++end;
    }
    const std::uint64_t lower = negatives - fp - group_neg;
    twice_u += static_cast<unsigned __int128>(group_pos) *
               (2 * lower + group_neg);
    tp += group_pos;
    fp += group_neg;
    result.points.push_back({static_cast<double>(fp) / nn,
                             static_cast<double>(tp) / p});
    start = end;
  }
  result.auc = static_cast<double>(twice_u) / (2.0 * p * nn);
  return result;
}

double TrapezoidArea(std::span<const RocPoint> points) {
  double area = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    area += (points[i].fpr - points[i - 1].fpr) *
            (points[i].tpr + points[i - 1].tpr) * 0.5;
  }
  return area;
}

ScoreReport MakeReport(std::vector<double> scores,
                       std::optional<LabelVector> labels) {
  ScoreReport report;
  report.scores = std::move(scores);
  if (labels) {
    auto roc = RocAuc(report.scores, *labels);
    report.auc = roc.auc;
    report.roc_points = std::move(roc.points);
    report.labels = std::move(labels);
  }
  return report;
}

std::string MetricsJson(const ScoreReport& report,
                        const std::string& config_json) {
  nlohmann::ordered_json j;
  if (report.auc) j["auc"] = *report.auc;
  j["n"] = report.scores.size();
  if (report.labels) {
    j["anomalies"] = std::count(report.labels->begin(), report.labels->end(),
                                std::uint8_t{1});
  }
  auto pts = nlohmann::json::array();
  for (const auto& pt : report.roc_points) pts.push_back({pt.fpr, pt.tpr});
  j["roc_points"] = std::move(pts);
  if (!config_json.empty()) j["config"] = nlohmann::json::parse(config_json);
  return j.dump(2);
}

}  // namespace anomatch
