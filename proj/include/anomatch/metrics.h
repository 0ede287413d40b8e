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

#ifndef ANOMATCH_METRICS_H_
#define ANOMATCH_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anomatch/graph.h"
#include "anomatch/model.h"
#include "anomatch/preprocess.h"

namespace anomatch {

// s_i = -cos(h_e, h_n) of node i's own pair. Higher is more anomalous.
// One pass over the nodes, parallel across rows.
std::vector<double> Score(const ModelParameters& params,
                          const PreprocessedFeatures& prep);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocResult {
  double auc = 0.0;
  // From (0, 0) to (1, 1), one point per distinct score threshold.
  std::vector<RocPoint> points;
};

// Mann-Whitney AUC (ties across classes count one half) and the ROC curve,
// via a single descending sort. Throws UndefinedMetricError when labels
// hold only one class, ShapeError on length mismatch.
RocResult RocAuc(std::span<const double> scores, const LabelVector& labels);

// Area under a polyline by the trapezoidal rule.
double TrapezoidArea(std::span<const RocPoint> points);

struct ScoreReport {
  std::vector<double> scores;
  std::optional<LabelVector> labels;
  std::optional<double> auc;
  std::vector<RocPoint> roc_points;
};

// Fills auc and roc_points when labels are present.
ScoreReport MakeReport(std::vector<double> scores,
                       std::optional<LabelVector> labels);

// {"auc", "n", "anomalies", "roc_points": [[fpr, tpr], ...], "config"}.
// `config_json` is embedded verbatim as the "config" member when non-empty.
std::string MetricsJson(const ScoreReport& report,
                        const std::string& config_json = {});

}  // namespace anomatch

#endif  // ANOMATCH_METRICS_H_
