// Copyright 2026 The roadnet-seq Authors
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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "roadnet/graph.hpp"

namespace roadnet {

// Raw tallies behind one precision/recall pair. Precision is tp / predictions;
// recall is the share of ground-truth items that received a within-threshold
// match, so several predictions on one ground truth never push recall past 1.
struct PrCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t predictions = 0;
  std::size_t ground_truth = 0;

  double precision() const;
  double recall() const;
  double f1() const;

  PrCounts& operator+=(const PrCounts& other);
};

double f1_score(double p, double r);

struct ThresholdScore {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  PrCounts counts;
};

struct PrCurve {
  std::vector<ThresholdScore> per_threshold;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_f1 = 0.0;
};

PrCurve make_curve(std::span<const double> thresholds, std::span<const PrCounts> counts);

std::vector<double> default_landmark_thresholds();      // 0.5, 1.0, ..., 5.0
std::vector<double> default_reachability_thresholds();  // 0.5, 1.0, ..., 2.5

struct MatchResult {
  double threshold = 0.0;
  // Prediction index -> nearest ground-truth vertex index (none when gt is empty).
  std::vector<std::optional<std::size_t>> pairs;
  std::vector<double> distances;
  std::vector<bool> pred_tp;
  std::vector<bool> gt_matched;
  PrCounts counts;
};

// Each prediction goes to its nearest ground-truth vertex (lowest index on
// ties); TP iff the distance is within the threshold.
MatchResult match_landmarks(const RoadNetwork& pred, const RoadNetwork& gt, double threshold);

PrCurve landmark_pr(const RoadNetwork& pred, const RoadNetwork& gt,
                    std::span<const double> thresholds);
PrCurve landmark_pr(const RoadNetwork& pred, const RoadNetwork& gt);

// Symmetric mean Chamfer distance. Throws kInvalidArgument on an empty input.
double chamfer(std::span<const Point> a, std::span<const Point> b);

struct ReachabilityConfig {
  int max_edges = 5;
  int samples_per_edge = 100;
};

// Reachability precision/recall. Predicted paths whose endpoints are not
// both landmark-matched at the threshold count as false positives.
PrCurve reachability_pr(const RoadNetwork& pred, const RoadNetwork& gt,
                        std::span<const double> thresholds, const ReachabilityConfig& config = {});
PrCurve reachability_pr(const RoadNetwork& pred, const RoadNetwork& gt);

struct MetricConfig {
  std::vector<double> landmark_thresholds = default_landmark_thresholds();
  std::vector<double> reachability_thresholds = default_reachability_thresholds();
  ReachabilityConfig reachability;
};

struct MetricCounts {
  std::size_t samples = 0;
  std::size_t pred_vertices = 0;
  std::size_t gt_vertices = 0;
  std::size_t pred_paths = 0;
  std::size_t gt_paths = 0;
};

struct MetricReport {
  PrCurve landmark;
  PrCurve reachability;
  MetricCounts counts;
};

MetricReport evaluate(const RoadNetwork& pred, const RoadNetwork& gt, const MetricConfig& config = {});

// Micro-averaged report over several samples: counts are summed per threshold.
MetricReport evaluate_batch(std::span<const RoadNetwork> pred, std::span<const RoadNetwork> gt,
                            const MetricConfig& config = {});

}  // namespace roadnet
