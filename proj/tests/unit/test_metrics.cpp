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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "roadnet/error.hpp"
#include "roadnet/metrics.hpp"
#include "test_support.hpp"

namespace roadnet {
namespace {

using test::make_net;

double brute_chamfer(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto one_way = [](const std::vector<Point>& p, const std::vector<Point>& q) {
    double sum = 0;
    for (const Point& x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& y : q) best = std::min(best, std::hypot(x.x - y.x, x.y - y.y));
      sum += best;
    }
    return sum / static_cast<double>(p.size());
  };
  return 0.5 * (one_way(a, b) + one_way(b, a));
}

void expect_perfect(const PrCurve& c) {
  for (const auto& s : c.per_threshold) {
    EXPECT_EQ(s.precision, 1.0) << s.threshold;
    EXPECT_EQ(s.recall, 1.0) << s.threshold;
    EXPECT_EQ(s.f1, 1.0) << s.threshold;
  }
  EXPECT_EQ(c.mean_f1, 1.0);
}

TEST(Thresholds, DefaultGrids) {
  const auto l = default_landmark_thresholds();
  ASSERT_EQ(l.size(), 10u);
  EXPECT_DOUBLE_EQ(l.front(), 0.5);
  EXPECT_DOUBLE_EQ(l.back(), 5.0);
  const auto r = default_reachability_thresholds();
  ASSERT_EQ(r.size(), 5u);
  EXPECT_DOUBLE_EQ(r.back(), 2.5);
}

TEST(Landmark, SelfMatchIsPerfect) {
  const auto net = test::corpus_graph(3);
  expect_perfect(landmark_pr(net, net));
}

TEST(Landmark, FarPredictionMisses) {
  const auto gt = make_net({{1, 0, 0}}, {});
  const auto pred = make_net({{1, 10, 0}}, {});
  const auto m = match_landmarks(pred, gt, 5.0);
  EXPECT_EQ(m.counts.tp, 0u);
  EXPECT_EQ(m.counts.precision(), 0.0);
  EXPECT_EQ(m.counts.recall(), 0.0);
}

TEST(Landmark, ManyToOneMatch) {
  const auto gt = make_net({{1, 0, 0}}, {});
  const auto pred = make_net({{1, 0.3, 0}, {2, -0.3, 0}}, {});
  const auto m = match_landmarks(pred, gt, 0.5);
  EXPECT_EQ(m.counts.tp, 2u);
  EXPECT_EQ(m.counts.fn, 0u);
  EXPECT_EQ(m.counts.precision(), 1.0);
  EXPECT_EQ(m.counts.recall(), 1.0);
}

TEST(Landmark, HandCountedOffsets) {
  const auto gt = make_net({{1, -30, 0}, {2, 0, 0}, {3, 30, 0}}, {});
  const auto pred = make_net({{1, -30, 0.4}, {2, 0, 1.2}, {3, 30, 6.0}}, {});
  const auto c = landmark_pr(pred, gt);
  // 0.4 counts from 0.5 m, 1.2 from 1.5 m, 6.0 never.
  const std::vector<std::size_t> want{1, 1, 2, 2, 2, 2, 2, 2, 2, 2};
  ASSERT_EQ(c.per_threshold.size(), want.size());
  for (std::size_t k = 0; k < want.size(); ++k) {
    EXPECT_EQ(c.per_threshold[k].counts.tp, want[k]) << k;
    EXPECT_EQ(c.per_threshold[k].counts.fn, 3 - want[k]) << k;
  }
}

TEST(Landmark, EmptyConventions) {
  const auto gt = make_net({{1, 0, 0}}, {});
  const auto m = match_landmarks(RoadNetwork{}, gt, 1.0);
  EXPECT_EQ(m.counts.precision(), 0.0);
  EXPECT_EQ(m.counts.recall(), 0.0);
  const auto both = match_landmarks(RoadNetwork{}, RoadNetwork{}, 1.0);
  EXPECT_EQ(both.counts.precision(), 1.0);
  EXPECT_EQ(both.counts.recall(), 1.0);
  EXPECT_FALSE(match_landmarks(gt, RoadNetwork{}, 1.0).pairs[0].has_value());
}

TEST(Chamfer, IdenticalIsZero) {
  const std::vector<Point> a{{0, 0}, {1, 1}, {2, 3}};
  EXPECT_EQ(chamfer(a, a), 0.0);
}

TEST(Chamfer, ParallelOffset) {
  std::vector<Point> a, b;
  for (int i = 0; i <= 100; ++i) {
    a.push_back({i * 0.1, 0});
    b.push_back({i * 0.1, 1.7});
  }
  EXPECT_NEAR(chamfer(a, b), 1.7, 1e-12);
}

TEST(Chamfer, ThreeVersusTwoPoints) {
  const std::vector<Point> a{{0, 0}, {1, 0}, {2, 0}}, b{{0, 1}, {2, 1}};
  EXPECT_NEAR(chamfer(a, b), 0.5 * ((2 + std::sqrt(2.0)) / 3 + 1), 1e-12);
}

TEST(Chamfer, MatchesBruteForceOnRandomClouds) {
  std::uint64_t s = 17;
  auto u = [&s] {
    s = derive_seed(s, 3);
    return static_cast<double>(s >> 11) * 0x1.0p-53;
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> a, b;
    const int na = 1 + trial % 37, nb = 1 + (trial * 7) % 53;
    const double scale = trial % 2 ? 0.05 : 80.0;
    for (int i = 0; i < na; ++i) a.push_back({u() * scale - 40, u() * scale});
    for (int i = 0; i < nb; ++i) b.push_back({u() * scale, u() * scale - 20});
    EXPECT_NEAR(chamfer(a, b), brute_chamfer(a, b), 1e-9);
  }
  EXPECT_THROW(chamfer(std::vector<Point>{}, std::vector<Point>{{0, 0}}), Error);
}

TEST(Reachability, SelfMatchIsPerfect) {
  for (std::size_t i = 0; i < 5; ++i) {
    const auto net = test::corpus_graph(i);
    expect_perfect(reachability_pr(net, net));
  }
}

TEST(Reachability, MissingBranchCountsAsFalseNegatives) {
  const auto gt = make_net({{1, 0, 0}, {2, 10, 8}, {3, 10, -8}, {4, 20, 0}}, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
  const auto pred = make_net({{1, 0, 0}, {3, 10, -8}, {4, 20, 0}}, {{1, 3}, {3, 4}});
  // gt paths: 1-2, 2-4, 1-3, 3-4, 1-2-4, 1-3-4; only the three through 3 survive.
  for (const auto& s : reachability_pr(pred, gt).per_threshold) {
    EXPECT_EQ(s.counts.ground_truth, 6u);
    EXPECT_EQ(s.counts.fn, 3u);
    EXPECT_EQ(s.counts.tp, 3u);
    EXPECT_EQ(s.counts.fp, 0u);
  }
  // Dropping only the edge 2 -> 4 loses 2-4 and 1-2-4.
  const auto pred2 = make_net({{1, 0, 0}, {2, 10, 8}, {3, 10, -8}, {4, 20, 0}}, {{1, 2}, {1, 3}, {3, 4}});
  for (const auto& s : reachability_pr(pred2, gt).per_threshold) EXPECT_EQ(s.counts.fn, 2u);
}

TEST(Reachability, DetouredPathIsFalsePositive) {
  // Two routes from 1 to 4; the predicted detour runs 10 m wide of the real one.
  const auto gt = make_net({{1, 0, 0}, {2, 10, 5}, {4, 20, 0}}, {{1, 4}, {1, 2}, {2, 4}});
  const auto pred = make_net({{1, 0, 0}, {2, 10, 15}, {4, 20, 0}}, {{1, 4}, {1, 2}, {2, 4}});
  for (const auto& s : reachability_pr(pred, gt).per_threshold) {
    EXPECT_EQ(s.counts.predictions, 4u);
    EXPECT_EQ(s.counts.tp, 1u) << s.threshold;
    EXPECT_EQ(s.counts.fp, 3u);
    EXPECT_EQ(s.counts.fn, 3u);
  }
}

TEST(Reachability, EmptyConventions) {
  const auto chain = make_net({{1, 0, 0}, {2, 5, 0}}, {{1, 2}});
  const auto iso = make_net({{1, 0, 0}}, {});
  const auto both = reachability_pr(iso, iso);
  EXPECT_EQ(both.mean_f1, 1.0);
  const auto none = reachability_pr(iso, chain);
  EXPECT_EQ(none.mean_precision, 0.0);
  EXPECT_EQ(none.mean_recall, 0.0);
}

TEST(Metrics, MonotoneInThreshold) {
  for (std::size_t i = 0; i < 40; ++i) {
    const auto gt = test::corpus_graph(i);
    const auto pred = perturb(gt, 1.5, 0.1, i);
    const auto r = evaluate(pred, gt);
    for (const PrCurve* c : {&r.landmark, &r.reachability}) {
      for (std::size_t k = 1; k < c->per_threshold.size(); ++k) {
        EXPECT_GE(c->per_threshold[k].precision, c->per_threshold[k - 1].precision - 1e-12);
        EXPECT_GE(c->per_threshold[k].recall, c->per_threshold[k - 1].recall - 1e-12);
      }
    }
  }
}

TEST(Metrics, BatchIsMicroAveraged) {
  const auto a = test::corpus_graph(1), b = test::corpus_graph(2);
  const auto pa = perturb(a, 1.0, 0.2, 5), pb = perturb(b, 1.0, 0.2, 6);
  const std::vector<RoadNetwork> preds{pa, pb}, gts{a, b};
  const auto batch = evaluate_batch(preds, gts);
  const auto ra = evaluate(pa, a), rb = evaluate(pb, b);
  EXPECT_EQ(batch.counts.samples, 2u);
  for (std::size_t k = 0; k < batch.landmark.per_threshold.size(); ++k) {
    PrCounts sum = ra.landmark.per_threshold[k].counts;
    sum += rb.landmark.per_threshold[k].counts;
    EXPECT_EQ(batch.landmark.per_threshold[k].counts.tp, sum.tp);
    EXPECT_DOUBLE_EQ(batch.landmark.per_threshold[k].precision, sum.precision());
  }
  EXPECT_THROW(evaluate_batch(preds, std::vector<RoadNetwork>{a}), Error);
}

}  // namespace
}  // namespace roadnet
