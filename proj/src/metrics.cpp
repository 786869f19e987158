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

#include "roadnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "roadnet/error.hpp"

namespace roadnet {

double f1_score(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

double PrCounts::precision() const {
  if (predictions == 0) return ground_truth == 0 ? 1.0 : 0.0;
  return static_cast<double>(tp) / static_cast<double>(predictions);
}

double PrCounts::recall() const {
  if (ground_truth == 0) return predictions == 0 ? 1.0 : 0.0;
  return static_cast<double>(ground_truth - fn) / static_cast<double>(ground_truth);
}

double PrCounts::f1() const { return f1_score(precision(), recall()); }

PrCounts& PrCounts::operator+=(const PrCounts& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  predictions += o.predictions;
  ground_truth += o.ground_truth;
  return *this;
}

PrCurve make_curve(std::span<const double> thresholds, std::span<const PrCounts> counts) {
  PrCurve c;
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    const PrCounts& k = counts[i];
    c.per_threshold.push_back({thresholds[i], k.precision(), k.recall(), k.f1(), k});
    c.mean_precision += k.precision();
    c.mean_recall += k.recall();
    c.mean_f1 += k.f1();
  }
  if (!thresholds.empty()) {
    const double n = static_cast<double>(thresholds.size());
    c.mean_precision /= n;
    c.mean_recall /= n;
    c.mean_f1 /= n;
  }
  return c;
}

namespace {

std::vector<double> steps(int count) {
  std::vector<double> out;
  for (int i = 1; i <= count; ++i) out.push_back(0.5 * i);
  return out;
}

void check_thresholds(std::span<const double> thresholds) {
  if (thresholds.empty()) throw Error(ErrorCode::kInvalidArgument, "threshold list is empty");
  for (const double t : thresholds) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw Error(ErrorCode::kInvalidArgument, "thresholds must be positive and finite");
    }
  }
}

struct Nearest {
  std::vector<std::optional<std::size_t>> index;
  std::vector<double> dist;
};

Nearest nearest_vertices(const RoadNetwork& pred, const RoadNetwork& gt) {
  Nearest n;
  for (const Vertex& p : pred.vertices) {
    std::optional<std::size_t> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < gt.vertices.size(); ++j) {
      const double d = distance(p.pos, gt.vertices[j].pos);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    n.index.push_back(best);
    n.dist.push_back(best_d);
  }
  return n;
}

MatchResult match_with(const Nearest& n, std::size_t gt_size, double t) {
  MatchResult m;
  m.threshold = t;
  m.pairs = n.index;
  m.distances = n.dist;
  m.gt_matched.assign(gt_size, false);
  for (std::size_t i = 0; i < n.index.size(); ++i) {
    const bool tp = n.index[i] && n.dist[i] <= t;
    m.pred_tp.push_back(tp);
    if (tp) {
      ++m.counts.tp;
      m.gt_matched[*n.index[i]] = true;
    } else {
      ++m.counts.fp;
    }
  }
  m.counts.predictions = n.index.size();
  m.counts.ground_truth = gt_size;
  m.counts.fn = static_cast<std::size_t>(std::count(m.gt_matched.begin(), m.gt_matched.end(), false));
  return m;
}

// Uniform bucket grid for nearest-neighbour queries.
class PointGrid {
 public:
  explicit PointGrid(std::span<const Point> pts, double cell = 1.0) : cell_(cell) {
    for (const Point& p : pts) {
      const auto [cx, cy] = cell_of(p);
      lo_x_ = std::min(lo_x_, cx);
      hi_x_ = std::max(hi_x_, cx);
      lo_y_ = std::min(lo_y_, cy);
      hi_y_ = std::max(hi_y_, cy);
      buckets_[key(cx, cy)].push_back(p);
    }
  }

  double nearest(Point q) const {
    const auto [qx, qy] = cell_of(q);
    const long max_r = std::max({std::abs(qx - lo_x_), std::abs(qx - hi_x_), std::abs(qy - lo_y_),
                                 std::abs(qy - hi_y_)});
    double best = std::numeric_limits<double>::infinity();
    for (long r = 0; r <= max_r; ++r) {
      for (long dx = -r; dx <= r; ++dx) {
        const bool edge_col = dx == -r || dx == r;
        for (long dy = -r; dy <= r; dy += edge_col ? 1 : 2 * r) {
          scan(qx + dx, qy + dy, q, best);
          if (r == 0) break;
        }
      }
      if (best <= static_cast<double>(r) * cell_) break;
    }
    return best;
  }

 private:
  std::pair<long, long> cell_of(Point p) const {
    return {static_cast<long>(std::floor(p.x / cell_)), static_cast<long>(std::floor(p.y / cell_))};
  }
  static std::int64_t key(long x, long y) {
    return (static_cast<std::int64_t>(x) << 32) ^ static_cast<std::int64_t>(static_cast<std::uint32_t>(y));
  }
  void scan(long x, long y, Point q, double& best) const {
    const auto it = buckets_.find(key(x, y));
    if (it == buckets_.end()) return;
    for (const Point& p : it->second) best = std::min(best, distance(p, q));
  }

  double cell_;
  long lo_x_ = std::numeric_limits<long>::max();
  long hi_x_ = std::numeric_limits<long>::min();
  long lo_y_ = std::numeric_limits<long>::max();
  long hi_y_ = std::numeric_limits<long>::min();
  std::unordered_map<std::int64_t, std::vector<Point>> buckets_;
};

double mean_nearest(std::span<const Point> from, const PointGrid& to) {
  double sum = 0.0;
  for (const Point& p : from) sum += to.nearest(p);
  return sum / static_cast<double>(from.size());
}

struct SampledPath {
  std::vector<Point> points;
  PointGrid grid;

  explicit SampledPath(std::vector<Point> pts) : points(std::move(pts)), grid(points) {}
};

double chamfer(const SampledPath& a, const SampledPath& b) {
  return 0.5 * (mean_nearest(a.points, b.grid) + mean_nearest(b.points, a.grid));
}

class PathSampler {
 public:
  PathSampler(const RoadNetwork& net, int samples_per_edge) {
    std::unordered_map<VertexId, Point> pos;
    for (const Vertex& v : net.vertices) pos.emplace(v.id, v.pos);
    for (const Edge& e : net.edges) {
      edges_.push_back(sample_edge(e, pos.at(e.source), pos.at(e.target), samples_per_edge));
    }
  }

  SampledPath sample(const Path& path) const {
    std::vector<Point> out;
    for (std::size_t k = 0; k < path.edges.size(); ++k) {
      const auto& pts = edges_[path.edges[k]];
      out.insert(out.end(), pts.begin() + (k == 0 ? 0 : 1), pts.end());
    }
    return SampledPath(std::move(out));
  }

 private:
  std::vector<std::vector<Point>> edges_;
};

}  // namespace

std::vector<double> default_landmark_thresholds() { return steps(10); }
std::vector<double> default_reachability_thresholds() { return steps(5); }

MatchResult match_landmarks(const RoadNetwork& pred, const RoadNetwork& gt, double threshold) {
  check_thresholds(std::span<const double>(&threshold, 1));
  return match_with(nearest_vertices(pred, gt), gt.vertices.size(), threshold);
}

namespace {

std::vector<PrCounts> landmark_counts(const RoadNetwork& pred, const RoadNetwork& gt,
                                      std::span<const double> thresholds) {
  check_thresholds(thresholds);
  const Nearest n = nearest_vertices(pred, gt);
  std::vector<PrCounts> out;
  for (const double t : thresholds) out.push_back(match_with(n, gt.vertices.size(), t).counts);
  return out;
}

struct ReachCounts {
  std::vector<PrCounts> per_threshold;
  std::size_t pred_paths = 0;
  std::size_t gt_paths = 0;
};

ReachCounts reachability_counts(const RoadNetwork& pred, const RoadNetwork& gt,
                                std::span<const double> thresholds, const ReachabilityConfig& cfg) {
  check_thresholds(thresholds);
  if (cfg.max_edges < 1 || cfg.samples_per_edge < 2) {
    throw Error(ErrorCode::kInvalidArgument, "max_edges >= 1 and samples_per_edge >= 2 required");
  }
  const GraphIndex gi(gt);
  const Nearest near = nearest_vertices(pred, gt);
  const GraphIndex pi(pred);

  // Ground-truth paths grouped by endpoint pair, with a global index each.
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::vector<Path>>> gt_sets;
  std::size_t gt_total = 0;
  for (PathSet& s : all_paths(gt, cfg.max_edges)) {
    const std::size_t n = s.paths.size();
    gt_sets.emplace(std::make_pair(gi.at(s.source), gi.at(s.target)),
                    std::make_pair(gt_total, std::move(s.paths)));
    gt_total += n;
  }

  const PathSampler gt_sampler(gt, cfg.samples_per_edge);
  const PathSampler pred_sampler(pred, cfg.samples_per_edge);
  std::map<std::size_t, SampledPath> gt_cache;

  // Per predicted path: the threshold it needs to be a TP and the gt path it claims.
  struct Claim {
    double need;
    std::size_t gt_path;
  };
  std::vector<Claim> claims;
  const double inf = std::numeric_limits<double>::infinity();
  for (const PathSet& s : all_paths(pred, cfg.max_edges)) {
    const std::size_t ps = pi.at(s.source);
    const std::size_t pt = pi.at(s.target);
    const auto a = near.index[ps];
    const auto b = near.index[pt];
    const auto it = (a && b) ? gt_sets.find({*a, *b}) : gt_sets.end();
    if (it == gt_sets.end()) {
      for (std::size_t k = 0; k < s.paths.size(); ++k) claims.push_back({inf, 0});
      continue;
    }
    const double endpoint = std::max(near.dist[ps], near.dist[pt]);
    const auto& [base, candidates] = it->second;
    for (const Path& p : s.paths) {
      const SampledPath sp = pred_sampler.sample(p);
      double best = inf;
      std::size_t best_k = 0;
      for (std::size_t k = 0; k < candidates.size(); ++k) {
        auto c = gt_cache.find(base + k);
        if (c == gt_cache.end()) c = gt_cache.emplace(base + k, gt_sampler.sample(candidates[k])).first;
        const double d = chamfer(sp, c->second);
        if (d < best) {
          best = d;
          best_k = k;
        }
      }
      claims.push_back({std::max(endpoint, best), base + best_k});
    }
  }

  ReachCounts out;
  out.pred_paths = claims.size();
  out.gt_paths = gt_total;
  for (const double t : thresholds) {
    PrCounts c;
    c.predictions = claims.size();
    c.ground_truth = gt_total;
    std::vector<bool> matched(gt_total, false);
    for (const Claim& cl : claims) {
      if (cl.need <= t) {
        ++c.tp;
        matched[cl.gt_path] = true;
      } else {
        ++c.fp;
      }
    }
    c.fn = static_cast<std::size_t>(std::count(matched.begin(), matched.end(), false));
    out.per_threshold.push_back(c);
  }
  return out;
}

}  // namespace

PrCurve landmark_pr(const RoadNetwork& pred, const RoadNetwork& gt,
                    std::span<const double> thresholds) {
  const auto counts = landmark_counts(pred, gt, thresholds);
  return make_curve(thresholds, counts);
}

PrCurve landmark_pr(const RoadNetwork& pred, const RoadNetwork& gt) {
  const auto t = default_landmark_thresholds();
  return landmark_pr(pred, gt, t);
}

double chamfer(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kInvalidArgument, "chamfer of an empty polyline");
  const PointGrid ga(a), gb(b);
  return 0.5 * (mean_nearest(a, gb) + mean_nearest(b, ga));
}

PrCurve reachability_pr(const RoadNetwork& pred, const RoadNetwork& gt,
                        std::span<const double> thresholds, const ReachabilityConfig& config) {
  const auto counts = reachability_counts(pred, gt, thresholds, config);
  return make_curve(thresholds, counts.per_threshold);
}

PrCurve reachability_pr(const RoadNetwork& pred, const RoadNetwork& gt) {
  const auto t = default_reachability_thresholds();
  return reachability_pr(pred, gt, t);
}

MetricReport evaluate(const RoadNetwork& pred, const RoadNetwork& gt, const MetricConfig& config) {
  return evaluate_batch(std::span<const RoadNetwork>(&pred, 1), std::span<const RoadNetwork>(&gt, 1),
                        config);
}

MetricReport evaluate_batch(std::span<const RoadNetwork> pred, std::span<const RoadNetwork> gt,
                            const MetricConfig& config) {
  if (pred.size() != gt.size()) {
    throw Error(ErrorCode::kInvalidArgument, "prediction and ground-truth counts differ");
  }
  std::vector<PrCounts> land(config.landmark_thresholds.size());
  std::vector<PrCounts> reach(config.reachability_thresholds.size());
  MetricReport report;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const auto l = landmark_counts(pred[i], gt[i], config.landmark_thresholds);
    const auto r = reachability_counts(pred[i], gt[i], config.reachability_thresholds,
                                       config.reachability);
    for (std::size_t k = 0; k < land.size(); ++k) land[k] += l[k];
    for (std::size_t k = 0; k < reach.size(); ++k) reach[k] += r.per_threshold[k];
    ++report.counts.samples;
    report.counts.pred_vertices += pred[i].vertices.size();
    report.counts.gt_vertices += gt[i].vertices.size();
    report.counts.pred_paths += r.pred_paths;
    report.counts.gt_paths += r.gt_paths;
  }
  report.landmark = make_curve(config.landmark_thresholds, land);
  report.reachability = make_curve(config.reachability_thresholds, reach);
  return report;
}

}  // namespace roadnet
