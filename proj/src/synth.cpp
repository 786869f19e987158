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

#include "roadnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "roadnet/error.hpp"
#include "roadnet/forest.hpp"
#include "roadnet/sar.hpp"

namespace roadnet {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  bool chance(double p) { return unit() < p; }
  int between(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

 private:
  std::mt19937_64 eng_;
};

// Largest representable coordinate strictly below `hi`.
double below_edge(double hi) { return std::nextafter(hi, -std::numeric_limits<double>::infinity()); }

Point clamp_to(const BevFrame& f, Point p) {
  return {std::clamp(p.x, f.x_min, below_edge(f.x_max)), std::clamp(p.y, f.y_min, below_edge(f.y_max))};
}

class Placer {
 public:
  Placer(const BevFrame& frame, double spacing) : frame_(frame), spacing_(spacing) {}

  bool free(Point p) const {
    if (!frame_.contains(p)) return false;
    return std::none_of(placed_.begin(), placed_.end(),
                        [&](Point q) { return distance(p, q) < spacing_; });
  }
  void add(Point p) { placed_.push_back(p); }

 private:
  BevFrame frame_;
  double spacing_;
  std::vector<Point> placed_;
};

bool fits_capacity(const RoadNetwork& net) {
  const std::size_t kp = key_points(net).size();
  std::size_t roots = 0;
  const GraphIndex g(net);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) roots += g.in_edges(v).empty();
  const SarLayout layout;
  if (net.edges.size() + roots > 100 || net.edges.size() + kp > 100 || kp > layout.rows) return false;
  const SarTreeSet trees = split_sar(net);
  for (std::size_t r = 0; r < trees.tree_count(); ++r) {
    if (trees.tree_size(r) * 6 > layout.row_length) return false;
  }
  return true;
}

void check_config(const GenConfig& c) {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::kInvalidArgument, m); };
  if (!c.frame.problems().empty()) bad("invalid frame: " + c.frame.problems().front());
  if (c.min_trees < 1 || c.max_trees < c.min_trees) bad("tree count range must satisfy 1 <= min <= max");
  if (c.max_vertices < 1 || c.max_vertices > 100) bad("vertex cap must lie in [1, 100]");
  for (const double p : {c.branch_probability, c.merge_probability, c.continue_probability}) {
    if (!(p >= 0.0 && p <= 1.0)) bad("probabilities must lie in [0, 1]");
  }
  if (!(c.min_spacing >= 0.0) || !(c.min_step > 0.0) || c.max_step < c.min_step) bad("bad spacing or step range");
  if (!(c.ctrl_jitter >= 0.0) || c.max_attempts < 1) bad("bad jitter or attempt count");
}

RoadNetwork grow(const GenConfig& c, Rng& rng) {
  RoadNetwork net;
  net.frame = c.frame;
  // Keep distinct vertices in distinct cells.
  Placer placer(c.frame, std::max(c.min_spacing, 1.5 * c.frame.resolution));
  const int trees = rng.between(c.min_trees, c.max_trees);
  std::vector<std::size_t> queue;

  auto add_vertex = [&](Point p) {
    placer.add(p);
    net.vertices.push_back({VertexId{static_cast<std::int64_t>(net.vertices.size())}, p});
    return net.vertices.size() - 1;
  };
  auto add_edge = [&](std::size_t s, std::size_t t) {
    const Point a = net.vertices[s].pos, b = net.vertices[t].pos;
    Point mid{(a.x + b.x) / 2 + rng.uniform(-c.ctrl_jitter, c.ctrl_jitter),
              (a.y + b.y) / 2 + rng.uniform(-c.ctrl_jitter, c.ctrl_jitter)};
    if (!curve_encodable(c.frame, mid)) mid = {(a.x + b.x) / 2, (a.y + b.y) / 2};
    net.edges.push_back({net.vertices[s].id, net.vertices[t].id, mid});
  };

  const auto cap = static_cast<std::size_t>(c.max_vertices);
  for (int t = 0; t < trees && net.vertices.size() < cap; ++t) {
    for (int tries = 0; tries < 50; ++tries) {
      const Point p{rng.uniform(c.frame.x_min, c.frame.x_max), rng.uniform(c.frame.y_min, c.frame.y_max)};
      if (placer.free(p)) {
        queue.push_back(add_vertex(p));
        break;
      }
    }
  }
  if (net.vertices.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot place a single vertex");

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t v = queue[head];
    if (!rng.chance(c.continue_probability)) continue;
    const int children = rng.chance(c.branch_probability) ? rng.between(2, 3) : 1;
    for (int k = 0; k < children && net.vertices.size() < cap; ++k) {
      for (int tries = 0; tries < 20; ++tries) {
        const double ang = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double len = rng.uniform(c.min_step, c.max_step);
        const Point p{net.vertices[v].pos.x + len * std::cos(ang), net.vertices[v].pos.y + len * std::sin(ang)};
        if (!placer.free(p)) continue;
        const std::size_t w = add_vertex(p);
        add_edge(v, w);
        queue.push_back(w);
        break;
      }
    }
  }

  // Merges: leaf -> a later vertex, which keeps creation order topological.
  std::vector<bool> has_out(net.vertices.size(), false);
  for (const Edge& e : net.edges) has_out[static_cast<std::size_t>(e.source.value)] = true;
  for (std::size_t v = 0; v < net.vertices.size(); ++v) {
    if (has_out[v] || !rng.chance(c.merge_probability)) continue;
    std::vector<std::size_t> near;
    for (std::size_t w = v + 1; w < net.vertices.size(); ++w) {
      if (distance(net.vertices[v].pos, net.vertices[w].pos) <= 2.0 * c.max_step) near.push_back(w);
    }
    if (!near.empty()) add_edge(v, near[rng.below(near.size())]);
  }
  return net;
}

}  // namespace

RoadNetwork generate(const GenConfig& config) {
  check_config(config);
  Rng rng(config.seed);
  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    RoadNetwork net = grow(config, rng);
    if (fits_capacity(net)) return net;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "no network within codec capacity after " + std::to_string(config.max_attempts) + " attempts");
}

RoadNetwork perturb(const RoadNetwork& net, double noise, double drop_prob, std::uint64_t seed) {
  if (!(noise >= 0.0) || !(drop_prob >= 0.0 && drop_prob < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "perturb needs noise >= 0 and drop_prob in [0, 1)");
  }
  Rng rng(seed);
  RoadNetwork out;
  out.frame = net.frame;
  std::set<VertexId> kept;
  for (const Vertex& v : net.vertices) {
    const Point p = clamp_to(net.frame, {v.pos.x + rng.uniform(-noise, noise), v.pos.y + rng.uniform(-noise, noise)});
    if (drop_prob > 0.0 && rng.chance(drop_prob)) continue;
    out.vertices.push_back({v.id, p});
    kept.insert(v.id);
  }
  for (const Edge& e : net.edges) {
    Point ctrl{e.ctrl.x + rng.uniform(-noise, noise), e.ctrl.y + rng.uniform(-noise, noise)};
    if (!curve_encodable(net.frame, ctrl)) ctrl = e.ctrl;
    if (drop_prob > 0.0 && rng.chance(drop_prob)) continue;
    if (!kept.contains(e.source) || !kept.contains(e.target)) continue;
    out.edges.push_back({e.source, e.target, ctrl});
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SdMap generate_sdmap(const SdGenConfig& c) {
  if (c.min_nodes < 2 || c.max_nodes < c.min_nodes || c.max_nodes > 40) {
    throw Error(ErrorCode::kInvalidArgument, "SD-Map node range must satisfy 2 <= min <= max <= 40");
  }
  if (!c.frame.problems().empty()) throw Error(ErrorCode::kInvalidArgument, "invalid frame");
  Rng rng(c.seed);
  SdMap map;
  map.frame = c.frame;
  Placer placer(c.frame, std::max(c.min_spacing, 1.5 * c.frame.resolution));
  const int want = rng.between(c.min_nodes, c.max_nodes);
  for (int tries = 0; static_cast<int>(map.nodes.size()) < want && tries < 50 * want; ++tries) {
    const Point p{rng.uniform(c.frame.x_min, c.frame.x_max), rng.uniform(c.frame.y_min, c.frame.y_max)};
    if (!placer.free(p)) continue;
    placer.add(p);
    map.nodes.push_back({VertexId{static_cast<std::int64_t>(map.nodes.size())}, p});
  }
  const std::size_t n = map.nodes.size();
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "cannot place SD-Map nodes with this spacing");

  std::set<std::pair<std::size_t, std::size_t>> links;
  auto link = [&](std::size_t a, std::size_t b) {
    if (a != b) links.emplace(a, b);
  };
  if (c.strongly_connected) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    for (std::size_t i = 0; i < n; ++i) link(perm[i], perm[(i + 1) % n]);
  } else {
    for (std::size_t v = 1; v < n; ++v) {
      const std::size_t u = rng.below(v);
      link(u, v);
      if (rng.chance(c.two_way_probability)) link(v, u);
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && rng.chance(c.extra_link_probability)) link(a, b);
    }
  }
  for (const auto& [a, b] : links) map.links.push_back({map.nodes[a].id, map.nodes[b].id});
  return map;
}

}  // namespace roadnet
