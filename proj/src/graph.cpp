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

#include "roadnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "roadnet/error.hpp"

namespace roadnet {

std::string_view violation_kind_name(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kBadFrame: return "bad_frame";
    case ViolationKind::kDuplicateVertex: return "duplicate_vertex";
    case ViolationKind::kVertexOutsideFrame: return "vertex_outside_frame";
    case ViolationKind::kNonFinite: return "non_finite";
    case ViolationKind::kSelfLoop: return "self_loop";
    case ViolationKind::kDanglingReference: return "dangling_reference";
    case ViolationKind::kDuplicateEdge: return "duplicate_edge";
    case ViolationKind::kCurveOutOfRange: return "curve_out_of_range";
    case ViolationKind::kCycle: return "cycle";
  }
  return "unknown";
}

namespace {

std::string id_str(VertexId id) { return std::to_string(id.value); }

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Tarjan's SCC over an adjacency list; returns components with > 1 vertex.
std::vector<std::vector<std::size_t>> cyclic_components(
    const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < adj[f.v].size()) {
        const std::size_t w = adj[f.v][f.next++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::size_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        if (comp.size() > 1) {
          std::sort(comp.begin(), comp.end());
          out.push_back(std::move(comp));
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Violation> validate(const RoadNetwork& net) {
  std::vector<Violation> out;
  for (auto& p : net.frame.problems()) out.push_back({ViolationKind::kBadFrame, p, {}});
  const bool frame_ok = out.empty();

  std::unordered_map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < net.vertices.size(); ++i) {
    const Vertex& v = net.vertices[i];
    if (!index.emplace(v.id, i).second) {
      out.push_back({ViolationKind::kDuplicateVertex, "duplicate vertex id " + id_str(v.id), {v.id}});
    }
    if (!finite(v.pos)) {
      out.push_back({ViolationKind::kNonFinite, "vertex " + id_str(v.id) + " has a non-finite position", {v.id}});
    } else if (frame_ok && !net.frame.contains(v.pos)) {
      out.push_back({ViolationKind::kVertexOutsideFrame, "vertex " + id_str(v.id) + " lies outside the frame", {v.id}});
    }
  }

  std::vector<std::vector<std::size_t>> adj(net.vertices.size());
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (const Edge& e : net.edges) {
    const std::string name = id_str(e.source) + "->" + id_str(e.target);
    const auto s = index.find(e.source);
    const auto t = index.find(e.target);
    if (s == index.end() || t == index.end()) {
      std::vector<VertexId> missing;
      if (s == index.end()) missing.push_back(e.source);
      if (t == index.end()) missing.push_back(e.target);
      out.push_back({ViolationKind::kDanglingReference, "edge " + name + " references an unknown vertex", missing});
      continue;
    }
    if (e.source == e.target) {
      out.push_back({ViolationKind::kSelfLoop, "self-loop on vertex " + id_str(e.source), {e.source}});
      continue;
    }
    if (!seen.emplace(e.source.value, e.target.value).second) {
      out.push_back({ViolationKind::kDuplicateEdge, "duplicate edge " + name, {e.source, e.target}});
      continue;
    }
    if (!finite(e.ctrl)) {
      out.push_back({ViolationKind::kNonFinite, "edge " + name + " has a non-finite control point", {e.source, e.target}});
    } else if (frame_ok && !curve_encodable(net.frame, e.ctrl)) {
      out.push_back({ViolationKind::kCurveOutOfRange, "edge " + name + " control point outside [-10, 210) cells", {e.source, e.target}});
    }
    adj[s->second].push_back(t->second);
  }

  for (const auto& comp : cyclic_components(adj)) {
    Violation v{ViolationKind::kCycle, "cycle among vertices {", {}};
    for (std::size_t k = 0; k < comp.size(); ++k) {
      const VertexId id = net.vertices[comp[k]].id;
      v.vertices.push_back(id);
      v.message += (k ? "," : "") + id_str(id);
    }
    v.message += "}";
    out.push_back(std::move(v));
  }
  return out;
}

void require_valid(const RoadNetwork& net) {
  const auto problems = validate(net);
  if (!problems.empty()) {
    std::string location;
    if (!problems.front().vertices.empty()) {
      location = "vertex " + id_str(problems.front().vertices.front());
    }
    throw Error(ErrorCode::kInvalidGraph, std::string(violation_kind_name(problems.front().kind)) +
                                              ": " + problems.front().message,
                location);
  }
}

GraphIndex::GraphIndex(const RoadNetwork& net)
    : net_(&net), out_(net.vertices.size()), in_(net.vertices.size()) {
  index_.reserve(net.vertices.size());
  for (std::size_t i = 0; i < net.vertices.size(); ++i) index_.emplace(net.vertices[i].id, i);
  src_.reserve(net.edges.size());
  dst_.reserve(net.edges.size());
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    const std::size_t s = at(net.edges[e].source);
    const std::size_t t = at(net.edges[e].target);
    src_.push_back(s);
    dst_.push_back(t);
    out_[s].push_back(e);
    in_[t].push_back(e);
  }
}

std::optional<std::size_t> GraphIndex::find(VertexId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GraphIndex::at(VertexId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown vertex id " + id_str(id));
  }
  return it->second;
}

std::vector<VertexId> key_points(const RoadNetwork& net) {
  const GraphIndex g(net);
  std::vector<VertexId> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const std::size_t in = g.in_edges(v).size();
    const std::size_t od = g.out_edges(v).size();
    if (od > 1 || in > 1 || in == 0) out.push_back(net.vertices[v].id);
  }
  return out;
}

namespace {

// Depth-first walk of all simple paths out of `src` with at most
// `max_edges` edges; `visit` is called with every (path, end vertex).
template <class Visit>
void walk_paths(const GraphIndex& g, std::size_t src, int max_edges, Visit&& visit) {
  std::vector<bool> on_path(g.vertex_count(), false);
  std::vector<std::size_t> edges;
  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  std::vector<Frame> stack{{src, 0}};
  on_path[src] = true;
  while (!stack.empty()) {
    Frame& f = stack.back();
    const auto& outs = g.out_edges(f.v);
    if (static_cast<int>(edges.size()) < max_edges && f.next < outs.size()) {
      const std::size_t e = outs[f.next++];
      const std::size_t w = g.target_of(e);
      if (on_path[w]) continue;
      edges.push_back(e);
      on_path[w] = true;
      visit(edges, w);
      stack.push_back({w, 0});
      continue;
    }
    on_path[f.v] = false;
    stack.pop_back();
    if (!edges.empty()) edges.pop_back();
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const RoadNetwork& net, VertexId src, VertexId dst,
                                  int max_edges) {
  if (max_edges < 1) throw Error(ErrorCode::kInvalidArgument, "max_edges must be at least 1");
  const GraphIndex g(net);
  const std::size_t s = g.at(src);
  const std::size_t t = g.at(dst);
  std::vector<Path> out;
  walk_paths(g, s, max_edges, [&](const std::vector<std::size_t>& edges, std::size_t end) {
    if (end == t) out.push_back(Path{edges});
  });
  return out;
}

std::vector<PathSet> all_paths(const RoadNetwork& net, int max_edges) {
  if (max_edges < 1) throw Error(ErrorCode::kInvalidArgument, "max_edges must be at least 1");
  const GraphIndex g(net);
  std::vector<PathSet> out;
  for (std::size_t s = 0; s < g.vertex_count(); ++s) {
    std::map<std::size_t, std::vector<Path>> by_target;
    walk_paths(g, s, max_edges, [&](const std::vector<std::size_t>& edges, std::size_t end) {
      by_target[end].push_back(Path{edges});
    });
    for (auto& [t, paths] : by_target) {
      out.push_back({net.vertices[s].id, net.vertices[t].id, std::move(paths)});
    }
  }
  return out;
}

std::vector<Point> sample_edge(const Edge& edge, Point source, Point target, int n) {
  return sample_bezier(source, edge.ctrl, target, n);
}

std::vector<Point> sample_edge(const RoadNetwork& net, const Edge& edge, int n) {
  const GraphIndex g(net);
  return sample_edge(edge, net.vertices[g.at(edge.source)].pos,
                     net.vertices[g.at(edge.target)].pos, n);
}

std::vector<Point> path_polyline(const RoadNetwork& net, const Path& path, int samples_per_edge) {
  std::unordered_map<VertexId, Point> pos;
  pos.reserve(net.vertices.size());
  for (const Vertex& v : net.vertices) pos.emplace(v.id, v.pos);
  std::vector<Point> out;
  for (std::size_t k = 0; k < path.edges.size(); ++k) {
    const Edge& e = net.edges.at(path.edges[k]);
    auto pts = sample_edge(e, pos.at(e.source), pos.at(e.target), samples_per_edge);
    out.insert(out.end(), pts.begin() + (k == 0 ? 0 : 1), pts.end());
  }
  return out;
}

namespace {

bool close(Point a, Point b, double tol) {
  return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

struct IsoState {
  const RoadNetwork& a;
  const RoadNetwork& b;
  const GraphIndex ga;
  const GraphIndex gb;
  double tol;
  std::map<std::pair<std::size_t, std::size_t>, Point> b_edges;
  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> order;
  std::vector<std::size_t> map_ab;
  std::vector<bool> used_b;
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  IsoState(const RoadNetwork& a_, const RoadNetwork& b_, double t)
      : a(a_), b(b_), ga(a_), gb(b_), tol(t) {
    for (std::size_t e = 0; e < b.edges.size(); ++e) {
      b_edges.emplace(std::make_pair(gb.source_of(e), gb.target_of(e)), b.edges[e].ctrl);
    }
  }

  // Every a-edge between mapped vertices must exist in b with a close
  // control point; equal edge counts then make the map edge-bijective.
  bool consistent(std::size_t va) const {
    for (const std::size_t e : ga.out_edges(va)) {
      const std::size_t w = ga.target_of(e);
      if (map_ab[w] == kNone) continue;
      const auto it = b_edges.find({map_ab[va], map_ab[w]});
      if (it == b_edges.end() || !close(it->second, a.edges[e].ctrl, tol)) return false;
    }
    for (const std::size_t e : ga.in_edges(va)) {
      const std::size_t u = ga.source_of(e);
      if (map_ab[u] == kNone) continue;
      const auto it = b_edges.find({map_ab[u], map_ab[va]});
      if (it == b_edges.end() || !close(it->second, a.edges[e].ctrl, tol)) return false;
    }
    return true;
  }

  bool search(std::size_t depth) {
    if (depth == order.size()) return true;
    const std::size_t va = order[depth];
    for (const std::size_t vb : candidates[va]) {
      if (used_b[vb]) continue;
      map_ab[va] = vb;
      used_b[vb] = true;
      if (consistent(va) && search(depth + 1)) return true;
      used_b[vb] = false;
      map_ab[va] = kNone;
    }
    return false;
  }
};

}  // namespace

bool equivalent(const RoadNetwork& a, const RoadNetwork& b, double tol, std::string* why) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  if (a.vertices.size() != b.vertices.size()) {
    return fail("vertex count " + std::to_string(a.vertices.size()) + " vs " +
                std::to_string(b.vertices.size()));
  }
  if (a.edges.size() != b.edges.size()) {
    return fail("edge count " + std::to_string(a.edges.size()) + " vs " +
                std::to_string(b.edges.size()));
  }
  IsoState st(a, b, tol);
  const std::size_t n = a.vertices.size();
  st.candidates.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (st.ga.out_edges(i).size() == st.gb.out_edges(j).size() &&
          st.ga.in_edges(i).size() == st.gb.in_edges(j).size() &&
          close(a.vertices[i].pos, b.vertices[j].pos, tol)) {
        st.candidates[i].push_back(j);
      }
    }
    if (st.candidates[i].empty()) {
      std::ostringstream os;
      os << "vertex " << a.vertices[i].id.value << " at (" << a.vertices[i].pos.x << ", "
         << a.vertices[i].pos.y << ") has no counterpart";
      return fail(os.str());
    }
  }
  st.order.resize(n);
  std::iota(st.order.begin(), st.order.end(), 0);
  std::stable_sort(st.order.begin(), st.order.end(), [&](std::size_t x, std::size_t y) {
    return st.candidates[x].size() < st.candidates[y].size();
  });
  st.map_ab.assign(n, IsoState::kNone);
  st.used_b.assign(n, false);
  if (!st.search(0)) return fail("no structure-preserving vertex correspondence");
  return true;
}

RoadNetwork disjoint_union(const RoadNetwork& a, const RoadNetwork& b) {
  std::int64_t shift = 0;
  for (const Vertex& v : a.vertices) shift = std::max(shift, v.id.value + 1);
  std::int64_t min_b = 0;
  for (const Vertex& v : b.vertices) min_b = std::min(min_b, v.id.value);
  shift -= min_b;
  RoadNetwork out = a;
  for (Vertex v : b.vertices) {
    v.id.value += shift;
    out.vertices.push_back(v);
  }
  for (Edge e : b.edges) {
    e.source.value += shift;
    e.target.value += shift;
    out.edges.push_back(e);
  }
  return out;
}

}  // namespace roadnet
