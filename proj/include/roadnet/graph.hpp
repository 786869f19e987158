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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "roadnet/geometry.hpp"

namespace roadnet {

// Opaque, stable vertex identifier. Codecs never look at the value.
struct VertexId {
  std::int64_t value = 0;

  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

struct Vertex {
  VertexId id;
  Point pos;
};

// Directed centerline with the middle control point of a quadratic Bezier.
struct Edge {
  VertexId source;
  VertexId target;
  Point ctrl;
};

struct RoadNetwork {
  BevFrame frame;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

enum class ViolationKind {
  kBadFrame,
  kDuplicateVertex,
  kVertexOutsideFrame,
  kNonFinite,
  kSelfLoop,
  kDanglingReference,
  kDuplicateEdge,
  kCurveOutOfRange,
  kCycle,
};

std::string_view violation_kind_name(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
  std::vector<VertexId> vertices;
};

std::vector<Violation> validate(const RoadNetwork& net);

// Throws kInvalidGraph carrying the first violation.
void require_valid(const RoadNetwork& net);

}  // namespace roadnet

template <>
struct std::hash<roadnet::VertexId> {
  std::size_t operator()(const roadnet::VertexId& id) const noexcept {
    return std::hash<std::int64_t>{}(id.value);
  }
};

namespace roadnet {

// Position-indexed adjacency over a RoadNetwork. Vertex and edge indices are
// positions in net.vertices / net.edges. Holds a reference; the network must
// outlive it.
class GraphIndex {
 public:
  explicit GraphIndex(const RoadNetwork& net);

  const RoadNetwork& net() const { return *net_; }
  std::size_t vertex_count() const { return net_->vertices.size(); }

  std::optional<std::size_t> find(VertexId id) const;
  std::size_t at(VertexId id) const;  // throws kNotFound

  // Edge indices, in the order edges appear in the network.
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }

  std::size_t source_of(std::size_t e) const { return src_[e]; }
  std::size_t target_of(std::size_t e) const { return dst_[e]; }

 private:
  const RoadNetwork* net_;
  std::unordered_map<VertexId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::size_t> src_;
  std::vector<std::size_t> dst_;
};

// Vertices with out-degree > 1, in-degree > 1 or in-degree 0, in network order.
std::vector<VertexId> key_points(const RoadNetwork& net);

struct Path {
  std::vector<std::size_t> edges;  // indices into net.edges

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

// All simple directed paths src -> dst with 1..max_edges edges.
std::vector<Path> enumerate_paths(const RoadNetwork& net, VertexId src, VertexId dst,
                                  int max_edges);

struct PathSet {
  VertexId source;
  VertexId target;
  std::vector<Path> paths;
};

// Every simple path of 1..max_edges edges, grouped by (source, target) and
// ordered by source then target vertex position.
std::vector<PathSet> all_paths(const RoadNetwork& net, int max_edges);

// n >= 2 samples along one edge.
std::vector<Point> sample_edge(const RoadNetwork& net, const Edge& edge, int n);
std::vector<Point> sample_edge(const Edge& edge, Point source, Point target, int n);

// Concatenated per-edge samples; shared joints appear once.
std::vector<Point> path_polyline(const RoadNetwork& net, const Path& path, int samples_per_edge);

// Topological isomorphism with geometric tolerance: a bijection between the
// vertex sets carrying edges onto edges, with every vertex position and edge
// control point matched within `tol` per axis. On mismatch `why` (if given)
// receives a short reason.
bool equivalent(const RoadNetwork& a, const RoadNetwork& b, double tol,
                std::string* why = nullptr);

// Disjoint union; ids of `b` are shifted past the largest id in `a`.
RoadNetwork disjoint_union(const RoadNetwork& a, const RoadNetwork& b);

}  // namespace roadnet
