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

#include <algorithm>

#include "roadnet/error.hpp"
#include "roadnet/graph.hpp"
#include "test_support.hpp"

namespace roadnet {
namespace {

using test::E;
using test::make_net;
using test::V;

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
  return std::any_of(vs.begin(), vs.end(), [k](const Violation& v) { return v.kind == k; });
}

TEST(Validate, MinimalDagIsClean) {
  EXPECT_TRUE(validate(make_net({{1, 0, 0}, {2, 5, 5}}, {{1, 2}})).empty());
}

TEST(Validate, TwoCycleNamesBothVertices) {
  const auto report = validate(make_net({{1, 0, 0}, {2, 5, 5}}, {{1, 2}, {2, 1}}));
  ASSERT_TRUE(has_kind(report, ViolationKind::kCycle));
  for (const Violation& v : report) {
    if (v.kind != ViolationKind::kCycle) continue;
    std::vector<VertexId> ids = v.vertices;
    std::sort(ids.begin(), ids.end());
    EXPECT_EQ(ids, (std::vector<VertexId>{VertexId{1}, VertexId{2}}));
  }
}

TEST(Validate, DanglingReference) {
  EXPECT_TRUE(has_kind(validate(make_net({{1, 0, 0}}, {{1, 9}})), ViolationKind::kDanglingReference));
}

TEST(Validate, OtherViolations) {
  EXPECT_TRUE(has_kind(validate(make_net({{1, 0, 0}}, {{1, 1}})), ViolationKind::kSelfLoop));
  EXPECT_TRUE(has_kind(validate(make_net({{1, 0, 0}, {1, 3, 3}}, {})), ViolationKind::kDuplicateVertex));
  EXPECT_TRUE(has_kind(validate(make_net({{1, 0, 0}, {2, 3, 3}}, {{1, 2}, {1, 2}})),
                       ViolationKind::kDuplicateEdge));
  EXPECT_TRUE(has_kind(validate(make_net({{1, 99, 0}}, {})), ViolationKind::kVertexOutsideFrame));
  RoadNetwork far = make_net({{1, 0, 0}, {2, 3, 3}}, {{1, 2}});
  far.edges[0].ctrl = {-80.0, 0.0};
  EXPECT_TRUE(has_kind(validate(far), ViolationKind::kCurveOutOfRange));
  EXPECT_THROW(require_valid(far), Error);
}

TEST(Validate, LongerCycleIsFound) {
  const auto r = validate(make_net({{1, 0, 0}, {2, 5, 5}, {3, 9, 1}, {4, -5, 0}}, {{4, 1}, {1, 2}, {2, 3}, {3, 1}}));
  ASSERT_TRUE(has_kind(r, ViolationKind::kCycle));
}

TEST(KeyPoints, ChainHasOnlyItsRoot) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}, {3, 10, 0}}, {{1, 2}, {2, 3}});
  EXPECT_EQ(key_points(net), (std::vector<VertexId>{VertexId{1}}));
}

TEST(KeyPoints, ForkHasOnlyTheForkPoint) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}, {3, 5, 5}}, {{1, 2}, {1, 3}});
  EXPECT_EQ(key_points(net), (std::vector<VertexId>{VertexId{1}}));
}

TEST(KeyPoints, MergeHasBothSourcesAndTheMergePoint) {
  const auto net = make_net({{1, 0, 0}, {2, 0, 5}, {3, 5, 2}, {4, 10, 2}}, {{1, 3}, {2, 3}, {3, 4}});
  EXPECT_EQ(key_points(net), (std::vector<VertexId>{VertexId{1}, VertexId{2}, VertexId{3}}));
}

TEST(KeyPoints, MatchDegreeOracleAndAreNonEmptyOnRandomDags) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto net = test::random_small_dag(s, 1 + static_cast<int>(s % 12), 0.3);
    std::map<std::int64_t, int> in, out;
    for (const Edge& e : net.edges) {
      ++out[e.source.value];
      ++in[e.target.value];
    }
    std::vector<VertexId> want;
    for (const Vertex& v : net.vertices) {
      if (out[v.id.value] > 1 || in[v.id.value] > 1 || in[v.id.value] == 0) want.push_back(v.id);
    }
    EXPECT_EQ(key_points(net), want);
    EXPECT_FALSE(key_points(net).empty());
  }
  EXPECT_TRUE(key_points(RoadNetwork{}).empty());
}

TEST(EnumeratePaths, ChainHasOnePath) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}, {3, 10, 0}}, {{1, 2}, {2, 3}});
  const auto paths = enumerate_paths(net, VertexId{1}, VertexId{3}, 5);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].edges, (std::vector<std::size_t>{0, 1}));
}

TEST(EnumeratePaths, DiamondHasTwoPaths) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 5}, {3, 5, -5}, {4, 10, 0}}, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
  EXPECT_EQ(enumerate_paths(net, VertexId{1}, VertexId{4}, 5).size(), 2u);
}

TEST(EnumeratePaths, CapExcludesLongChains) {
  std::vector<V> vs;
  std::vector<E> es;
  for (int i = 0; i < 8; ++i) vs.push_back({i, -40.0 + 5 * i, 0});
  for (int i = 0; i < 7; ++i) es.push_back({i, i + 1});
  const auto net = make_net(vs, es);
  EXPECT_TRUE(enumerate_paths(net, VertexId{0}, VertexId{7}, 5).empty());
  EXPECT_EQ(enumerate_paths(net, VertexId{0}, VertexId{7}, 7).size(), 1u);
  EXPECT_EQ(enumerate_paths(net, VertexId{0}, VertexId{5}, 5).size(), 1u);
}

TEST(EnumeratePaths, ErrorsOnUnknownIdAndBadCap) {
  const auto net = make_net({{1, 0, 0}}, {});
  EXPECT_THROW(enumerate_paths(net, VertexId{1}, VertexId{2}, 5), Error);
  EXPECT_THROW(enumerate_paths(net, VertexId{1}, VertexId{1}, 0), Error);
  EXPECT_TRUE(enumerate_paths(net, VertexId{1}, VertexId{1}, 5).empty());
}

TEST(EnumeratePaths, AgreesWithBruteForceOracle) {
  for (std::uint64_t s = 0; s < 150; ++s) {
    const int n = 2 + static_cast<int>(s % 11);
    const auto net = test::random_small_dag(s * 31 + 7, n, 0.35);
    for (const Vertex& a : net.vertices) {
      for (const Vertex& b : net.vertices) {
        const auto want = test::brute_paths(net, a.id.value, b.id.value, 5);
        std::set<std::vector<std::int64_t>> got;
        const auto paths = enumerate_paths(net, a.id, b.id, 5);
        for (const Path& p : paths) got.insert(test::as_vertex_walk(net, p));
        EXPECT_EQ(got.size(), paths.size()) << "duplicate path";
        ASSERT_EQ(got, want) << "seed " << s;
      }
    }
  }
}

TEST(AllPaths, GroupsEveryPathOnce) {
  const auto net = test::random_small_dag(99, 10, 0.4);
  std::size_t total = 0;
  for (const PathSet& s : all_paths(net, 5)) {
    EXPECT_EQ(s.paths, enumerate_paths(net, s.source, s.target, 5));
    total += s.paths.size();
  }
  std::size_t want = 0;
  for (const Vertex& a : net.vertices) {
    for (const Vertex& b : net.vertices) want += test::brute_paths(net, a.id.value, b.id.value, 5).size();
  }
  EXPECT_EQ(total, want);
}

TEST(SampleEdge, PolylineJoinsShareOnePoint) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}, {3, 10, 0}}, {{1, 2}, {2, 3}});
  const auto pl = path_polyline(net, Path{{0, 1}}, 10);
  EXPECT_EQ(pl.size(), 19u);
  EXPECT_EQ(pl.front(), (Point{0, 0}));
  EXPECT_EQ(pl.back(), (Point{10, 0}));
}

TEST(Equivalent, DetectsRelabelingAndGeometry) {
  const auto a = make_net({{1, 0, 0}, {2, 5, 0}, {3, 5, 5}}, {{1, 2}, {1, 3}});
  const auto b = make_net({{30, 5, 5}, {10, 0, 0}, {20, 5, 0}}, {{10, 30}, {10, 20}});
  EXPECT_TRUE(equivalent(a, b, 1e-9));
  const auto c = make_net({{1, 0, 0}, {2, 5, 0}, {3, 5, 5}}, {{1, 2}, {2, 3}});
  std::string why;
  EXPECT_FALSE(equivalent(a, c, 1e-9, &why));
  EXPECT_FALSE(why.empty());
  const auto d = make_net({{1, 0, 0}, {2, 5, 0}, {3, 5, 7}}, {{1, 2}, {1, 3}});
  EXPECT_FALSE(equivalent(a, d, 1.0));
  EXPECT_TRUE(equivalent(a, d, 2.0));
}

TEST(DisjointUnion, ShiftsIds) {
  const auto a = make_net({{1, 0, 0}, {2, 5, 0}}, {{1, 2}});
  const auto u = disjoint_union(a, a);
  EXPECT_EQ(u.vertices.size(), 4u);
  EXPECT_EQ(u.edges.size(), 2u);
  EXPECT_TRUE(validate(u).empty());
}

}  // namespace
}  // namespace roadnet
