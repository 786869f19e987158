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

#include "roadnet/decoupled.hpp"
#include "roadnet/error.hpp"
#include "roadnet/json_io.hpp"
#include "roadnet/metrics.hpp"
#include "roadnet/sar.hpp"
#include "test_support.hpp"

namespace roadnet {
namespace {

TEST(Generate, SameSeedSameBytes) {
  GenConfig c;
  c.seed = 42;
  EXPECT_EQ(graph_to_json(generate(c)), graph_to_json(generate(c)));
  GenConfig d = c;
  d.seed = 43;
  EXPECT_NE(graph_to_json(generate(c)), graph_to_json(generate(d)));
}

TEST(Generate, NoMergesMeansNoClones) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    GenConfig c;
    c.seed = s;
    c.merge_probability = 0.0;
    EXPECT_EQ(to_forest(generate(c)).clone_count(), 0u) << s;
  }
}

TEST(Generate, DefaultsAreValidAndFitEveryCodec) {
  std::size_t with_clones = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const auto net = test::corpus_graph(i, 5);
    ASSERT_TRUE(validate(net).empty()) << i;
    const auto f = to_forest(net);
    with_clones += f.clone_count() > 0;
    EXPECT_LE(f.nodes.size(), kMaxForestNodes);
    EXPECT_NO_THROW(encode_decoupled(net));
    EXPECT_NO_THROW(encode_sar(net));
    for (const Vertex& v : net.vertices) EXPECT_TRUE(net.frame.contains(v.pos));
  }
  EXPECT_GT(with_clones, 100u);
}

TEST(Generate, BadConfigIsRejected) {
  GenConfig c;
  c.max_vertices = 101;
  EXPECT_THROW(generate(c), Error);
  c.max_vertices = 10;
  c.min_trees = 5;
  c.max_trees = 2;
  EXPECT_THROW(generate(c), Error);
}

TEST(Perturb, ZeroIsIdentity) {
  const auto net = test::corpus_graph(12);
  EXPECT_EQ(graph_to_json(perturb(net, 0.0, 0.0, 9)), graph_to_json(net));
}

TEST(Perturb, SmallJitterKeepsLandmarkScorePerfect) {
  for (std::size_t i = 0; i < 100; ++i) {
    const auto gt = test::corpus_graph(i, 31);
    const auto pred = perturb(gt, 0.2, 0.0, i);
    EXPECT_EQ(landmark_pr(pred, gt).mean_f1, 1.0) << i;
  }
}

TEST(Perturb, DroppedDiamondEdgeLosesPaths) {
  const auto gt = test::make_net({{1, 0, 0}, {2, 10, 8}, {3, 10, -8}, {4, 20, 0}}, {{1, 2}, {1, 3}, {2, 4}, {3, 4}});
  std::size_t tried = 0;
  for (std::uint64_t s = 0; s < 200 && tried < 20; ++s) {
    const auto pred = perturb(gt, 0.0, 0.3, s);
    if (pred.edges.size() != 3 || pred.vertices.size() != 4) continue;
    ++tried;
    for (const auto& t : reachability_pr(pred, gt).per_threshold) EXPECT_GE(t.counts.fn, 1u);
  }
  EXPECT_GT(tried, 0u);
}

TEST(Perturb, StaysValidAndInFrame) {
  for (std::size_t i = 0; i < 200; ++i) {
    const auto net = perturb(test::corpus_graph(i), 3.0, 0.2, i);
    EXPECT_TRUE(validate(net).empty()) << i;
  }
}

TEST(GenerateSdMap, StronglyConnectedHasACycleThroughEveryNode) {
  SdGenConfig c;
  c.seed = 3;
  c.strongly_connected = true;
  const auto map = generate_sdmap(c);
  EXPECT_TRUE(sdmap_problems(map).empty());
  std::map<std::int64_t, int> in, out;
  for (const Link& l : map.links) {
    ++out[l.source.value];
    ++in[l.target.value];
  }
  for (const Vertex& v : map.nodes) {
    EXPECT_GE(in[v.id.value], 1);
    EXPECT_GE(out[v.id.value], 1);
  }
}

TEST(DeriveSeed, DistinctAndStable) {
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(1, 3));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
}

}  // namespace
}  // namespace roadnet
