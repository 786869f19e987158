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

#include "roadnet/coupled.hpp"
#include "roadnet/decoupled.hpp"
#include "roadnet/error.hpp"
#include "roadnet/noise.hpp"
#include "roadnet/sar.hpp"
#include "test_support.hpp"

namespace roadnet {
namespace {

using test::make_net;
using Tokens = std::vector<Token>;

ErrorCode code_of(const std::function<void()>& fn, std::string* location = nullptr) {
  try {
    fn();
  } catch (const Error& e) {
    if (location) *location = e.location();
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kInvalidArgument;
}

TEST(Coupled, EmptyGraphIsStartEos) {
  EXPECT_EQ(encode_coupled(RoadNetwork{}).tokens, (Tokens{572, 571}));
  EXPECT_TRUE(decode_coupled(Tokens{572, 571}, BevFrame{}).vertices.empty());
}

TEST(Coupled, SingleVertexClause) {
  const auto net = make_net({{1, -43, -25}}, {});
  EXPECT_EQ(encode_coupled(net).tokens, (Tokens{572, 5, 7, 200, 573, 573, 573, 571}));
}

TEST(Coupled, ChainCurveTokens) {
  const BevFrame f{0, 200, 0, 200, 1.0};
  auto net = make_net({{1, 10, 10}, {2, 20, 10}}, {{1, 2}}, f);
  net.edges[0].ctrl = {-3.2, 4.0};
  EXPECT_EQ(encode_coupled(net).tokens,
            (Tokens{572, 10, 10, 200, 573, 573, 573, 20, 10, 201, 573, 356, 364, 571}));
}

TEST(Coupled, CloneReferencesItsOriginal) {
  const auto net = make_net({{1, 0, 0}, {2, 0, 5}, {3, 5, 2}}, {{1, 3}, {2, 3}});
  const auto t = encode_coupled(net).tokens;
  ASSERT_EQ(t.size(), 2u + 6 * 4);
  EXPECT_EQ(t[1 + 18 + 2], 203);
  EXPECT_EQ(t[1 + 18 + 3], 250);
}

TEST(Coupled, ForwardCloneReferenceIsMalformed) {
  Tokens t{572, 5, 7, 200, 573, 573, 573, 6, 7, 203, 255, 360, 360, 571};
  std::string where;
  EXPECT_EQ(code_of([&] { decode_coupled(t, BevFrame{}); }, &where), ErrorCode::kMalformedSequence);
  EXPECT_EQ(where, "token 10");
}

TEST(Coupled, MissingEosIsMalformed) {
  EXPECT_EQ(code_of([] { decode_coupled(Tokens{572, 5, 7, 200, 573, 573, 573}, BevFrame{}); }),
            ErrorCode::kMalformedSequence);
  EXPECT_EQ(code_of([] { decode_coupled(Tokens{5, 7}, BevFrame{}); }), ErrorCode::kMalformedSequence);
}

TEST(Coupled, PaddingWithNa) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}}, {{1, 2}});
  const auto seq = encode_coupled(net, {}, 40);
  ASSERT_EQ(seq.tokens.size(), 40u);
  EXPECT_TRUE(std::all_of(seq.tokens.begin() + 14, seq.tokens.end(), [](Token x) { return x == 573; }));
  EXPECT_TRUE(equivalent(decode_coupled(seq.tokens, net.frame), net, 1.0));
  EXPECT_EQ(code_of([&] { encode_coupled(net, {}, 10); }), ErrorCode::kCapacityExceeded);
}

TEST(Coupled, LengthLawAndRoundTripOnGeneratedGraphs) {
  for (std::size_t i = 0; i < 500; ++i) {
    const auto net = test::corpus_graph(i);
    const auto f = to_forest(net);
    const auto seq = encode_coupled(net);
    EXPECT_EQ(seq.tokens.size(), 2 + 6 * (net.edges.size() + f.roots.size()));
    EXPECT_EQ(seq.clause_count(), f.nodes.size());
    ASSERT_TRUE(equivalent(decode_coupled(seq.tokens, net.frame), net, net.frame.resolution)) << i;
  }
}

TEST(Coupled, TooManyNodesIsCapacityError) {
  std::vector<test::V> vs;
  for (int i = 0; i < 101; ++i) vs.push_back({i, -45.0 + (i % 20) * 4, -30.0 + (i / 20) * 5});
  EXPECT_EQ(code_of([&] { encode_coupled(make_net(vs, {})); }), ErrorCode::kCapacityExceeded);
}

TEST(Decoupled, EmptyGraph) {
  EXPECT_EQ(encode_decoupled(RoadNetwork{}).tokens, (Tokens{572, 574, 576}));
  EXPECT_TRUE(decode_decoupled(Tokens{572, 574, 576}, BevFrame{}).vertices.empty());
}

TEST(Decoupled, ForkStructure) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}, {3, 5, 5}}, {{1, 2}, {1, 3}});
  const auto t = encode_decoupled(net).tokens;
  ASSERT_EQ(t.size(), 18u);
  EXPECT_EQ(t[7], 574);
  EXPECT_EQ(t[8], 251);
  EXPECT_EQ(t[11], 252);
  EXPECT_EQ(t[14], 575);
  EXPECT_EQ(t[15], 575);
  EXPECT_EQ(t[16], 575);
  EXPECT_EQ(t[17], 576);
  const auto st = decoupled_stats(t);
  EXPECT_EQ(st.vertices, 3u);
  EXPECT_EQ(st.triples, 2u);
  EXPECT_EQ(st.splits, 3u);
}

TEST(Decoupled, CountsAndRoundTripOnGeneratedGraphs) {
  for (std::size_t i = 0; i < 500; ++i) {
    const auto net = test::corpus_graph(i);
    const auto t = encode_decoupled(net).tokens;
    const auto st = decoupled_stats(t);
    EXPECT_EQ(st.splits, net.vertices.size());
    EXPECT_EQ(st.triples, net.edges.size());
    EXPECT_EQ(t.size(), 3 + 2 * net.vertices.size() + 3 * net.edges.size() + net.vertices.size());
    ASSERT_TRUE(equivalent(decode_decoupled(t, net.frame), net, net.frame.resolution)) << i;
  }
}

TEST(Decoupled, FixedBlocks) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}}, {{1, 2}});
  const auto t = encode_decoupled(net, {}, {20, 20}).tokens;
  EXPECT_EQ(t.size(), 41u);
  EXPECT_TRUE(equivalent(decode_decoupled(t, net.frame), net, 1.0));
  EXPECT_EQ(code_of([&] { encode_decoupled(net, {}, {3, 0}); }), ErrorCode::kCapacityExceeded);
}

TEST(Decoupled, BadChildIndexIsMalformed) {
  // One vertex whose edge points at vertex 5.
  EXPECT_EQ(code_of([] { decode_decoupled(Tokens{572, 5, 5, 574, 255, 360, 360, 575, 576}, BevFrame{}); }),
            ErrorCode::kMalformedSequence);
}

TEST(Sar, ChainHasOneValidRow) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}, {3, 10, 0}}, {{1, 2}, {2, 3}});
  const auto enc = encode_sar(net);
  EXPECT_EQ(enc.sequence.tokens.size(), 34u * 108u);
  EXPECT_EQ(enc.sequence.valid_rows(), 1u);
  EXPECT_TRUE(enc.sequence.row_valid(0));
  for (std::size_t r = 1; r < 34; ++r) {
    const auto row = enc.sequence.row(r);
    EXPECT_TRUE(std::all_of(row.begin(), row.end(), [](Token x) { return x == 573; }));
  }
  EXPECT_EQ(enc.sequence.row(0)[18], 571);
  EXPECT_EQ(enc.prompt.tokens_for_row(0).size(), 4u);
  EXPECT_TRUE(equivalent(decode_sar(enc.sequence, net.frame, &enc.prompt), net, 1.0));
}

TEST(Sar, MergeHasThreeRows) {
  const auto net = make_net({{1, 0, 0}, {2, 0, 5}, {3, 5, 2}, {4, 10, 2}}, {{1, 3}, {2, 3}, {3, 4}});
  const auto enc = encode_sar(net);
  EXPECT_EQ(enc.sequence.valid_rows(), 3u);
  EXPECT_EQ(enc.prompt.key_points.size(), 3u);
  EXPECT_EQ(enc.prompt.tokens_for_row(2).size(), 8u);
  EXPECT_TRUE(equivalent(decode_sar(enc.sequence, net.frame, &enc.prompt), net, 1.0));
}

TEST(Sar, RoundTripAndContentOnGeneratedGraphs) {
  for (std::size_t i = 0; i < 500; ++i) {
    const auto net = test::corpus_graph(i);
    const auto enc = encode_sar(net);
    const auto kp = key_points(net).size();
    EXPECT_EQ(enc.sequence.valid_rows(), kp);
    const auto content = sar_content_positions(enc.sequence);
    std::size_t clauses = 0;
    for (const std::size_t p : content) clauses += enc.sequence.tokens[p] != 571;
    EXPECT_EQ(clauses, 6 * (net.edges.size() + kp));
    ASSERT_TRUE(equivalent(decode_sar(enc.sequence, net.frame, &enc.prompt), net, net.frame.resolution)) << i;
  }
}

TEST(Sar, PromptMismatchIsRejected) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}}, {{1, 2}});
  auto enc = encode_sar(net);
  enc.prompt.key_points[0].ix += 1;
  EXPECT_THROW(decode_sar(enc.sequence, net.frame, &enc.prompt), Error);
}

TEST(Noise, ZeroNoiseKeepsTarget) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}}, {{1, 2}});
  const auto seq = encode_coupled(net);
  const auto p = pad_with_noise(seq, 2, 1);
  EXPECT_EQ(p.input, Tokens(seq.tokens.begin(), seq.tokens.end() - 1));
  EXPECT_EQ(p.target, Tokens(seq.tokens.begin() + 1, seq.tokens.end()));
  EXPECT_TRUE(std::all_of(p.loss_mask.begin(), p.loss_mask.end(), [](auto m) { return m == 1; }));
}

TEST(Noise, ThreeNoiseClauses) {
  const auto net = make_net({{1, 0, 0}, {2, 5, 0}}, {{1, 2}});
  const auto p = pad_with_noise(encode_coupled(net), 5, 9);
  EXPECT_EQ(p.input.size(), 1u + 30u);
  EXPECT_EQ(p.target.size(), 31u);
  EXPECT_EQ(std::count(p.target.begin(), p.target.end(), 570), 3);
  EXPECT_EQ(std::count(p.loss_mask.begin(), p.loss_mask.end(), 0), 15);
  for (std::size_t k = 13; k < p.input.size(); k += 6) {
    EXPECT_EQ(classify(p.input[k]), TokenRange::kCoordinate);
    EXPECT_EQ(classify(p.input[k + 2]), TokenRange::kCategory);
    EXPECT_EQ(classify(p.input[k + 4]), TokenRange::kCurve);
  }
  const auto again = pad_with_noise(encode_coupled(net), 5, 9);
  EXPECT_EQ(p.input, again.input);
  EXPECT_NE(p.input, pad_with_noise(encode_coupled(net), 5, 10).input);
  EXPECT_THROW(pad_with_noise(encode_coupled(net), 1, 9), Error);
}

}  // namespace
}  // namespace roadnet
