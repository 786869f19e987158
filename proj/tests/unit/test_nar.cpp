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
#include "roadnet/nar.hpp"
#include "test_support.hpp"

namespace roadnet {
namespace {

using test::make_net;

RoadNetwork chain(int edges) {
  std::vector<test::V> vs;
  std::vector<test::E> es;
  for (int i = 0; i <= edges; ++i) vs.push_back({i, -40.0 + 6 * i, 0});
  for (int i = 0; i < edges; ++i) es.push_back({i, i + 1});
  return make_net(vs, es);
}

TEST(Mask, FullRatioMasksEveryValidPosition) {
  const auto enc = encode_sar(test::corpus_graph(0));
  const auto m = mask_for_training(enc.sequence, 1.0, 3);
  EXPECT_EQ(m.masked, maskable_positions(enc.sequence));
  for (const std::size_t p : m.masked) EXPECT_EQ(m.sequence.tokens[p], kMaskToken);
}

TEST(Mask, NinetyPercentOfHundred) {
  SarSequence s;
  s.layout = {1, 100};
  s.tokens.assign(100, 5);
  const auto m = mask_for_training(s, 0.9, 1);
  EXPECT_EQ(m.masked.size(), 90u);
  EXPECT_TRUE(std::is_sorted(m.masked.begin(), m.masked.end()));
  EXPECT_EQ(mask_for_training(s, 0.9, 1).masked, m.masked);
  EXPECT_NE(mask_for_training(s, 0.9, 2).masked, m.masked);
  EXPECT_THROW(mask_for_training(s, 1.5, 1), Error);
}

TEST(Mask, PaddingRowsAreNeverMaskable) {
  const auto enc = encode_sar(chain(3));
  EXPECT_EQ(maskable_positions(enc.sequence).size(), enc.sequence.layout.row_length);
}

TEST(IterativeDecode, OracleIsExactAfterOneIteration) {
  const auto net = test::corpus_graph(7);
  const auto enc = encode_sar(net);
  const OraclePredictor oracle(enc.sequence);
  const auto trace = iterative_decode(oracle, enc.prompt, enc.sequence, 3);
  ASSERT_EQ(trace.steps.size(), 4u);
  EXPECT_EQ(trace.steps[0].masked.size(), trace.valid_tokens);
  for (std::size_t k = 1; k < trace.steps.size(); ++k) EXPECT_EQ(trace.steps[k].accuracy, 1.0);
  EXPECT_EQ(trace.final_sequence().tokens, enc.sequence.tokens);
  EXPECT_TRUE(equivalent(decode_sar(trace.final_sequence(), net.frame, &enc.prompt), net, 1.0));
}

TEST(IterativeDecode, AdversaryIsNeverRight) {
  const auto enc = encode_sar(test::corpus_graph(8));
  const AdversarialPredictor adv(enc.sequence);
  const auto trace = iterative_decode(adv, enc.prompt, enc.sequence, 3);
  for (const auto& s : trace.steps) EXPECT_EQ(s.accuracy, 0.0);
}

TEST(IterativeDecode, ScheduleIsExact) {
  const auto enc = encode_sar(test::corpus_graph(9));
  const NoisyOraclePredictor noisy(enc.sequence, 0.7, 4);
  for (std::size_t n_iter : {1u, 2u, 3u, 5u, 10u}) {
    const auto trace = iterative_decode(noisy, enc.prompt, enc.sequence, n_iter);
    const std::size_t n = trace.valid_tokens;
    ASSERT_EQ(trace.steps.size(), n_iter + 1);
    for (std::size_t k = 0; k <= n_iter; ++k) {
      EXPECT_EQ(trace.steps[k].masked.size(), n * (n_iter - k) / n_iter) << n_iter << " " << k;
    }
    EXPECT_EQ(trace.nar_steps, n_iter);
  }
  EXPECT_THROW(iterative_decode(noisy, enc.prompt, enc.sequence, 0), Error);
}

TEST(IterativeDecode, RefinementHelpsTheNoisyOracle) {
  double one = 0, three = 0;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto enc = encode_sar(test::corpus_graph(s, 11));
    const NoisyOraclePredictor noisy(enc.sequence, 0.7, s);
    one += iterative_decode(noisy, enc.prompt, enc.sequence, 1).final_accuracy();
    three += iterative_decode(noisy, enc.prompt, enc.sequence, 3).final_accuracy();
  }
  EXPECT_GT(three, one);
}

class BadPredictor final : public Predictor {
 public:
  explicit BadPredictor(bool short_reply) : short_(short_reply) {}
  std::vector<Prediction> predict(const SarSequence&, const KeyPointPrompt&, std::span<const std::size_t> masked,
                                  std::size_t) const override {
    std::vector<Prediction> out(masked.size(), Prediction{vocab::kNa, 1.5});
    if (short_) {
      out.pop_back();
      for (auto& p : out) p.confidence = 0.5;
    }
    return out;
  }

 private:
  bool short_;
};

TEST(IterativeDecode, PredictorContractIsChecked) {
  const auto enc = encode_sar(chain(2));
  for (bool short_reply : {false, true}) {
    try {
      iterative_decode(BadPredictor(short_reply), enc.prompt, enc.sequence, 2);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kContractViolation);
    }
  }
}

TEST(Complexity, ChainOfFive) {
  const auto r = complexity_report(chain(5), 3);
  EXPECT_EQ(r.key_points, 1u);
  EXPECT_EQ(r.edges, 5u);
  EXPECT_DOUBLE_EQ(r.acceleration, 1.5);
  EXPECT_DOUBLE_EQ(r.ar_steps, 36.0);
}

TEST(Complexity, EmptyGraphIsAllZero) {
  const auto r = complexity_report(RoadNetwork{}, 3);
  EXPECT_EQ(r.ar_steps, 0.0);
  EXPECT_EQ(r.sar_steps, 0.0);
  EXPECT_EQ(r.nar_steps, 0.0);
  EXPECT_EQ(r.acceleration, 0.0);
}

TEST(Complexity, RatioFormulaAndAdditivity) {
  for (std::size_t i = 0; i < 100; ++i) {
    const auto net = test::corpus_graph(i);
    const auto r = complexity_report(net, 3, 2.0);
    const double e = static_cast<double>(net.edges.size());
    const double kp = static_cast<double>(key_points(net).size());
    EXPECT_NEAR(r.acceleration, (e / kp + 1) / 4.0, 1e-12);
    const auto twice = complexity_report(disjoint_union(net, net), 3, 2.0);
    EXPECT_DOUBLE_EQ(twice.ar_steps, 2 * r.ar_steps);
    EXPECT_DOUBLE_EQ(twice.sar_steps, 2 * r.sar_steps);
    EXPECT_DOUBLE_EQ(twice.nar_steps, 2 * r.nar_steps);
    EXPECT_DOUBLE_EQ(twice.acceleration, r.acceleration);
  }
}

}  // namespace
}  // namespace roadnet
