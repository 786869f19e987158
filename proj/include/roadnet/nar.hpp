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

#include <cstdint>
#include <span>
#include <vector>

#include "roadnet/graph.hpp"
#include "roadnet/sar.hpp"

namespace roadnet {

// Masked positions hold this token; the mask set says which NA is a mask.
inline constexpr Token kMaskToken = vocab::kNa;

// Positions of the valid (non-padding) rows, row-major. Padding rows are
// never masked or predicted.
std::vector<std::size_t> maskable_positions(const SarSequence& seq);

struct MaskedSequence {
  SarSequence sequence;
  std::vector<std::size_t> masked;  // ascending
};

// Masks floor(ratio * valid) uniformly chosen valid positions.
MaskedSequence mask_for_training(const SarSequence& gt, double mask_ratio, std::uint64_t seed);

struct Prediction {
  Token token = vocab::kNa;
  double confidence = 0.0;
};

// Stand-in for a trained decoder. predict() returns one prediction per
// entry of `masked`, in order. Implementations must be deterministic and
// safe to call concurrently.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual std::vector<Prediction> predict(const SarSequence& current, const KeyPointPrompt& prompt,
                                          std::span<const std::size_t> masked,
                                          std::size_t iteration) const = 0;
};

// Always right, confidence 1.
class OraclePredictor final : public Predictor {
 public:
  explicit OraclePredictor(SarSequence gt) : gt_(std::move(gt)) {}
  std::vector<Prediction> predict(const SarSequence&, const KeyPointPrompt&,
                                  std::span<const std::size_t> masked,
                                  std::size_t iteration) const override;

 private:
  SarSequence gt_;
};

// Always wrong, confidence 1.
class AdversarialPredictor final : public Predictor {
 public:
  explicit AdversarialPredictor(SarSequence gt) : gt_(std::move(gt)) {}
  std::vector<Prediction> predict(const SarSequence&, const KeyPointPrompt&,
                                  std::span<const std::size_t> masked,
                                  std::size_t iteration) const override;

 private:
  SarSequence gt_;
};

// Calibrated noisy oracle. Per (iteration, position) it draws a confidence
// c = clamp(p + (u - 0.5) * spread, 0, 1) and is correct with probability c,
// so the mean accuracy of one pass is about p.
class NoisyOraclePredictor final : public Predictor {
 public:
  NoisyOraclePredictor(SarSequence gt, double p, std::uint64_t seed, double spread = 0.6);
  std::vector<Prediction> predict(const SarSequence&, const KeyPointPrompt&,
                                  std::span<const std::size_t> masked,
                                  std::size_t iteration) const override;

 private:
  SarSequence gt_;
  double p_;
  std::uint64_t seed_;
  double spread_;
};

// tokens is the full prediction of the iteration (the all-NA start for
// iteration 0); masked lists the positions handed back to the next one.
struct DecodeStep {
  std::size_t iteration = 0;
  std::vector<Token> tokens;
  std::vector<std::size_t> masked;  // ascending
  std::size_t predicted = 0;        // positions filled in this iteration
  double accuracy = 0.0;            // correct valid positions / valid positions
};

struct DecodeTrace {
  SarLayout layout;
  std::size_t n_iter = 0;
  std::size_t valid_tokens = 0;
  std::vector<DecodeStep> steps;  // steps[0] is the fully masked start
  // Sequential model steps each regime would need for this sample.
  std::size_t ar_steps = 0;   // one per content token
  std::size_t sar_steps = 0;  // longest row, rows run in parallel
  std::size_t nar_steps = 0;  // one per iteration

  SarSequence final_sequence() const;
  double final_accuracy() const { return steps.empty() ? 0.0 : steps.back().accuracy; }
};

// Mask-predict refinement. Starts fully masked; iteration k predicts every
// masked position, then re-masks the floor(valid * (n_iter - k) / n_iter)
// lowest-confidence positions (ties: the later position is re-masked).
// `gt` fixes the shape and scores accuracy. Throws kContractViolation when
// the predictor returns a bad count or a confidence outside [0, 1].
DecodeTrace iterative_decode(const Predictor& predictor, const KeyPointPrompt& prompt,
                             const SarSequence& gt, std::size_t n_iter);

struct ComplexityReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t key_points = 0;
  std::size_t forest_roots = 0;
  std::size_t n_iter = 0;
  double alpha = 1.0;
  double ar_steps = 0.0;   // unpadded coupled tokens without Start/EOS
  double sar_steps = 0.0;  // alpha * (|E| + |V_kp|)
  double nar_steps = 0.0;  // alpha * |V_kp| * (n_iter + 1)
  double acceleration = 0.0;  // sar_steps / nar_steps
};

ComplexityReport complexity_report(const RoadNetwork& net, std::size_t n_iter, double alpha = 1.0);

}  // namespace roadnet
