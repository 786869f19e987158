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

#include "roadnet/nar.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "roadnet/error.hpp"

namespace roadnet {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

Token wrong_token(Token truth, std::uint64_t h) {
  const auto shift = static_cast<Token>(1 + h % static_cast<std::uint64_t>(vocab::kVocabSize - 1));
  return (truth + shift) % vocab::kVocabSize;
}

}  // namespace

std::vector<std::size_t> maskable_positions(const SarSequence& seq) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < seq.layout.rows; ++r) {
    if (!seq.row_valid(r)) continue;
    for (std::size_t k = 0; k < seq.layout.row_length; ++k) out.push_back(r * seq.layout.row_length + k);
  }
  return out;
}

MaskedSequence mask_for_training(const SarSequence& gt, double mask_ratio, std::uint64_t seed) {
  if (!(mask_ratio > 0.0 && mask_ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mask ratio must lie in (0, 1]");
  }
  std::vector<std::size_t> pool = maskable_positions(gt);
  const auto count = static_cast<std::size_t>(
      std::floor(mask_ratio * static_cast<double>(pool.size()) + 1e-9));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  MaskedSequence out{gt, {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count)}};
  std::sort(out.masked.begin(), out.masked.end());
  for (const std::size_t p : out.masked) out.sequence.tokens[p] = kMaskToken;
  return out;
}

std::vector<Prediction> OraclePredictor::predict(const SarSequence&, const KeyPointPrompt&,
                                                 std::span<const std::size_t> masked,
                                                 std::size_t) const {
  std::vector<Prediction> out;
  for (const std::size_t p : masked) out.push_back({gt_.tokens.at(p), 1.0});
  return out;
}

std::vector<Prediction> AdversarialPredictor::predict(const SarSequence&, const KeyPointPrompt&,
                                                      std::span<const std::size_t> masked,
                                                      std::size_t) const {
  std::vector<Prediction> out;
  for (const std::size_t p : masked) out.push_back({wrong_token(gt_.tokens.at(p), p), 1.0});
  return out;
}

NoisyOraclePredictor::NoisyOraclePredictor(SarSequence gt, double p, std::uint64_t seed,
                                           double spread)
    : gt_(std::move(gt)), p_(p), seed_(seed), spread_(spread) {
  if (!(p >= 0.0 && p <= 1.0) || !(spread >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noisy oracle needs p in [0, 1] and spread >= 0");
  }
}

std::vector<Prediction> NoisyOraclePredictor::predict(const SarSequence&, const KeyPointPrompt&,
                                                      std::span<const std::size_t> masked,
                                                      std::size_t iteration) const {
  std::vector<Prediction> out;
  for (const std::size_t p : masked) {
    const std::uint64_t h = splitmix(splitmix(seed_ ^ splitmix(iteration)) ^ p);
    const double conf = std::clamp(p_ + (unit(h) - 0.5) * spread_, 0.0, 1.0);
    const std::uint64_t h2 = splitmix(h);
    const Token truth = gt_.tokens.at(p);
    out.push_back({unit(h2) < conf ? truth : wrong_token(truth, splitmix(h2)), conf});
  }
  return out;
}

SarSequence DecodeTrace::final_sequence() const {
  SarSequence s;
  s.layout = layout;
  if (!steps.empty()) s.tokens = steps.back().tokens;
  return s;
}

DecodeTrace iterative_decode(const Predictor& predictor, const KeyPointPrompt& prompt,
                             const SarSequence& gt, std::size_t n_iter) {
  if (n_iter < 1) throw Error(ErrorCode::kInvalidArgument, "n_iter must be at least 1");
  const std::vector<std::size_t> valid = maskable_positions(gt);
  const std::size_t n = valid.size();

  DecodeTrace trace;
  trace.layout = gt.layout;
  trace.n_iter = n_iter;
  trace.valid_tokens = n;
  for (std::size_t r = 0; r < gt.layout.rows; ++r) {
    if (!gt.row_valid(r)) continue;
    const auto row = gt.row(r);
    std::size_t len = 0;
    while (len < row.size() && row[len] != vocab::kEos && !(len % 6 == 0 && row[len] == vocab::kNa)) ++len;
    if (len < row.size() && row[len] == vocab::kEos) ++len;
    trace.ar_steps += len;
    trace.sar_steps = std::max(trace.sar_steps, len);
  }
  trace.nar_steps = n_iter;

  SarSequence cur;
  cur.layout = gt.layout;
  cur.tokens.assign(gt.tokens.size(), vocab::kNa);
  std::vector<double> conf(gt.tokens.size(), 0.0);
  std::vector<std::size_t> masked = valid;

  auto accuracy = [&](const std::vector<Token>& tokens, const std::vector<std::size_t>& hidden) {
    if (n == 0) return 1.0;
    std::vector<bool> is_masked(gt.tokens.size(), false);
    for (const std::size_t p : hidden) is_masked[p] = true;
    std::size_t ok = 0;
    for (const std::size_t p : valid) ok += !is_masked[p] && tokens[p] == gt.tokens[p];
    return static_cast<double>(ok) / static_cast<double>(n);
  };

  trace.steps.push_back({0, cur.tokens, masked, 0, accuracy(cur.tokens, masked)});
  for (std::size_t k = 1; k <= n_iter; ++k) {
    const auto preds = predictor.predict(cur, prompt, masked, k);
    if (preds.size() != masked.size()) {
      throw Error(ErrorCode::kContractViolation,
                  "predictor returned " + std::to_string(preds.size()) + " predictions for " +
                      std::to_string(masked.size()) + " masked positions");
    }
    for (std::size_t i = 0; i < masked.size(); ++i) {
      const double c = preds[i].confidence;
      if (!(c >= 0.0 && c <= 1.0)) {
        throw Error(ErrorCode::kContractViolation, "predictor confidence outside [0, 1]",
                    token_location(masked[i]));
      }
      cur.tokens[masked[i]] = preds[i].token;
      conf[masked[i]] = c;
    }
    const std::size_t predicted = masked.size();
    const std::vector<Token> filled = cur.tokens;

    const std::size_t keep_masked = n * (n_iter - k) / n_iter;
    std::vector<std::size_t> rank = valid;
    std::stable_sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
      if (conf[a] != conf[b]) return conf[a] < conf[b];
      return a > b;
    });
    masked.assign(rank.begin(), rank.begin() + static_cast<std::ptrdiff_t>(keep_masked));
    std::sort(masked.begin(), masked.end());
    for (const std::size_t p : masked) cur.tokens[p] = kMaskToken;

    trace.steps.push_back({k, filled, masked, predicted, accuracy(filled, {})});
  }
  return trace;
}

ComplexityReport complexity_report(const RoadNetwork& net, std::size_t n_iter, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  ComplexityReport r;
  r.vertices = net.vertices.size();
  r.edges = net.edges.size();
  r.n_iter = n_iter;
  r.alpha = alpha;
  if (r.vertices == 0) return r;
  require_valid(net);

  const GraphIndex g(net);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) r.forest_roots += g.in_edges(v).empty();
  r.key_points = key_points(net).size();
  if (r.key_points == 0) {
    throw Error(ErrorCode::kContractViolation, "non-empty network without key-points");
  }
  const double e = static_cast<double>(r.edges);
  const double kp = static_cast<double>(r.key_points);
  r.ar_steps = 6.0 * (e + static_cast<double>(r.forest_roots));
  r.sar_steps = alpha * (e + kp);
  r.nar_steps = alpha * kp * static_cast<double>(n_iter + 1);
  r.acceleration = r.sar_steps / r.nar_steps;
  return r;
}

}  // namespace roadnet
