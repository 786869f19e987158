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

#include "roadnet/noise.hpp"

#include <random>

#include "roadnet/error.hpp"

namespace roadnet {

NoisePadded pad_with_noise(const CoupledSequence& target, std::size_t total_clauses,
                           std::uint64_t seed, const BevFrame& frame) {
  const auto& t = target.tokens;
  if (t.empty() || t[0] != vocab::kStart) {
    throw Error(ErrorCode::kMalformedSequence, "target must begin with Start", token_location(0));
  }
  const std::size_t real = target.clause_count();
  const std::size_t eos = 1 + 6 * real;
  if (eos >= t.size() || t[eos] != vocab::kEos) {
    throw Error(ErrorCode::kMalformedSequence, "target has no EOS after its clauses",
                token_location(eos));
  }
  if (total_clauses < real) {
    throw Error(ErrorCode::kInvalidArgument,
                "total_clauses " + std::to_string(total_clauses) + " is below the " +
                    std::to_string(real) + " real clauses");
  }

  NoisePadded out;
  out.input.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(eos));
  out.target.assign(t.begin() + 1, t.begin() + static_cast<std::ptrdiff_t>(eos) + 1);
  out.loss_mask.assign(out.target.size(), 1);

  std::mt19937_64 rng(seed);
  auto draw = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  for (std::size_t k = real; k < total_clauses; ++k) {
    out.input.push_back(coord_token(draw(frame.grid_width())));
    out.input.push_back(coord_token(draw(frame.grid_height())));
    out.input.push_back(category_token(draw(4)));
    out.input.push_back(index_token(static_cast<std::size_t>(draw(vocab::kIndexCount))));
    out.input.push_back(curve_token(draw(vocab::kCurveCount)));
    out.input.push_back(curve_token(draw(vocab::kCurveCount)));

    const Token noise_clause[6] = {vocab::kNa, vocab::kNa, vocab::kNoiseCategory,
                                   vocab::kNa, vocab::kNa, vocab::kNa};
    for (const Token tok : noise_clause) {
      out.target.push_back(tok);
      out.loss_mask.push_back(tok == vocab::kNa ? 0 : 1);
    }
  }
  return out;
}

}  // namespace roadnet
