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
#include <vector>

#include "roadnet/coupled.hpp"

namespace roadnet {

// Teacher-forcing pair padded with synthetic noise clauses.
//   input  = Start, real clauses, random noise clauses
//   target = real clauses, EOS, noise clauses [NA, NA, noise, NA, NA, NA]
// loss_mask is 0 on the NA slots of noise clauses and 1 elsewhere, so the
// model is only asked to flag noise vertices as noise.
struct NoisePadded {
  std::vector<Token> input;
  std::vector<Token> target;
  std::vector<std::uint8_t> loss_mask;
};

NoisePadded pad_with_noise(const CoupledSequence& target, std::size_t total_clauses,
                           std::uint64_t seed, const BevFrame& frame = {});

}  // namespace roadnet
