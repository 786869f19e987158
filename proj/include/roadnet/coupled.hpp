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

#include <span>
#include <vector>

#include "roadnet/forest.hpp"
#include "roadnet/graph.hpp"
#include "roadnet/ordering.hpp"
#include "roadnet/vocabulary.hpp"

namespace roadnet {

// [Start, clause*, EOS, NA*]. One 6-token clause per forest node:
// [v_x, v_y, v_c, v_d, e_px, e_py].
struct CoupledSequence {
  std::vector<Token> tokens;

  // Clauses between Start and EOS.
  std::size_t clause_count() const;
};

// Hard limit from the 100-entry index range.
inline constexpr std::size_t kMaxForestNodes = 100;

// pad_to > 0 pads with NA to that many tokens (kCapacityExceeded if the
// sequence is already longer).
CoupledSequence encode_coupled(const RoadNetwork& net, const OrderingPolicy& policy = {},
                               std::size_t pad_to = 0);
CoupledSequence encode_forest(const DirectedForest& forest, std::size_t pad_to = 0);

RoadNetwork decode_coupled(std::span<const Token> tokens, const BevFrame& frame);
DirectedForest decode_coupled_forest(std::span<const Token> tokens, const BevFrame& frame);

}  // namespace roadnet
