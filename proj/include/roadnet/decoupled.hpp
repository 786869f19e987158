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

#include "roadnet/graph.hpp"
#include "roadnet/ordering.hpp"
#include "roadnet/vocabulary.hpp"

namespace roadnet {

// [Start, (v_x v_y)*, EOV, NA*, ((child e_mx e_my)* Split)*, EOE, NA*]
// Vertices appear in the coupled traversal order (clones dropped); edge
// group k lists the outgoing edges of vertex k.
struct DecoupledSequence {
  std::vector<Token> tokens;
};

// Fixed block lengths for batching; 0 leaves a block unpadded. The vertex
// block length counts its EOV, the edge block length its EOE.
struct DecoupledLayout {
  std::size_t vertex_block = 0;
  std::size_t edge_block = 0;
};

DecoupledSequence encode_decoupled(const RoadNetwork& net, const OrderingPolicy& policy = {},
                                   const DecoupledLayout& layout = {});
RoadNetwork decode_decoupled(std::span<const Token> tokens, const BevFrame& frame);

struct DecoupledStats {
  std::size_t vertices = 0;
  std::size_t triples = 0;
  std::size_t splits = 0;
};

// Structural counts of a well-formed stream.
DecoupledStats decoupled_stats(std::span<const Token> tokens);

}  // namespace roadnet
