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
#include <string>
#include <utility>
#include <vector>

#include "roadnet/coupled.hpp"
#include "roadnet/graph.hpp"
#include "roadnet/ordering.hpp"

namespace roadnet {

struct Link {
  VertexId source;
  VertexId target;
};

// Road-level navigation map. May contain cycles; a two-way road is a pair
// of opposite links.
struct SdMap {
  BevFrame frame;
  std::vector<Vertex> nodes;
  std::vector<Link> links;
};

std::vector<std::string> sdmap_problems(const SdMap& map);

struct SdDag {
  RoadNetwork network;  // straight edges: control point at the segment midpoint
  std::vector<std::pair<VertexId, VertexId>> duplicates;  // (duplicate, original)
};

// Depth-first search from every in-degree-0 node, then from any node still
// unvisited, both in policy order. A link that closes a cycle (its target is
// on the current DFS stack) is redirected to a fresh leaf copying the
// target's location. Link count is preserved.
SdDag cyclic_to_dag(const SdMap& map, const OrderingPolicy& policy = {});

// Start, 4-token clauses [v_x, v_y, v_c, v_d], EOS. No curve tokens.
struct SdMapSequence {
  std::vector<Token> tokens;
};

SdMapSequence encode_sdmap(const SdMap& map, const OrderingPolicy& policy = {});
RoadNetwork decode_sdmap(std::span<const Token> tokens, const BevFrame& frame);

// SD-Map prompt followed by a coupled RoadNet sequence.
std::vector<Token> prompt_concat(const SdMapSequence& prompt, const CoupledSequence& seq);

// Splits a prompted stream at the prompt's EOS.
std::pair<std::span<const Token>, std::span<const Token>> split_prompted(
    std::span<const Token> stream);

// Skips the prompt segment and decodes the RoadNet segment.
RoadNetwork decode_prompted(std::span<const Token> stream, const BevFrame& frame);

}  // namespace roadnet
