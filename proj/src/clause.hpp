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

// Clause-level encoding shared by the coupled, semi-autoregressive and
// SD-Map codecs. A clause is [v_x, v_y, v_c, v_d, e_px, e_py]; SD-Map clauses
// drop the two curve slots.

#include <span>
#include <vector>

#include "roadnet/forest.hpp"
#include "roadnet/vocabulary.hpp"

namespace roadnet::detail {

inline constexpr std::size_t kClauseWidth = 6;
inline constexpr std::size_t kPlainClauseWidth = 4;

void append_clause(std::vector<Token>& out, const DirectedForest& forest, std::size_t node,
                   bool with_curve);

// Rebuilds a forest one clause at a time. `position` arguments are absolute
// token offsets used in error locations.
class ClauseReader {
 public:
  ClauseReader(const BevFrame& frame, bool with_curve, bool allow_forward_clones);

  std::size_t width() const { return with_curve_ ? kClauseWidth : kPlainClauseWidth; }

  // Marks the start of a tree whose first clause must be an Ancestor.
  void begin_tree();
  void read(std::span<const Token> clause, std::size_t position);

  // Resolves clone links and returns the forest. Straight edges (SD-Map)
  // get the segment midpoint as control point.
  DirectedForest finish();

  std::size_t node_count() const { return forest_.nodes.size(); }

 private:
  BevFrame frame_;
  bool with_curve_;
  bool allow_forward_;
  bool expect_root_ = false;
  std::size_t tree_start_ = 0;
  std::optional<std::size_t> last_tree_node_;
  DirectedForest forest_;
  std::vector<std::pair<std::size_t, std::size_t>> clone_positions_;  // node, token position
  std::vector<std::size_t> positions_;                                // first token of each node
};

// from_forest for decoders: structural failures surface as
// kMalformedSequence.
RoadNetwork recover_network(const DirectedForest& forest);

}  // namespace roadnet::detail
