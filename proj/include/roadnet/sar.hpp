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

#include <optional>
#include <span>
#include <vector>

#include "roadnet/forest.hpp"
#include "roadnet/graph.hpp"
#include "roadnet/ordering.hpp"
#include "roadnet/vocabulary.hpp"

namespace roadnet {

// Shape of the 2-D semi-autoregressive sequence: `rows` sub-sequences of
// `row_length` tokens each.
struct SarLayout {
  std::size_t rows = 34;
  std::size_t row_length = 6 * 18;
};

// Row-major rows x row_length tokens. A valid row is the clause run of one
// key-point sub-tree (no Start), closed by EOS when there is room, then NA.
// Invalid rows are entirely NA. Parent and clone indices are global clause
// positions counted across valid rows in order.
struct SarSequence {
  SarLayout layout;
  std::vector<Token> tokens;

  std::span<const Token> row(std::size_t i) const;
  std::span<Token> row(std::size_t i);
  bool row_valid(std::size_t i) const;
  std::size_t valid_rows() const;
};

// Quantized key-point locations in row order. The prompt of row i is every
// key-point followed by the row's own start key-point.
struct KeyPointPrompt {
  std::vector<Cell> key_points;

  std::vector<Token> tokens_for_row(std::size_t row) const;
};

struct SarEncoding {
  SarSequence sequence;
  KeyPointPrompt prompt;
};

SarEncoding encode_sar(const RoadNetwork& net, const OrderingPolicy& policy = {},
                       const SarLayout& layout = {});
SarEncoding encode_sar_trees(const SarTreeSet& trees, const SarLayout& layout = {});

// When a prompt is given its key-points must match the valid rows' roots.
RoadNetwork decode_sar(const SarSequence& seq, const BevFrame& frame,
                       const KeyPointPrompt* prompt = nullptr);

// Positions (row-major) that carry sub-tree content: clause tokens and the
// closing EOS of valid rows.
std::vector<std::size_t> sar_content_positions(const SarSequence& seq);

}  // namespace roadnet
