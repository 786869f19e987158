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

#include "roadnet/sar.hpp"

#include "clause.hpp"
#include "roadnet/coupled.hpp"
#include "roadnet/error.hpp"

namespace roadnet {

std::span<const Token> SarSequence::row(std::size_t i) const {
  return std::span<const Token>(tokens).subspan(i * layout.row_length, layout.row_length);
}

std::span<Token> SarSequence::row(std::size_t i) {
  return std::span<Token>(tokens).subspan(i * layout.row_length, layout.row_length);
}

bool SarSequence::row_valid(std::size_t i) const {
  return layout.row_length > 0 && row(i)[0] != vocab::kNa;
}

std::size_t SarSequence::valid_rows() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < layout.rows; ++i) n += row_valid(i);
  return n;
}

std::vector<Token> KeyPointPrompt::tokens_for_row(std::size_t row) const {
  if (row >= key_points.size()) {
    throw Error(ErrorCode::kInvalidArgument, "row " + std::to_string(row) + " has no key-point");
  }
  std::vector<Token> out;
  out.reserve(2 * key_points.size() + 2);
  for (const Cell& c : key_points) {
    out.push_back(coord_token(c.ix));
    out.push_back(coord_token(c.iy));
  }
  out.push_back(coord_token(key_points[row].ix));
  out.push_back(coord_token(key_points[row].iy));
  return out;
}

namespace {

void check_layout(const SarLayout& layout) {
  if (layout.rows == 0 || layout.row_length < detail::kClauseWidth ||
      layout.row_length % detail::kClauseWidth != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "SAR rows must be a positive multiple of 6 tokens long");
  }
}

}  // namespace

SarEncoding encode_sar_trees(const SarTreeSet& trees, const SarLayout& layout) {
  check_layout(layout);
  const DirectedForest& forest = trees.forest;
  if (trees.tree_count() > layout.rows) {
    throw Error(ErrorCode::kCapacityExceeded, std::to_string(trees.tree_count()) +
                                                  " key-points exceed the " +
                                                  std::to_string(layout.rows) + "-row layout");
  }
  if (forest.nodes.size() > kMaxForestNodes) {
    throw Error(ErrorCode::kCapacityExceeded,
                "sub-trees hold " + std::to_string(forest.nodes.size()) + " vertices, limit is 100");
  }
  SarEncoding out;
  out.sequence.layout = layout;
  out.sequence.tokens.assign(layout.rows * layout.row_length, vocab::kNa);
  for (std::size_t r = 0; r < trees.tree_count(); ++r) {
    const std::size_t begin = trees.tree_begin[r];
    const std::size_t size = trees.tree_size(r);
    if (size * detail::kClauseWidth > layout.row_length) {
      throw Error(ErrorCode::kCapacityExceeded,
                  "sub-tree " + std::to_string(r) + " needs " + std::to_string(size) +
                      " clauses, a row holds " + std::to_string(layout.row_length / detail::kClauseWidth));
    }
    std::vector<Token> row;
    for (std::size_t i = begin; i < begin + size; ++i) {
      detail::append_clause(row, forest, i, /*with_curve=*/true);
    }
    if (row.size() < layout.row_length) row.push_back(vocab::kEos);
    std::copy(row.begin(), row.end(), out.sequence.row(r).begin());
    out.prompt.key_points.push_back(quantize(forest.frame, forest.nodes[begin].vertex.pos));
  }
  return out;
}

SarEncoding encode_sar(const RoadNetwork& net, const OrderingPolicy& policy,
                       const SarLayout& layout) {
  return encode_sar_trees(split_sar(net, policy), layout);
}

RoadNetwork decode_sar(const SarSequence& seq, const BevFrame& frame,
                       const KeyPointPrompt* prompt) {
  check_layout(seq.layout);
  const std::size_t width = seq.layout.row_length;
  if (seq.tokens.size() != seq.layout.rows * width) {
    throw Error(ErrorCode::kMalformedSequence, "token count does not match the SAR layout",
                "sequence");
  }
  detail::ClauseReader reader(frame, /*with_curve=*/true, /*allow_forward_clones=*/true);
  std::vector<Cell> roots;
  for (std::size_t r = 0; r < seq.layout.rows; ++r) {
    const auto row = seq.row(r);
    const std::size_t base = r * width;
    if (row[0] == vocab::kNa) {
      for (std::size_t k = 1; k < width; ++k) {
        if (row[k] != vocab::kNa) {
          throw Error(ErrorCode::kMalformedSequence, "invalid row must be entirely NA",
                      token_location(base + k));
        }
      }
      continue;
    }
    reader.begin_tree();
    std::size_t k = 0;
    while (k < width && row[k] != vocab::kEos) {
      reader.read(row.subspan(k, detail::kClauseWidth), base + k);
      if (k == 0) roots.push_back({row[0] - vocab::kCoordBase, row[1] - vocab::kCoordBase});
      k += detail::kClauseWidth;
    }
    for (k = k + 1; k < width; ++k) {
      if (row[k] != vocab::kNa) {
        throw Error(ErrorCode::kMalformedSequence, "only NA padding may follow EOS in a row",
                    token_location(base + k));
      }
    }
  }
  if (prompt) {
    if (prompt->key_points.size() != roots.size()) {
      throw Error(ErrorCode::kMalformedSequence,
                  "prompt lists " + std::to_string(prompt->key_points.size()) +
                      " key-points but the sequence has " + std::to_string(roots.size()) +
                      " valid rows",
                  "prompt");
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (!(prompt->key_points[i] == roots[i])) {
        throw Error(ErrorCode::kMalformedSequence,
                    "row " + std::to_string(i) + " does not start at its prompted key-point",
                    "prompt");
      }
    }
  }
  return detail::recover_network(reader.finish());
}

std::vector<std::size_t> sar_content_positions(const SarSequence& seq) {
  std::vector<std::size_t> out;
  const std::size_t width = seq.layout.row_length;
  for (std::size_t r = 0; r < seq.layout.rows; ++r) {
    if (!seq.row_valid(r)) continue;
    const auto row = seq.row(r);
    for (std::size_t k = 0; k < width; ++k) {
      if (row[k] == vocab::kNa && k % detail::kClauseWidth == 0) break;
      out.push_back(r * width + k);
      if (row[k] == vocab::kEos) break;
    }
  }
  return out;
}

}  // namespace roadnet
