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

#include "clause.hpp"

#include <set>

#include "roadnet/error.hpp"

namespace roadnet::detail {

void append_clause(std::vector<Token>& out, const DirectedForest& forest, std::size_t i,
                   bool with_curve) {
  const ForestNode& node = forest.nodes[i];
  const Cell cell = quantize(forest.frame, node.vertex.pos);
  out.push_back(coord_token(cell.ix));
  out.push_back(coord_token(cell.iy));
  out.push_back(category_token(static_cast<int>(node.category)));
  switch (node.category) {
    case VertexCategory::kAncestor:
    case VertexCategory::kLineal:
      out.push_back(vocab::kNa);
      break;
    case VertexCategory::kOffshoot:
      out.push_back(index_token(*node.parent));
      break;
    case VertexCategory::kClone:
      out.push_back(index_token(*node.clone_of));
      break;
  }
  if (!with_curve) return;
  if (!node.ctrl) {
    out.push_back(vocab::kNa);
    out.push_back(vocab::kNa);
    return;
  }
  const Cell c = quantize_curve(forest.frame, *node.ctrl);
  out.push_back(curve_token(c.ix));
  out.push_back(curve_token(c.iy));
}

namespace {

[[noreturn]] void malformed(const std::string& what, std::size_t position) {
  throw Error(ErrorCode::kMalformedSequence, what, token_location(position));
}

void expect_na(Token t, std::size_t position, const char* slot) {
  if (t != vocab::kNa) {
    malformed(std::string(slot) + " slot must hold NA, found " + std::to_string(t), position);
  }
}

}  // namespace

ClauseReader::ClauseReader(const BevFrame& frame, bool with_curve, bool allow_forward_clones)
    : frame_(frame), with_curve_(with_curve), allow_forward_(allow_forward_clones) {
  forest_.frame = frame;
}

void ClauseReader::begin_tree() {
  expect_root_ = true;
  tree_start_ = forest_.nodes.size();
  last_tree_node_.reset();
}

void ClauseReader::read(std::span<const Token> clause, std::size_t pos) {
  if (clause.size() != width()) malformed("truncated clause", pos);
  const std::size_t index = forest_.nodes.size();
  if (index >= static_cast<std::size_t>(vocab::kIndexCount)) {
    throw Error(ErrorCode::kCapacityExceeded, "more than 100 clauses", token_location(pos));
  }
  const int ix = coord_value(clause[0], pos);
  const int iy = coord_value(clause[1], pos + 1);
  if (ix >= frame_.grid_width() || iy >= frame_.grid_height()) {
    malformed("coordinate outside the frame grid", pos);
  }
  const int code = category_value(clause[2], pos + 2);
  if (code > static_cast<int>(VertexCategory::kClone)) {
    malformed("reserved category code " + std::to_string(code), pos + 2);
  }
  const auto category = static_cast<VertexCategory>(code);

  ForestNode node;
  node.vertex = {VertexId{static_cast<std::int64_t>(index)}, dequantize(frame_, {ix, iy})};
  node.category = category;

  if (expect_root_ && category != VertexCategory::kAncestor) {
    malformed("tree must start with an Ancestor clause", pos + 2);
  }
  if (category != VertexCategory::kAncestor && !last_tree_node_) {
    malformed(std::string(category_name(category)) + " clause before any tree root", pos + 2);
  }

  switch (category) {
    case VertexCategory::kAncestor:
      if (!expect_root_) {
        if (allow_forward_) malformed("second root inside one sub-tree", pos + 2);
        tree_start_ = index;
      }
      expect_na(clause[3], pos + 3, "v_d");
      break;
    case VertexCategory::kLineal:
      expect_na(clause[3], pos + 3, "v_d");
      node.parent = *last_tree_node_;
      break;
    case VertexCategory::kOffshoot: {
      const std::size_t p = index_value(clause[3], pos + 3);
      if (p >= index) malformed("parent index " + std::to_string(p) + " is not an earlier clause", pos + 3);
      if (p < tree_start_) malformed("parent index " + std::to_string(p) + " lies in another tree", pos + 3);
      if (forest_.nodes[p].category == VertexCategory::kClone) {
        malformed("parent index " + std::to_string(p) + " names a clone", pos + 3);
      }
      node.parent = p;
      break;
    }
    case VertexCategory::kClone: {
      const std::size_t o = index_value(clause[3], pos + 3);
      if (!allow_forward_ && o >= index) {
        malformed("clone index " + std::to_string(o) + " is not an earlier clause", pos + 3);
      }
      node.parent = *last_tree_node_;
      node.clone_of = o;
      clone_positions_.emplace_back(index, pos + 3);
      break;
    }
  }

  if (with_curve_) {
    if (category == VertexCategory::kAncestor) {
      expect_na(clause[4], pos + 4, "e_px");
      expect_na(clause[5], pos + 5, "e_py");
    } else {
      const int cx = curve_value(clause[4], pos + 4);
      const int cy = curve_value(clause[5], pos + 5);
      node.ctrl = dequantize_curve(frame_, {cx, cy});
    }
  } else if (category != VertexCategory::kAncestor) {
    node.ctrl = Point{};  // filled with the midpoint in finish()
  }

  if (node.parent) forest_.nodes[*node.parent].children.push_back(index);
  else forest_.roots.push_back(index);
  if (category != VertexCategory::kClone) last_tree_node_ = index;
  forest_.nodes.push_back(std::move(node));
  positions_.push_back(pos);
  expect_root_ = false;
}

DirectedForest ClauseReader::finish() {
  for (const auto& [clone, pos] : clone_positions_) {
    ForestNode& node = forest_.nodes[clone];
    const std::size_t o = *node.clone_of;
    if (o >= forest_.nodes.size()) malformed("clone index " + std::to_string(o) + " names no clause", pos);
    if (forest_.nodes[o].category == VertexCategory::kClone) {
      malformed("clone index " + std::to_string(o) + " names another clone", pos);
    }
    node.vertex = forest_.nodes[o].vertex;
  }
  // Recovered edges as (source node, target node); a repeat or a self-loop
  // means the clause stream is corrupt.
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < forest_.nodes.size(); ++i) {
    const ForestNode& node = forest_.nodes[i];
    if (!node.parent) continue;
    const auto edge = node.clone_of ? std::make_pair(*node.clone_of, *node.parent)
                                    : std::make_pair(*node.parent, i);
    const std::size_t pos = positions_[i];
    if (edge.first == edge.second) malformed("clause encodes a self-loop", pos);
    if (!edges.insert(edge).second) malformed("clause repeats an existing edge", pos);
  }
  if (!with_curve_) {
    for (ForestNode& node : forest_.nodes) {
      if (!node.parent) continue;
      const Point a = node.category == VertexCategory::kClone
                          ? forest_.nodes[*node.clone_of].vertex.pos
                          : forest_.nodes[*node.parent].vertex.pos;
      const Point b = node.category == VertexCategory::kClone
                          ? forest_.nodes[*node.parent].vertex.pos
                          : node.vertex.pos;
      node.ctrl = Point{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
    }
  }
  return std::move(forest_);
}

RoadNetwork recover_network(const DirectedForest& forest) {
  try {
    return from_forest(forest);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInvalidGraph) throw;
    throw Error(ErrorCode::kMalformedSequence, e.what(), "sequence");
  }
}

}  // namespace roadnet::detail
