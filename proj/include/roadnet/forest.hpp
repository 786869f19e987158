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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "roadnet/graph.hpp"
#include "roadnet/ordering.hpp"

namespace roadnet {

enum class VertexCategory : std::uint8_t {
  kAncestor = 0,
  kLineal = 1,
  kOffshoot = 2,
  kClone = 3,
};

std::string_view category_name(VertexCategory c);

struct ForestNode {
  // Clones carry a copy of the vertex they duplicate (id and position).
  Vertex vertex;
  VertexCategory category = VertexCategory::kAncestor;
  std::optional<std::size_t> parent;
  // Control point of the edge this node stands for: (parent, node) for tree
  // nodes, (original, parent) for clones. Absent on roots.
  std::optional<Point> ctrl;
  std::optional<std::size_t> clone_of;
  std::vector<std::size_t> children;
};

// Clone-augmented forest. Nodes are stored in traversal order; a node's
// position is its topological index. Within every child list the clones come
// first, then the tree children.
struct DirectedForest {
  BevFrame frame;
  std::vector<ForestNode> nodes;
  std::vector<std::size_t> roots;

  // clone node -> original node
  std::map<std::size_t, std::size_t> clone_map() const;
  std::size_t clone_count() const;
  std::size_t edge_count() const;  // number of non-root nodes
};

// Structural invariants; empty when the forest is well formed.
std::vector<std::string> forest_problems(const DirectedForest& forest);

// DAG -> forest. Traversal is a depth-first search in which a vertex is
// entered only after all of its parents have been emitted; it hangs under
// the last of them, and every other parent is replicated as a Clone leaf of
// the vertex carrying that edge's control point. Clone count per vertex is
// in-degree - 1.
DirectedForest to_forest(const RoadNetwork& net, const OrderingPolicy& policy = {});

// Inverse of to_forest: clone leaves become edges (original -> parent).
RoadNetwork from_forest(const DirectedForest& forest);

// Key-point sub-trees for the semi-autoregressive layout. Every key-point is
// a root; each severed edge (p, k) into a key-point k is kept as a Clone of
// p under k. Trees are contiguous in forest.nodes.
struct SarTreeSet {
  DirectedForest forest;
  std::vector<std::size_t> tree_begin;  // first node of each tree

  std::size_t tree_count() const { return tree_begin.size(); }
  std::size_t tree_size(std::size_t i) const;
};

SarTreeSet split_sar(const RoadNetwork& net, const OrderingPolicy& policy = {});

}  // namespace roadnet
