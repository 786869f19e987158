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

#include "roadnet/forest.hpp"

#include <algorithm>
#include <set>

#include "roadnet/error.hpp"

namespace roadnet {

std::string_view category_name(VertexCategory c) {
  switch (c) {
    case VertexCategory::kAncestor: return "Ancestor";
    case VertexCategory::kLineal: return "Lineal";
    case VertexCategory::kOffshoot: return "Offshoot";
    case VertexCategory::kClone: return "Clone";
  }
  return "?";
}

std::map<std::size_t, std::size_t> DirectedForest::clone_map() const {
  std::map<std::size_t, std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].clone_of) out.emplace(i, *nodes[i].clone_of);
  }
  return out;
}

std::size_t DirectedForest::clone_count() const {
  std::size_t n = 0;
  for (const auto& node : nodes) n += node.category == VertexCategory::kClone;
  return n;
}

std::size_t DirectedForest::edge_count() const { return nodes.size() - roots.size(); }

std::size_t SarTreeSet::tree_size(std::size_t i) const {
  const std::size_t end = i + 1 < tree_begin.size() ? tree_begin[i + 1] : forest.nodes.size();
  return end - tree_begin[i];
}

std::vector<std::string> forest_problems(const DirectedForest& forest) {
  std::vector<std::string> out;
  const std::size_t n = forest.nodes.size();
  auto where = [](std::size_t i) { return "node " + std::to_string(i) + ": "; };
  std::set<std::size_t> roots(forest.roots.begin(), forest.roots.end());
  if (roots.size() != forest.roots.size()) out.push_back("duplicate root entry");
  for (std::size_t i = 0; i < n; ++i) {
    const ForestNode& node = forest.nodes[i];
    const bool is_root = !node.parent.has_value();
    if (is_root != (node.category == VertexCategory::kAncestor)) {
      out.push_back(where(i) + "Ancestor category must coincide with being a root");
    }
    if (is_root != !node.ctrl.has_value()) {
      out.push_back(where(i) + "roots carry no edge payload, other nodes must");
    }
    if (is_root != roots.contains(i)) out.push_back(where(i) + "root list disagrees with parent link");
    if (node.parent) {
      if (*node.parent >= n) {
        out.push_back(where(i) + "parent out of range");
      } else {
        const auto& siblings = forest.nodes[*node.parent].children;
        if (std::find(siblings.begin(), siblings.end(), i) == siblings.end()) {
          out.push_back(where(i) + "missing from its parent's child list");
        }
        if (forest.nodes[*node.parent].category == VertexCategory::kClone) {
          out.push_back(where(i) + "a clone cannot have children");
        }
      }
    }
    for (const std::size_t c : node.children) {
      if (c >= n || forest.nodes[c].parent != i) out.push_back(where(i) + "child link inconsistent");
    }
    const bool is_clone = node.category == VertexCategory::kClone;
    if (is_clone != node.clone_of.has_value()) {
      out.push_back(where(i) + "clone category and clone link must agree");
    }
    if (node.clone_of) {
      if (*node.clone_of >= n) {
        out.push_back(where(i) + "clone references a missing vertex");
      } else if (forest.nodes[*node.clone_of].category == VertexCategory::kClone) {
        out.push_back(where(i) + "clone references another clone");
      }
      if (!node.children.empty()) out.push_back(where(i) + "clone must be a leaf");
    }
  }
  return out;
}

namespace {

std::vector<OrderItem> items_for(const RoadNetwork& net, const std::vector<std::size_t>& vertices) {
  std::vector<OrderItem> items;
  items.reserve(vertices.size());
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    const Vertex& v = net.vertices[vertices[k]];
    items.push_back({v.pos, v.id, k});
  }
  return items;
}

// Orders a list of edges by the position of the vertex picked by `end`.
template <class End>
std::vector<std::size_t> ordered_edges(const RoadNetwork& net, std::vector<std::size_t> edges,
                                       End end, ChildOrderer& orderer) {
  std::vector<std::size_t> ends;
  ends.reserve(edges.size());
  for (const std::size_t e : edges) ends.push_back(end(e));
  auto items = items_for(net, ends);
  orderer.order(items);
  std::vector<std::size_t> out;
  out.reserve(edges.size());
  for (const auto& it : items) out.push_back(edges[it.payload]);
  return out;
}

std::size_t append_node(DirectedForest& f, ForestNode node) {
  const std::size_t idx = f.nodes.size();
  if (node.parent) f.nodes[*node.parent].children.push_back(idx);
  else f.roots.push_back(idx);
  f.nodes.push_back(std::move(node));
  return idx;
}

VertexCategory child_category(const DirectedForest& f, std::size_t parent) {
  for (const std::size_t c : f.nodes[parent].children) {
    if (f.nodes[c].category != VertexCategory::kClone) return VertexCategory::kOffshoot;
  }
  return VertexCategory::kLineal;
}

}  // namespace

DirectedForest to_forest(const RoadNetwork& net, const OrderingPolicy& policy) {
  require_valid(net);
  const GraphIndex g(net);
  const std::size_t n = net.vertices.size();
  ChildOrderer orderer(policy, net.frame);

  DirectedForest forest;
  forest.frame = net.frame;
  forest.nodes.reserve(n + net.edges.size());

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> remaining(n), node_of(n, kNone);
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < n; ++v) {
    remaining[v] = g.in_edges(v).size();
    if (remaining[v] == 0) roots.push_back(v);
  }
  {
    auto items = items_for(net, roots);
    orderer.order(items);
    std::vector<std::size_t> sorted;
    for (const auto& it : items) sorted.push_back(roots[it.payload]);
    roots = std::move(sorted);
  }

  struct Frame {
    std::size_t vertex;
    std::size_t node;
    std::vector<std::size_t> children;  // out-edge indices, policy order
    std::size_t next = 0;
  };
  std::vector<Frame> stack;

  // Emits `v` (entered through edge `via`, if any), its clone leaves, and
  // pushes its frame.
  auto enter = [&](std::size_t v, std::optional<std::size_t> via) {
    ForestNode node{net.vertices[v], VertexCategory::kAncestor, std::nullopt, std::nullopt,
                    std::nullopt, {}};
    std::size_t kept_parent = kNone;
    if (via) {
      kept_parent = g.source_of(*via);
      node.parent = node_of[kept_parent];
      node.ctrl = net.edges[*via].ctrl;
      node.category = child_category(forest, *node.parent);
    }
    const std::size_t idx = append_node(forest, std::move(node));
    node_of[v] = idx;

    std::vector<std::size_t> merged;
    for (const std::size_t e : g.in_edges(v)) {
      if (g.source_of(e) != kept_parent) merged.push_back(e);
    }
    for (const std::size_t e :
         ordered_edges(net, merged, [&](std::size_t x) { return g.source_of(x); }, orderer)) {
      const std::size_t original = g.source_of(e);
      append_node(forest, ForestNode{net.vertices[original], VertexCategory::kClone, idx,
                                     net.edges[e].ctrl, node_of[original], {}});
    }
    stack.push_back({v, idx,
                     ordered_edges(net, g.out_edges(v),
                                   [&](std::size_t x) { return g.target_of(x); }, orderer)});
  };

  for (const std::size_t r : roots) {
    enter(r, std::nullopt);
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == f.children.size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t e = f.children[f.next++];
      const std::size_t w = g.target_of(e);
      if (--remaining[w] == 0) enter(w, e);
    }
  }
  return forest;
}

RoadNetwork from_forest(const DirectedForest& forest) {
  const auto problems = forest_problems(forest);
  if (!problems.empty()) throw Error(ErrorCode::kInvalidGraph, "malformed forest: " + problems.front());

  RoadNetwork net;
  net.frame = forest.frame;
  std::set<VertexId> ids;
  for (const ForestNode& node : forest.nodes) {
    if (node.category == VertexCategory::kClone) continue;
    if (!ids.insert(node.vertex.id).second) {
      throw Error(ErrorCode::kInvalidGraph,
                  "forest holds vertex id " + std::to_string(node.vertex.id.value) + " twice");
    }
    net.vertices.push_back(node.vertex);
  }
  std::set<std::pair<VertexId, VertexId>> seen;
  for (std::size_t i = 0; i < forest.nodes.size(); ++i) {
    const ForestNode& node = forest.nodes[i];
    if (!node.parent) continue;
    const ForestNode& parent = forest.nodes[*node.parent];
    Edge e;
    if (node.category == VertexCategory::kClone) {
      e = {forest.nodes[*node.clone_of].vertex.id, parent.vertex.id, *node.ctrl};
    } else {
      e = {parent.vertex.id, node.vertex.id, *node.ctrl};
    }
    if (!seen.emplace(e.source, e.target).second) {
      throw Error(ErrorCode::kInvalidGraph,
                  "clone at node " + std::to_string(i) + " duplicates edge " +
                      std::to_string(e.source.value) + "->" + std::to_string(e.target.value),
                  "node " + std::to_string(i));
    }
    net.edges.push_back(e);
  }
  for (const auto& v : validate(net)) {
    if (v.kind == ViolationKind::kCycle || v.kind == ViolationKind::kSelfLoop) {
      throw Error(ErrorCode::kInvalidGraph, "recovered graph is not acyclic: " + v.message);
    }
  }
  return net;
}

SarTreeSet split_sar(const RoadNetwork& net, const OrderingPolicy& policy) {
  require_valid(net);
  const GraphIndex g(net);
  const std::size_t n = net.vertices.size();
  ChildOrderer orderer(policy, net.frame);

  std::vector<bool> is_key(n, false);
  std::vector<std::size_t> keys;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t in = g.in_edges(v).size();
    if (in == 0 || in > 1 || g.out_edges(v).size() > 1) {
      is_key[v] = true;
      keys.push_back(v);
    }
  }
  {
    auto items = items_for(net, keys);
    orderer.order(items);
    std::vector<std::size_t> sorted;
    for (const auto& it : items) sorted.push_back(keys[it.payload]);
    keys = std::move(sorted);
  }

  SarTreeSet out;
  out.forest.frame = net.frame;
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> node_of(n, kNone);
  std::vector<std::pair<std::size_t, std::size_t>> pending;  // clone node, original vertex

  struct Frame {
    std::size_t node;
    std::vector<std::size_t> children;
    std::size_t next = 0;
  };
  for (const std::size_t k : keys) {
    out.tree_begin.push_back(out.forest.nodes.size());
    const std::size_t root = append_node(out.forest, ForestNode{net.vertices[k]});
    node_of[k] = root;
    for (const std::size_t e : ordered_edges(
             net, g.in_edges(k), [&](std::size_t x) { return g.source_of(x); }, orderer)) {
      const std::size_t clone = append_node(
          out.forest, ForestNode{net.vertices[g.source_of(e)], VertexCategory::kClone, root,
                                 net.edges[e].ctrl, std::nullopt, {}});
      pending.emplace_back(clone, g.source_of(e));
    }

    auto tree_children = [&](std::size_t v) {
      std::vector<std::size_t> kept;
      for (const std::size_t e : g.out_edges(v)) {
        if (!is_key[g.target_of(e)]) kept.push_back(e);
      }
      return ordered_edges(net, kept, [&](std::size_t x) { return g.target_of(x); }, orderer);
    };
    std::vector<Frame> stack{{root, tree_children(k)}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == f.children.size()) {
        stack.pop_back();
        continue;
      }
      const std::size_t e = f.children[f.next++];
      const std::size_t w = g.target_of(e);
      const std::size_t parent = f.node;
      const std::size_t idx = append_node(
          out.forest, ForestNode{net.vertices[w], child_category(out.forest, parent), parent,
                                 net.edges[e].ctrl, std::nullopt, {}});
      node_of[w] = idx;
      stack.push_back({idx, tree_children(w)});
    }
  }
  for (const auto& [clone, original] : pending) out.forest.nodes[clone].clone_of = node_of[original];
  return out;
}

}  // namespace roadnet
