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

#include "roadnet/decoupled.hpp"

#include <set>

#include "roadnet/coupled.hpp"
#include "roadnet/error.hpp"
#include "roadnet/forest.hpp"

namespace roadnet {

namespace {

void pad_block(std::vector<Token>& tokens, std::size_t begin, std::size_t length, const char* what) {
  if (length == 0) return;
  const std::size_t used = tokens.size() - begin;
  if (used > length) {
    throw Error(ErrorCode::kCapacityExceeded, std::string(what) + " block needs " +
                                                  std::to_string(used) + " tokens, layout allows " +
                                                  std::to_string(length));
  }
  tokens.resize(begin + length, vocab::kNa);
}

[[noreturn]] void malformed(const std::string& what, std::size_t pos) {
  throw Error(ErrorCode::kMalformedSequence, what, token_location(pos));
}

}  // namespace

DecoupledSequence encode_decoupled(const RoadNetwork& net, const OrderingPolicy& policy,
                                   const DecoupledLayout& layout) {
  const DirectedForest forest = to_forest(net, policy);
  const GraphIndex g(net);

  std::vector<std::size_t> order;  // vertex positions in traversal order
  std::unordered_map<VertexId, std::size_t> rank;
  for (const ForestNode& node : forest.nodes) {
    if (node.category == VertexCategory::kClone) continue;
    rank.emplace(node.vertex.id, order.size());
    order.push_back(g.at(node.vertex.id));
  }
  if (order.size() > static_cast<std::size_t>(vocab::kIndexCount)) {
    throw Error(ErrorCode::kCapacityExceeded,
                "decoupled layout holds at most 100 vertices, got " + std::to_string(order.size()));
  }

  DecoupledSequence seq;
  auto& t = seq.tokens;
  t.push_back(vocab::kStart);
  std::size_t begin = t.size();
  for (const std::size_t v : order) {
    const Cell c = quantize(net.frame, net.vertices[v].pos);
    t.push_back(coord_token(c.ix));
    t.push_back(coord_token(c.iy));
  }
  t.push_back(vocab::kEov);
  pad_block(t, begin, layout.vertex_block, "vertex");

  ChildOrderer orderer(policy, net.frame);
  begin = t.size();
  for (const std::size_t v : order) {
    std::vector<OrderItem> items;
    for (const std::size_t e : g.out_edges(v)) {
      const Vertex& target = net.vertices[g.target_of(e)];
      items.push_back({target.pos, target.id, e});
    }
    orderer.order(items);
    for (const OrderItem& it : items) {
      const Cell c = quantize_curve(net.frame, net.edges[it.payload].ctrl);
      t.push_back(index_token(rank.at(it.id)));
      t.push_back(curve_token(c.ix));
      t.push_back(curve_token(c.iy));
    }
    t.push_back(vocab::kSplit);
  }
  t.push_back(vocab::kEoe);
  pad_block(t, begin, layout.edge_block, "edge");
  return seq;
}

namespace {

struct Parsed {
  std::vector<Cell> cells;
  struct Triple {
    std::size_t source;
    std::size_t target;
    Cell ctrl;
    std::size_t pos;
  };
  std::vector<Triple> triples;
  std::size_t splits = 0;
};

Parsed parse(std::span<const Token> t) {
  Parsed out;
  if (t.empty() || t[0] != vocab::kStart) malformed("sequence must begin with Start", 0);
  std::size_t pos = 1;
  for (;;) {
    if (pos >= t.size()) malformed("missing EOV", pos);
    if (t[pos] == vocab::kEov) {
      ++pos;
      break;
    }
    if (pos + 1 >= t.size()) malformed("truncated vertex pair", pos);
    if (out.cells.size() == static_cast<std::size_t>(vocab::kIndexCount)) {
      throw Error(ErrorCode::kCapacityExceeded, "more than 100 vertices", token_location(pos));
    }
    out.cells.push_back({coord_value(t[pos], pos), coord_value(t[pos + 1], pos + 1)});
    pos += 2;
  }
  while (pos < t.size() && t[pos] == vocab::kNa) ++pos;

  const std::size_t n = out.cells.size();
  std::size_t source = 0;
  for (;;) {
    if (pos >= t.size()) malformed("missing EOE", pos);
    const Token tok = t[pos];
    if (tok == vocab::kEoe) {
      if (source != n) {
        malformed("EOE after " + std::to_string(source) + " Split groups, expected " +
                      std::to_string(n),
                  pos);
      }
      ++pos;
      break;
    }
    if (tok == vocab::kSplit) {
      if (source == n) malformed("more Split groups than vertices", pos);
      ++source;
      ++out.splits;
      ++pos;
      continue;
    }
    if (source == n) malformed("edge triple after the last vertex group", pos);
    if (pos + 2 >= t.size()) malformed("truncated edge triple", pos);
    const std::size_t target = index_value(tok, pos);
    if (target >= n) {
      malformed("child index " + std::to_string(target) + " exceeds vertex count " +
                    std::to_string(n),
                pos);
    }
    out.triples.push_back(
        {source, target, {curve_value(t[pos + 1], pos + 1), curve_value(t[pos + 2], pos + 2)}, pos});
    pos += 3;
  }
  for (; pos < t.size(); ++pos) {
    if (t[pos] != vocab::kNa) malformed("only NA padding may follow EOE", pos);
  }
  return out;
}

}  // namespace

RoadNetwork decode_decoupled(std::span<const Token> tokens, const BevFrame& frame) {
  const Parsed p = parse(tokens);
  RoadNetwork net;
  net.frame = frame;
  for (std::size_t i = 0; i < p.cells.size(); ++i) {
    if (p.cells[i].ix >= frame.grid_width() || p.cells[i].iy >= frame.grid_height()) {
      malformed("coordinate outside the frame grid", 1 + 2 * i);
    }
    net.vertices.push_back({VertexId{static_cast<std::int64_t>(i)}, dequantize(frame, p.cells[i])});
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& tr : p.triples) {
    if (tr.source == tr.target) malformed("edge triple encodes a self-loop", tr.pos);
    if (!seen.emplace(tr.source, tr.target).second) malformed("edge triple repeats an edge", tr.pos);
    net.edges.push_back({VertexId{static_cast<std::int64_t>(tr.source)},
                         VertexId{static_cast<std::int64_t>(tr.target)},
                         dequantize_curve(frame, tr.ctrl)});
  }
  for (const auto& v : validate(net)) {
    if (v.kind == ViolationKind::kCycle) {
      throw Error(ErrorCode::kMalformedSequence, "decoded graph has a " + v.message, "sequence");
    }
  }
  return net;
}

DecoupledStats decoupled_stats(std::span<const Token> tokens) {
  const Parsed p = parse(tokens);
  return {p.cells.size(), p.triples.size(), p.splits};
}

}  // namespace roadnet
