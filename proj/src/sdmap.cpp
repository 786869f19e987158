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

#include "roadnet/sdmap.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "clause.hpp"
#include "roadnet/error.hpp"
#include "roadnet/forest.hpp"

namespace roadnet {

std::vector<std::string> sdmap_problems(const SdMap& map) {
  std::vector<std::string> out = map.frame.problems();
  std::unordered_map<VertexId, std::size_t> index;
  for (const Vertex& v : map.nodes) {
    if (!index.emplace(v.id, 0).second) out.push_back("duplicate node id " + std::to_string(v.id.value));
    if (out.empty() && !map.frame.contains(v.pos)) {
      out.push_back("node " + std::to_string(v.id.value) + " lies outside the frame");
    }
  }
  std::set<std::pair<VertexId, VertexId>> seen;
  for (const Link& l : map.links) {
    const std::string name = std::to_string(l.source.value) + "->" + std::to_string(l.target.value);
    if (!index.contains(l.source) || !index.contains(l.target)) {
      out.push_back("link " + name + " references an unknown node");
    } else if (l.source == l.target) {
      out.push_back("self-loop link " + name);
    } else if (!seen.emplace(l.source, l.target).second) {
      out.push_back("duplicate link " + name);
    }
  }
  return out;
}

namespace {

Point midpoint(Point a, Point b) { return {(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}; }

}  // namespace

SdDag cyclic_to_dag(const SdMap& map, const OrderingPolicy& policy) {
  const auto problems = sdmap_problems(map);
  if (!problems.empty()) throw Error(ErrorCode::kInvalidGraph, "invalid SD-Map: " + problems.front());

  const std::size_t n = map.nodes.size();
  std::unordered_map<VertexId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(map.nodes[i].id, i);
  std::vector<std::vector<std::size_t>> out_links(n);
  std::vector<std::size_t> in_degree(n, 0);
  for (std::size_t l = 0; l < map.links.size(); ++l) {
    out_links[index.at(map.links[l].source)].push_back(l);
    ++in_degree[index.at(map.links[l].target)];
  }

  ChildOrderer orderer(policy, map.frame);
  auto ordered = [&](std::vector<std::size_t> nodes) {
    std::vector<OrderItem> items;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      items.push_back({map.nodes[nodes[k]].pos, map.nodes[nodes[k]].id, nodes[k]});
    }
    orderer.order(items);
    std::vector<std::size_t> res;
    for (const auto& it : items) res.push_back(it.payload);
    return res;
  };

  SdDag out;
  out.network.frame = map.frame;
  out.network.vertices = map.nodes;
  std::int64_t next_id = 0;
  for (const Vertex& v : map.nodes) next_id = std::max(next_id, v.id.value + 1);

  enum State : std::uint8_t { kUnseen, kOnStack, kDone };
  std::vector<State> state(n, kUnseen);
  struct Frame {
    std::size_t node;
    std::vector<std::size_t> targets;  // node indices, policy order
    std::size_t next = 0;
  };

  auto run = [&](std::size_t start) {
    auto targets_of = [&](std::size_t u) {
      std::vector<std::size_t> t;
      for (const std::size_t l : out_links[u]) t.push_back(index.at(map.links[l].target));
      return ordered(std::move(t));
    };
    state[start] = kOnStack;
    std::vector<Frame> stack{{start, targets_of(start)}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next == f.targets.size()) {
        state[f.node] = kDone;
        stack.pop_back();
        continue;
      }
      const std::size_t u = f.node;
      const std::size_t w = f.targets[f.next++];
      const Vertex& from = map.nodes[u];
      const Vertex& to = map.nodes[w];
      if (state[w] == kOnStack) {
        const Vertex dup{VertexId{next_id++}, to.pos};
        out.network.vertices.push_back(dup);
        out.network.edges.push_back({from.id, dup.id, midpoint(from.pos, dup.pos)});
        out.duplicates.emplace_back(dup.id, to.id);
        continue;
      }
      out.network.edges.push_back({from.id, to.id, midpoint(from.pos, to.pos)});
      if (state[w] == kUnseen) {
        state[w] = kOnStack;
        stack.push_back({w, targets_of(w)});
      }
    }
  };

  std::vector<std::size_t> sources, all(n);
  for (std::size_t i = 0; i < n; ++i) {
    all[i] = i;
    if (in_degree[i] == 0) sources.push_back(i);
  }
  for (const std::size_t s : ordered(sources)) {
    if (state[s] == kUnseen) run(s);
  }
  for (const std::size_t s : ordered(all)) {
    if (state[s] == kUnseen) run(s);
  }
  return out;
}

SdMapSequence encode_sdmap(const SdMap& map, const OrderingPolicy& policy) {
  const SdDag dag = cyclic_to_dag(map, policy);
  const DirectedForest forest = to_forest(dag.network, policy);
  if (forest.nodes.size() > kMaxForestNodes) {
    throw Error(ErrorCode::kCapacityExceeded,
                "SD-Map forest has " + std::to_string(forest.nodes.size()) +
                    " vertices, limit is 100");
  }
  SdMapSequence seq;
  seq.tokens.push_back(vocab::kStart);
  for (std::size_t i = 0; i < forest.nodes.size(); ++i) {
    detail::append_clause(seq.tokens, forest, i, /*with_curve=*/false);
  }
  seq.tokens.push_back(vocab::kEos);
  return seq;
}

RoadNetwork decode_sdmap(std::span<const Token> tokens, const BevFrame& frame) {
  if (tokens.empty() || tokens[0] != vocab::kStart) {
    throw Error(ErrorCode::kMalformedSequence, "SD-Map sequence must begin with Start",
                token_location(0));
  }
  detail::ClauseReader reader(frame, /*with_curve=*/false, /*allow_forward_clones=*/false);
  std::size_t pos = 1;
  bool closed = false;
  while (pos < tokens.size()) {
    if (tokens[pos] == vocab::kEos) {
      closed = true;
      ++pos;
      break;
    }
    const std::size_t take = std::min(reader.width(), tokens.size() - pos);
    reader.read(tokens.subspan(pos, take), pos);
    pos += take;
  }
  if (!closed) throw Error(ErrorCode::kMalformedSequence, "missing EOS", token_location(tokens.size()));
  for (; pos < tokens.size(); ++pos) {
    if (tokens[pos] != vocab::kNa) {
      throw Error(ErrorCode::kMalformedSequence, "only NA padding may follow EOS",
                  token_location(pos));
    }
  }
  return detail::recover_network(reader.finish());
}

namespace {

void check_segment(std::span<const Token> seg, const char* what) {
  if (seg.empty() || seg[0] != vocab::kStart) {
    throw Error(ErrorCode::kMalformedSequence, std::string(what) + " must begin with Start",
                what);
  }
  if (std::find(seg.begin(), seg.end(), vocab::kEos) == seg.end()) {
    throw Error(ErrorCode::kMalformedSequence, std::string(what) + " has no EOS", what);
  }
}

}  // namespace

std::vector<Token> prompt_concat(const SdMapSequence& prompt, const CoupledSequence& seq) {
  check_segment(prompt.tokens, "prompt");
  if (prompt.tokens.back() != vocab::kEos ||
      std::count(prompt.tokens.begin(), prompt.tokens.end(), vocab::kEos) != 1) {
    throw Error(ErrorCode::kMalformedSequence, "prompt must end at its only EOS", "prompt");
  }
  check_segment(seq.tokens, "sequence");
  std::vector<Token> out = prompt.tokens;
  out.insert(out.end(), seq.tokens.begin(), seq.tokens.end());
  return out;
}

std::pair<std::span<const Token>, std::span<const Token>> split_prompted(
    std::span<const Token> stream) {
  check_segment(stream, "prompt");
  const auto eos = std::find(stream.begin(), stream.end(), vocab::kEos);
  const std::size_t cut = static_cast<std::size_t>(eos - stream.begin()) + 1;
  return {stream.first(cut), stream.subspan(cut)};
}

RoadNetwork decode_prompted(std::span<const Token> stream, const BevFrame& frame) {
  const auto [prompt, rest] = split_prompted(stream);
  (void)prompt;
  try {
    return decode_coupled(rest, frame);
  } catch (const Error& e) {
    // Re-anchor token positions onto the combined stream.
    std::string loc = e.location();
    if (loc.rfind("token ", 0) == 0) {
      loc = token_location(std::stoul(loc.substr(6)) + prompt.size());
    }
    throw Error(e.code(), e.what(), loc);
  }
}

}  // namespace roadnet
