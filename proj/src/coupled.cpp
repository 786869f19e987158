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

#include "roadnet/coupled.hpp"

#include "clause.hpp"
#include "roadnet/error.hpp"

namespace roadnet {

std::size_t CoupledSequence::clause_count() const {
  std::size_t n = 0;
  while (1 + n * detail::kClauseWidth < tokens.size() &&
         tokens[1 + n * detail::kClauseWidth] != vocab::kEos) {
    ++n;
  }
  return n;
}

namespace {

void pad(std::vector<Token>& tokens, std::size_t pad_to) {
  if (pad_to == 0) return;
  if (tokens.size() > pad_to) {
    throw Error(ErrorCode::kCapacityExceeded, "sequence of " + std::to_string(tokens.size()) +
                                                  " tokens exceeds padded length " +
                                                  std::to_string(pad_to));
  }
  tokens.resize(pad_to, vocab::kNa);
}

}  // namespace

CoupledSequence encode_forest(const DirectedForest& forest, std::size_t pad_to) {
  if (forest.nodes.size() > kMaxForestNodes) {
    throw Error(ErrorCode::kCapacityExceeded,
                "forest has " + std::to_string(forest.nodes.size()) + " vertices, limit is 100");
  }
  CoupledSequence seq;
  seq.tokens.reserve(2 + forest.nodes.size() * detail::kClauseWidth);
  seq.tokens.push_back(vocab::kStart);
  for (std::size_t i = 0; i < forest.nodes.size(); ++i) {
    detail::append_clause(seq.tokens, forest, i, /*with_curve=*/true);
  }
  seq.tokens.push_back(vocab::kEos);
  pad(seq.tokens, pad_to);
  return seq;
}

CoupledSequence encode_coupled(const RoadNetwork& net, const OrderingPolicy& policy,
                               std::size_t pad_to) {
  return encode_forest(to_forest(net, policy), pad_to);
}

DirectedForest decode_coupled_forest(std::span<const Token> tokens, const BevFrame& frame) {
  if (tokens.empty() || tokens[0] != vocab::kStart) {
    throw Error(ErrorCode::kMalformedSequence, "sequence must begin with Start", token_location(0));
  }
  detail::ClauseReader reader(frame, /*with_curve=*/true, /*allow_forward_clones=*/false);
  std::size_t pos = 1;
  bool closed = false;
  while (pos < tokens.size()) {
    if (tokens[pos] == vocab::kEos) {
      closed = true;
      ++pos;
      break;
    }
    const std::size_t take = std::min(detail::kClauseWidth, tokens.size() - pos);
    reader.read(tokens.subspan(pos, take), pos);
    pos += take;
  }
  if (!closed) {
    throw Error(ErrorCode::kMalformedSequence, "missing EOS", token_location(tokens.size()));
  }
  for (; pos < tokens.size(); ++pos) {
    if (tokens[pos] != vocab::kNa) {
      throw Error(ErrorCode::kMalformedSequence,
                  "only NA padding may follow EOS, found " + std::to_string(tokens[pos]),
                  token_location(pos));
    }
  }
  return reader.finish();
}

RoadNetwork decode_coupled(std::span<const Token> tokens, const BevFrame& frame) {
  return detail::recover_network(decode_coupled_forest(tokens, frame));
}

}  // namespace roadnet
