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
#include <random>
#include <string>
#include <vector>

#include "roadnet/geometry.hpp"
#include "roadnet/graph.hpp"

namespace roadnet {

// How siblings (and tree roots) are ordered during traversal.
struct OrderingPolicy {
  enum class Kind { kFrontRight, kRandom };
  Kind kind = Kind::kFrontRight;
  std::uint64_t seed = 0;

  static OrderingPolicy front_right() { return {}; }
  static OrderingPolicy random(std::uint64_t seed) { return {Kind::kRandom, seed}; }
};

std::string policy_name(const OrderingPolicy& policy);
OrderingPolicy parse_policy(const std::string& name, std::uint64_t seed);

struct OrderItem {
  Point pos;
  VertexId id;
  std::size_t payload = 0;  // caller data, carried through unchanged
};

// Stateful orderer: the random policy draws from one seeded stream, so a
// traversal that orders many sibling lists stays reproducible.
class ChildOrderer {
 public:
  ChildOrderer(const OrderingPolicy& policy, const BevFrame& frame);

  // Front-right: ascending Euclidean distance to (x_max, y_min), ties by x,
  // then y, then id. Random: a seeded shuffle.
  void order(std::vector<OrderItem>& items);

 private:
  OrderingPolicy policy_;
  Point corner_;
  std::mt19937_64 rng_;
};

// One-shot convenience wrapper.
std::vector<OrderItem> order_children(std::vector<OrderItem> items, const OrderingPolicy& policy,
                                      const BevFrame& frame);

}  // namespace roadnet
