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

#include "roadnet/ordering.hpp"

#include <algorithm>
#include <tuple>

#include "roadnet/error.hpp"

namespace roadnet {

std::string policy_name(const OrderingPolicy& policy) {
  return policy.kind == OrderingPolicy::Kind::kFrontRight ? "front-right" : "random";
}

OrderingPolicy parse_policy(const std::string& name, std::uint64_t seed) {
  if (name == "front-right") return OrderingPolicy::front_right();
  if (name == "random") return OrderingPolicy::random(seed);
  throw Error(ErrorCode::kInvalidArgument, "unknown ordering policy '" + name + "'");
}

ChildOrderer::ChildOrderer(const OrderingPolicy& policy, const BevFrame& frame)
    : policy_(policy), corner_(frame.front_right()), rng_(policy.seed) {}

void ChildOrderer::order(std::vector<OrderItem>& items) {
  if (items.size() < 2) return;
  if (policy_.kind == OrderingPolicy::Kind::kRandom) {
    // Fisher-Yates on raw engine output keeps the permutation identical
    // across standard libraries.
    for (std::size_t i = items.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng_() % (i + 1));
      std::swap(items[i], items[j]);
    }
    return;
  }
  std::stable_sort(items.begin(), items.end(), [&](const OrderItem& a, const OrderItem& b) {
    const double da = distance(a.pos, corner_);
    const double db = distance(b.pos, corner_);
    return std::tie(da, a.pos.x, a.pos.y, a.id) < std::tie(db, b.pos.x, b.pos.y, b.id);
  });
}

std::vector<OrderItem> order_children(std::vector<OrderItem> items, const OrderingPolicy& policy,
                                      const BevFrame& frame) {
  ChildOrderer(policy, frame).order(items);
  return items;
}

}  // namespace roadnet
