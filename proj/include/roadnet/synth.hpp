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

#include "roadnet/graph.hpp"
#include "roadnet/sdmap.hpp"

namespace roadnet {

struct GenConfig {
  std::uint64_t seed = 0;
  int min_trees = 1;
  int max_trees = 4;
  double branch_probability = 0.3;
  double merge_probability = 0.2;
  double continue_probability = 0.85;  // chance a vertex grows at least one child
  int max_vertices = 40;               // at most 100
  BevFrame frame;
  double min_spacing = 2.0;  // meters
  double min_step = 4.0;     // parent-child distance range, meters
  double max_step = 12.0;
  double ctrl_jitter = 2.0;  // meters around the segment midpoint
  int max_attempts = 64;
};

// Random forest of roads grown from 1..N roots, plus merge edges from leaves
// to vertices created later. Retries (drawing from the same seeded stream)
// until the network fits every codec's capacity. Throws kInvalidArgument on
// a bad or infeasible config.
RoadNetwork generate(const GenConfig& config);

// Independent uniform jitter in [-noise, noise] per axis on vertices and
// control points; vertices and edges dropped with drop_prob each. Edges left
// dangling are removed. Positions stay inside the frame.
RoadNetwork perturb(const RoadNetwork& net, double noise, double drop_prob, std::uint64_t seed);

struct SdGenConfig {
  std::uint64_t seed = 0;
  int min_nodes = 3;
  int max_nodes = 16;
  double extra_link_probability = 0.15;  // per ordered node pair
  double two_way_probability = 0.3;      // chance a link gets its reverse twin
  bool strongly_connected = false;       // thread a directed Hamiltonian cycle
  BevFrame frame;
  double min_spacing = 3.0;
};

SdMap generate_sdmap(const SdGenConfig& config);

// Seed of the index-th sample of a batch drawn from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace roadnet
