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

#include <string>
#include <string_view>
#include <vector>

#include "roadnet/error.hpp"
#include "roadnet/graph.hpp"
#include "roadnet/metrics.hpp"
#include "roadnet/nar.hpp"
#include "roadnet/sdmap.hpp"

namespace roadnet {

// Strict parsing rejects unknown fields and requires every field; lenient
// parsing ignores unknown fields and defaults a missing frame.
enum class ParseMode { kStrict, kLenient };

std::string graph_to_json(const RoadNetwork& net);  // one compact line
RoadNetwork graph_from_json(std::string_view text, ParseMode mode = ParseMode::kStrict);

// A document holding one object, an array of objects, or one object per
// line. Errors carry "line N" or a JSON pointer as location.
std::vector<RoadNetwork> graphs_from_text(std::string_view text, ParseMode mode = ParseMode::kStrict);
std::string graphs_to_text(const std::vector<RoadNetwork>& nets);  // one line per graph

std::string sdmap_to_json(const SdMap& map);
SdMap sdmap_from_json(std::string_view text, ParseMode mode = ParseMode::kStrict);
std::vector<SdMap> sdmaps_from_text(std::string_view text, ParseMode mode = ParseMode::kStrict);
std::string sdmaps_to_text(const std::vector<SdMap>& maps);

std::string report_to_json(const MetricReport& report, int indent = 2);
std::string report_to_csv(const MetricReport& report);

// One JSON object per iteration.
std::string trace_to_jsonl(const DecodeTrace& trace, std::size_t sample = 0);

std::string complexity_to_json(const ComplexityReport& report, std::size_t sample = 0);

// {"code":..., "message":..., "location":...}
std::string error_to_json(const Error& error);
std::string error_to_json(std::string_view code, std::string_view message, std::string_view location);

// "x_min,x_max,y_min,y_max,resolution"
BevFrame parse_frame(std::string_view text);

}  // namespace roadnet
