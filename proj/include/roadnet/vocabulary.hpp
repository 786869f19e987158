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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace roadnet {

using Token = std::int32_t;

// Token id layout. Each integer of a clause lives in its own range so the
// embedding never conflates, say, a coordinate with a parent index.
namespace vocab {

inline constexpr Token kCoordBase = 0;       // v_x, v_y: 0..199
inline constexpr Token kCoordCount = 200;
inline constexpr Token kCategoryBase = 200;  // v_c: 200 + category code
inline constexpr Token kCategoryCount = 50;
inline constexpr Token kIndexBase = 250;     // v_d and child indices: 250 + index
inline constexpr Token kIndexCount = 100;
inline constexpr Token kCurveBase = 350;     // e_px, e_py: 350 + int(value + 10)
inline constexpr Token kCurveCount = 220;
inline constexpr Token kNoiseCategory = 570;
inline constexpr Token kEos = 571;
inline constexpr Token kStart = 572;
inline constexpr Token kNa = 573;
inline constexpr Token kEov = 574;
inline constexpr Token kSplit = 575;
inline constexpr Token kEoe = 576;

inline constexpr Token kCoreVocabSize = 574;  // coupled codec
inline constexpr Token kVocabSize = 577;      // with the decoupled specials

}  // namespace vocab

enum class TokenRange {
  kCoordinate,
  kCategory,
  kParentIndex,
  kCurve,
  kNoiseCategory,
  kEos,
  kStart,
  kNa,
  kEov,
  kSplit,
  kEoe,
  kInvalid,
};

TokenRange classify(Token t);
std::string_view range_name(TokenRange r);

Token coord_token(int cell);
Token category_token(int code);
Token index_token(std::size_t index);
Token curve_token(int cell);

// Inverse maps. Each throws kMalformedSequence naming `position` when the
// token is outside its range.
int coord_value(Token t, std::size_t position);
int category_value(Token t, std::size_t position);
std::size_t index_value(Token t, std::size_t position);
int curve_value(Token t, std::size_t position);

std::string token_location(std::size_t position);

std::string tokens_to_string(std::span<const Token> tokens);

}  // namespace roadnet
