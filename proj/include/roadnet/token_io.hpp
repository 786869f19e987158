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
#include <string>
#include <string_view>
#include <vector>

#include "roadnet/vocabulary.hpp"

namespace roadnet {

// One encoded sample. row_length is 0 for flat streams; for 2-D (SAR)
// samples the tokens are row-major with rows of row_length tokens.
struct TokenSample {
  std::vector<Token> tokens;
  std::size_t row_length = 0;

  std::size_t rows() const;

  friend bool operator==(const TokenSample&, const TokenSample&) = default;
};

// Text: one sample per line, decimal ids separated by single spaces; rows of
// 2-D samples are joined by '|'. Blank lines are skipped on read.
std::string tokens_to_text(const std::vector<TokenSample>& samples);
std::vector<TokenSample> tokens_from_text(std::string_view text);

// Binary: magic "RNSQ", then per sample a little-endian u32 token count, a
// u16 row length (0 = flat) and the tokens as little-endian u16.
std::string tokens_to_binary(const std::vector<TokenSample>& samples);
std::vector<TokenSample> tokens_from_binary(std::string_view bytes);

}  // namespace roadnet
