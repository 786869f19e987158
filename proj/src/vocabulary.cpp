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

#include "roadnet/vocabulary.hpp"

#include "roadnet/error.hpp"

namespace roadnet {

TokenRange classify(Token t) {
  using namespace vocab;
  if (t >= kCoordBase && t < kCoordBase + kCoordCount) return TokenRange::kCoordinate;
  if (t >= kCategoryBase && t < kCategoryBase + kCategoryCount) return TokenRange::kCategory;
  if (t >= kIndexBase && t < kIndexBase + kIndexCount) return TokenRange::kParentIndex;
  if (t >= kCurveBase && t < kCurveBase + kCurveCount) return TokenRange::kCurve;
  switch (t) {
    case kNoiseCategory: return TokenRange::kNoiseCategory;
    case kEos: return TokenRange::kEos;
    case kStart: return TokenRange::kStart;
    case kNa: return TokenRange::kNa;
    case kEov: return TokenRange::kEov;
    case kSplit: return TokenRange::kSplit;
    case kEoe: return TokenRange::kEoe;
    default: return TokenRange::kInvalid;
  }
}

std::string_view range_name(TokenRange r) {
  switch (r) {
    case TokenRange::kCoordinate: return "coordinate";
    case TokenRange::kCategory: return "category";
    case TokenRange::kParentIndex: return "index";
    case TokenRange::kCurve: return "curve";
    case TokenRange::kNoiseCategory: return "noise";
    case TokenRange::kEos: return "EOS";
    case TokenRange::kStart: return "Start";
    case TokenRange::kNa: return "NA";
    case TokenRange::kEov: return "EOV";
    case TokenRange::kSplit: return "Split";
    case TokenRange::kEoe: return "EOE";
    case TokenRange::kInvalid: return "invalid";
  }
  return "invalid";
}

std::string token_location(std::size_t position) { return "token " + std::to_string(position); }

namespace {

[[noreturn]] void bad_value(const char* what, long value) {
  throw Error(ErrorCode::kOutOfRange, std::string(what) + " value " + std::to_string(value) +
                                          " does not fit its token range");
}

[[noreturn]] void bad_token(Token t, TokenRange expected, std::size_t position) {
  throw Error(ErrorCode::kMalformedSequence,
              "expected a " + std::string(range_name(expected)) + " token, found " +
                  std::to_string(t) + " (" + std::string(range_name(classify(t))) + ")",
              token_location(position));
}

}  // namespace

Token coord_token(int cell) {
  if (cell < 0 || cell >= vocab::kCoordCount) bad_value("coordinate", cell);
  return vocab::kCoordBase + cell;
}

Token category_token(int code) {
  if (code < 0 || code >= vocab::kCategoryCount) bad_value("category", code);
  return vocab::kCategoryBase + code;
}

Token index_token(std::size_t index) {
  if (index >= static_cast<std::size_t>(vocab::kIndexCount)) {
    throw Error(ErrorCode::kCapacityExceeded,
                "vertex index " + std::to_string(index) + " exceeds the 100-entry index range");
  }
  return vocab::kIndexBase + static_cast<Token>(index);
}

Token curve_token(int cell) {
  if (cell < 0 || cell >= vocab::kCurveCount) bad_value("curve", cell);
  return vocab::kCurveBase + cell;
}

int coord_value(Token t, std::size_t position) {
  if (classify(t) != TokenRange::kCoordinate) bad_token(t, TokenRange::kCoordinate, position);
  return t - vocab::kCoordBase;
}

int category_value(Token t, std::size_t position) {
  if (classify(t) != TokenRange::kCategory) bad_token(t, TokenRange::kCategory, position);
  return t - vocab::kCategoryBase;
}

std::size_t index_value(Token t, std::size_t position) {
  if (classify(t) != TokenRange::kParentIndex) bad_token(t, TokenRange::kParentIndex, position);
  return static_cast<std::size_t>(t - vocab::kIndexBase);
}

int curve_value(Token t, std::size_t position) {
  if (classify(t) != TokenRange::kCurve) bad_token(t, TokenRange::kCurve, position);
  return t - vocab::kCurveBase;
}

std::string tokens_to_string(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(tokens[i]);
  }
  return out;
}

}  // namespace roadnet
