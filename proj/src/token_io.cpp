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

#include "roadnet/token_io.hpp"

#include <charconv>

#include "roadnet/error.hpp"

namespace roadnet {

namespace {

constexpr std::string_view kMagic = "RNSQ";

[[noreturn]] void fail(const std::string& msg, const std::string& where) {
  throw Error(ErrorCode::kParseError, msg, where);
}

void put_u16(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  put_u16(out, v & 0xffff);
  put_u16(out, v >> 16);
}

}  // namespace

std::size_t TokenSample::rows() const {
  if (row_length == 0) return tokens.empty() ? 0 : 1;
  return tokens.size() / row_length;
}

std::string tokens_to_text(const std::vector<TokenSample>& samples) {
  std::string out;
  for (const TokenSample& s : samples) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      if (i > 0) out += (s.row_length != 0 && i % s.row_length == 0) ? '|' : ' ';
      out += std::to_string(s.tokens[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<TokenSample> tokens_from_text(std::string_view text) {
  std::vector<TokenSample> out;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    TokenSample s;
    std::vector<std::size_t> row_sizes{0};
    std::size_t i = 0;
    while (i < line.size()) {
      const char c = line[i];
      if (c == ' ' || c == '\t') {
        ++i;
      } else if (c == '|') {
        row_sizes.push_back(0);
        ++i;
      } else {
        std::uint32_t v = 0;
        const auto [end, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
        if (ec != std::errc() || end == line.data() + i) {
          fail("expected a token id", "line " + std::to_string(line_no) + ", column " + std::to_string(i + 1));
        }
        if (v > 0xffff) fail("token id too large", "line " + std::to_string(line_no) + ", column " + std::to_string(i + 1));
        s.tokens.push_back(static_cast<Token>(v));
        ++row_sizes.back();
        i = static_cast<std::size_t>(end - line.data());
      }
    }
    if (row_sizes.size() > 1) {
      for (const std::size_t r : row_sizes) {
        if (r != row_sizes.front() || r == 0) fail("rows differ in length", "line " + std::to_string(line_no));
      }
      s.row_length = row_sizes.front();
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::string tokens_to_binary(const std::vector<TokenSample>& samples) {
  std::string out(kMagic);
  for (const TokenSample& s : samples) {
    if (s.tokens.size() > 0xffffffffULL || s.row_length > 0xffff) {
      throw Error(ErrorCode::kInvalidArgument, "sample too large for the binary format");
    }
    put_u32(out, static_cast<std::uint32_t>(s.tokens.size()));
    put_u16(out, static_cast<std::uint32_t>(s.row_length));
    for (const Token t : s.tokens) {
      if (t < 0 || t > 0xffff) throw Error(ErrorCode::kInvalidArgument, "token id does not fit in u16");
      put_u16(out, static_cast<std::uint32_t>(t));
    }
  }
  return out;
}

std::vector<TokenSample> tokens_from_binary(std::string_view bytes) {
  if (bytes.substr(0, kMagic.size()) != kMagic) fail("missing RNSQ header", "byte 0");
  std::size_t pos = kMagic.size();
  auto need = [&](std::size_t n) {
    if (bytes.size() - pos < n) fail("truncated binary token file", "byte " + std::to_string(pos));
  };
  auto u8 = [&](std::size_t at) { return static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[at])); };
  auto u16 = [&] {
    need(2);
    const std::uint32_t v = u8(pos) | (u8(pos + 1) << 8);
    pos += 2;
    return v;
  };
  std::vector<TokenSample> out;
  while (pos < bytes.size()) {
    const std::size_t start = pos;
    const std::uint32_t lo = u16();
    const std::uint32_t count = lo | (u16() << 16);
    TokenSample s;
    s.row_length = u16();
    need(2ULL * count);
    s.tokens.reserve(count);
    for (std::uint32_t k = 0; k < count; ++k) s.tokens.push_back(static_cast<Token>(u16()));
    if (s.row_length != 0 && count % s.row_length != 0) {
      fail("token count is not a multiple of the row length", "byte " + std::to_string(start));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace roadnet
