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

#include <stdexcept>
#include <string>
#include <string_view>

namespace roadnet {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidGraph,
  kCapacityExceeded,
  kOutOfRange,
  kMalformedSequence,
  kParseError,
  kNotFound,
  kContractViolation,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library. `location` is free-form: a token
// position ("token 17"), a JSON path, or a file:line pair.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string location = {})
      : std::runtime_error(message), code_(code), location_(std::move(location)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

}  // namespace roadnet
