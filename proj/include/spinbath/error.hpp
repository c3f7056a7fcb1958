// Copyright 2026 The spinbath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace spinbath {

// Numeric values are shared with the C API status codes.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kNotNormalized = 2,
  kSizeMismatch = 3,
  kOutOfRange = 4,
  kResourceCap = 5,
  kIo = 6,
  kUnknownName = 7,
  kNumerical = 8,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spinbath
