// Copyright 2026 The coexist Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coexist {

enum class ErrorCode {
  DimensionMismatch,
  NonFinite,
  SpectrumOutOfRange,
  NotAProjection,
  InvalidBloch,
  ParameterRange,
  CombinatorialLimit,
  NotConverged,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library. `witness()` carries the offending
/// number when there is one (an eigenvalue, a norm, a parameter).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<double> witness = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<double> witness() const noexcept { return witness_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<double> witness_;
};

}  // namespace coexist
