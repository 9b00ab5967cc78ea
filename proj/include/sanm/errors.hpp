// Copyright 2026 The SANM Attitude Authors
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
#include <string_view>

namespace sanm {

enum class ErrorCode {
  kNonSkewInput,
  kTooFarFromSO3,
  kInfeasibleWrench,
  kDegenerateHeading,
  kZeroForce,
  kInvalidPsi,
  kNoTransient,
  kGainOrder,
  kShapeMismatch,
  kInvalidConfig,
  kParse,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for every recoverable failure in the library.
/// Callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonSkewInput: return "NonSkewInput";
    case ErrorCode::kTooFarFromSO3: return "TooFarFromSO3";
    case ErrorCode::kInfeasibleWrench: return "InfeasibleWrench";
    case ErrorCode::kDegenerateHeading: return "DegenerateHeading";
    case ErrorCode::kZeroForce: return "ZeroForce";
    case ErrorCode::kInvalidPsi: return "InvalidPsi";
    case ErrorCode::kNoTransient: return "NoTransient";
    case ErrorCode::kGainOrder: return "GainOrder";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace sanm
