// Copyright 2026 The fqharmonic Authors.
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

#ifndef FQHARMONIC_ERROR_HPP_
#define FQHARMONIC_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace fqh {

enum class ErrorCode {
  kNonPrime,
  kEvenCharacteristic,
  kSizeLimitExceeded,
  kZeroLeadingCoefficient,
  kDivisionByZero,
  kCaseMismatch,
  kImpossibleCase,
  kHypothesisViolation,
  kSupportViolation,
  kBadExponent,
  kBadRange,
  kEmptySet,
  kOmegaNotCovering,
  kDegeneratePlane,
  kNotRegular,
  kEmptyShell,
  kInvalidArgument,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPrime: return "NonPrime";
    case ErrorCode::kEvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::kSizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::kZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kCaseMismatch: return "CaseMismatch";
    case ErrorCode::kImpossibleCase: return "ImpossibleCase";
    case ErrorCode::kHypothesisViolation: return "HypothesisViolation";
    case ErrorCode::kSupportViolation: return "SupportViolation";
    case ErrorCode::kBadExponent: return "BadExponent";
    case ErrorCode::kBadRange: return "BadRange";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kOmegaNotCovering: return "OmegaNotCovering";
    case ErrorCode::kDegeneratePlane: return "DegeneratePlane";
    case ErrorCode::kNotRegular: return "NotRegular";
    case ErrorCode::kEmptyShell: return "EmptyShell";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace fqh

#endif  // FQHARMONIC_ERROR_HPP_
