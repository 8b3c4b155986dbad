// Copyright 2026 The Authors.
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

#include "ksub/error.h"

#include <string>

namespace ksub {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kDimsMismatch: return "DimsMismatch";
    case ErrorCode::kElementAlreadyAssigned: return "ElementAlreadyAssigned";
    case ErrorCode::kTypeOutOfRange: return "TypeOutOfRange";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kInfeasibleState: return "InfeasibleState";
    case ErrorCode::kBudgetInfeasible: return "BudgetInfeasible";
    case ErrorCode::kNotKSubmodular: return "NotKSubmodular";
    case ErrorCode::kNotAMatroid: return "NotAMatroid";
    case ErrorCode::kInvalidDistribution: return "InvalidDistribution";
    case ErrorCode::kHorizonExhausted: return "HorizonExhausted";
    case ErrorCode::kActionSpaceTooLarge: return "ActionSpaceTooLarge";
    case ErrorCode::kEmptyActions: return "EmptyActions";
    case ErrorCode::kInvalidSchemeParams: return "InvalidSchemeParams";
    case ErrorCode::kValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::kRewardOutOfRange: return "RewardOutOfRange";
    case ErrorCode::kNoSeries: return "NoSeries";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

bool IsValidationError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParseError:
    case ErrorCode::kInvalidConfig:
    case ErrorCode::kDimsMismatch:
    case ErrorCode::kTypeOutOfRange:
    case ErrorCode::kBudgetInfeasible:
    case ErrorCode::kNotAMatroid:
    case ErrorCode::kInvalidSchemeParams:
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kInstanceTooLarge:
    case ErrorCode::kActionSpaceTooLarge:
    case ErrorCode::kEmptyActions:
    case ErrorCode::kValueOutOfRange:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace ksub
