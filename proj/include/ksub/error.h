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

#ifndef KSUB_ERROR_H_
#define KSUB_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace ksub {

enum class ErrorCode {
  kInvalidArgument,
  kParseError,
  kInvalidConfig,
  kDimsMismatch,
  kElementAlreadyAssigned,
  kTypeOutOfRange,
  kInstanceTooLarge,
  kInfeasibleState,
  kBudgetInfeasible,
  kNotKSubmodular,
  kNotAMatroid,
  kInvalidDistribution,
  kHorizonExhausted,
  kActionSpaceTooLarge,
  kEmptyActions,
  kInvalidSchemeParams,
  kValueOutOfRange,
  kRewardOutOfRange,
  kNoSeries,
  kUnsupportedFormat,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Errors caused by bad user input (files, flags, configs) rather than by a
// failure while running an otherwise valid request.
bool IsValidationError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ksub

#endif  // KSUB_ERROR_H_
