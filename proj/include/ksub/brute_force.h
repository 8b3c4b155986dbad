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

#ifndef KSUB_BRUTE_FORCE_H_
#define KSUB_BRUTE_FORCE_H_

#include <cstdint>

#include "ksub/constraint.h"
#include "ksub/lattice.h"
#include "ksub/properties.h"
#include "ksub/value_oracle.h"

namespace ksub {

struct OptResult {
  Assignment solution;
  double value;
  uint64_t feasible_count;
};

// Exact maximizer over the feasible set; ties go to the earliest point in
// mixed-radix order.
OptResult BruteForceOpt(ValueOracle& oracle, const Constraint& constraint,
                        uint64_t limit = kDefaultExhaustionLimit);

// True iff some exhaustive maximizer of the unconstrained problem has full
// support. Requires k >= 2 and a k-submodular instance (NotKSubmodular
// otherwise).
bool CheckPartitionOptimality(ValueOracle& oracle,
                              const CheckOptions& options = {});

}  // namespace ksub

#endif  // KSUB_BRUTE_FORCE_H_
