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

#include "ksub/brute_force.h"

#include <vector>

#include "ksub/error.h"

namespace ksub {

OptResult BruteForceOpt(ValueOracle& oracle, const Constraint& constraint,
                        uint64_t limit) {
  const Dims dims = oracle.dims();
  // Count first so an oversized instance fails before any query.
  const uint64_t count = CountFeasible(dims, constraint, limit);
  OptResult best{Assignment(dims), 0.0, count};
  bool have = false;
  ForEachFeasible(dims, constraint, limit, [&](const Assignment& x) {
    const double value = oracle.Evaluate(x);
    if (!have || value > best.value ||
        (value == best.value && MixedRadixLess(x, best.solution))) {
      best.solution = x;
      best.value = value;
      have = true;
    }
  });
  return best;
}

bool CheckPartitionOptimality(ValueOracle& oracle,
                              const CheckOptions& options) {
  const Dims dims = oracle.dims();
  if (dims.k() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "partition optimality needs k >= 2");
  }
  const std::vector<double> table =
      TabulateLattice(oracle, options.exhaustion_limit);
  if (!CheckKSubmodular(dims, table, options).ok()) {
    throw Error(ErrorCode::kNotKSubmodular, "instance is not k-submodular");
  }
  double best = table[0];
  for (double v : table) best = std::max(best, v);
  Assignment x(dims);
  for (uint64_t index = 0; index < table.size(); ++index, NextLatticePoint(x)) {
    if (table[index] == best && x.SupportSize() == dims.n()) return true;
  }
  return false;
}

}  // namespace ksub
