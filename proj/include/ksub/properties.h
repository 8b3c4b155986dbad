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

#ifndef KSUB_PROPERTIES_H_
#define KSUB_PROPERTIES_H_

#include <cstdint>
#include <optional>

#include "ksub/lattice.h"
#include "ksub/value_oracle.h"

namespace ksub {

inline constexpr uint64_t kDefaultExhaustionLimit = 1'000'000;

// Δ_{e,i} f(x). With `cached_base` (which must equal f(x)) only one query is
// issued; otherwise two.
double MarginalGain(ValueOracle& oracle, const Assignment& x, int e, int type,
                    std::optional<double> cached_base = std::nullopt);

struct CheckOptions {
  uint64_t exhaustion_limit = kDefaultExhaustionLimit;
  // A violation must exceed this slack. Zero is exact; generated instances use
  // dyadic weights so exact comparisons are safe for them.
  double tolerance = 0.0;
};

// Δ_{e,type} f(smaller) < Δ_{e,type} f(larger) with smaller ⪯ larger.
struct OrthantWitness {
  Assignment smaller;
  Assignment larger;
  int element;
  int type;
  double gain_smaller;
  double gain_larger;
};

// Δ_{e,i} f(x) + Δ_{e,j} f(x) < 0.
struct PairwiseWitness {
  Assignment x;
  int element;
  int type_i;
  int type_j;
  double sum;
};

struct NegativeMarginalWitness {
  Assignment x;
  int element;
  int type;
  double gain;
};

struct KSubmodularReport {
  bool orthant_ok = true;
  bool pairwise_ok = true;
  std::optional<OrthantWitness> orthant_witness;
  std::optional<PairwiseWitness> pairwise_witness;

  bool ok() const { return orthant_ok && pairwise_ok; }
};

// Exhaustive check of orthant submodularity and pairwise monotonicity. The
// orthant condition is checked on covering pairs y = x + (e', j); any
// violation along x ⪯ y implies one along some chain step.
KSubmodularReport CheckKSubmodular(ValueOracle& oracle,
                                   const CheckOptions& options = {});
KSubmodularReport CheckKSubmodular(const Dims& dims,
                                   const std::vector<double>& table,
                                   const CheckOptions& options = {});

std::optional<NegativeMarginalWitness> FindNegativeMarginal(
    const Dims& dims, const std::vector<double>& table,
    const CheckOptions& options = {});

bool CheckMonotone(ValueOracle& oracle, const CheckOptions& options = {});

}  // namespace ksub

#endif  // KSUB_PROPERTIES_H_
