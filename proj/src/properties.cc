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

#include "ksub/properties.h"

#include <vector>

#include "ksub/error.h"

namespace ksub {
namespace {

void CheckGainArguments(const Assignment& x, int e, int type) {
  if (e < 0 || e >= x.n()) {
    throw Error(ErrorCode::kInvalidArgument,
                "element " + std::to_string(e) + " out of range");
  }
  if (type < 1 || type > x.k()) {
    throw Error(ErrorCode::kTypeOutOfRange,
                "type " + std::to_string(type) + " not in [k]");
  }
  if (x[e] != 0) {
    throw Error(ErrorCode::kElementAlreadyAssigned,
                "element " + std::to_string(e) + " already has type " +
                    std::to_string(x[e]));
  }
}

// Place values (k+1)^e for table lookups.
std::vector<uint64_t> PlaceValues(const Dims& dims) {
  std::vector<uint64_t> place(dims.n());
  uint64_t p = 1;
  for (int e = 0; e < dims.n(); ++e) {
    place[e] = p;
    p *= static_cast<uint64_t>(dims.k()) + 1;
  }
  return place;
}

void RequireTable(const Dims& dims, const std::vector<double>& table,
                  const CheckOptions& options) {
  if (dims.LatticeSize() > options.exhaustion_limit) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "lattice exceeds exhaustion limit");
  }
  if (table.size() != dims.LatticeSize()) {
    throw Error(ErrorCode::kDimsMismatch, "table size mismatch");
  }
}

}  // namespace

double MarginalGain(ValueOracle& oracle, const Assignment& x, int e, int type,
                    std::optional<double> cached_base) {
  CheckGainArguments(x, e, type);
  const double base = cached_base ? *cached_base : oracle.Evaluate(x);
  return oracle.Evaluate(x.With(e, type)) - base;
}

KSubmodularReport CheckKSubmodular(ValueOracle& oracle,
                                   const CheckOptions& options) {
  return CheckKSubmodular(
      oracle.dims(), TabulateLattice(oracle, options.exhaustion_limit),
      options);
}

KSubmodularReport CheckKSubmodular(const Dims& dims,
                                   const std::vector<double>& table,
                                   const CheckOptions& options) {
  RequireTable(dims, table, options);
  const std::vector<uint64_t> place = PlaceValues(dims);
  const int n = dims.n();
  const int k = dims.k();
  const double tol = options.tolerance;
  KSubmodularReport report;

  for (uint64_t index = 0; index < table.size(); ++index) {
    if (report.orthant_witness && report.pairwise_witness) break;
    const Assignment x = Assignment::FromLatticeIndex(dims, index);
    const double fx = table[index];
    for (int e = 0; e < n; ++e) {
      if (x[e] != 0) continue;
      for (int i = 1; i <= k; ++i) {
        const double gain = table[index + i * place[e]] - fx;
        if (!report.pairwise_witness) {
          for (int j = i + 1; j <= k; ++j) {
            const double other = table[index + j * place[e]] - fx;
            if (gain + other < -tol) {
              report.pairwise_ok = false;
              report.pairwise_witness = PairwiseWitness{x, e, i, j,
                                                        gain + other};
              break;
            }
          }
        }
        if (report.orthant_witness) continue;
        for (int other_e = 0; other_e < n && !report.orthant_witness;
             ++other_e) {
          if (other_e == e || x[other_e] != 0) continue;
          for (int j = 1; j <= k; ++j) {
            const uint64_t y = index + j * place[other_e];
            const double larger_gain = table[y + i * place[e]] - table[y];
            if (gain < larger_gain - tol) {
              report.orthant_ok = false;
              report.orthant_witness =
                  OrthantWitness{x, Assignment::FromLatticeIndex(dims, y), e,
                                 i, gain, larger_gain};
              break;
            }
          }
        }
      }
    }
  }
  return report;
}

std::optional<NegativeMarginalWitness> FindNegativeMarginal(
    const Dims& dims, const std::vector<double>& table,
    const CheckOptions& options) {
  RequireTable(dims, table, options);
  const std::vector<uint64_t> place = PlaceValues(dims);
  for (uint64_t index = 0; index < table.size(); ++index) {
    const Assignment x = Assignment::FromLatticeIndex(dims, index);
    for (int e = 0; e < dims.n(); ++e) {
      if (x[e] != 0) continue;
      for (int i = 1; i <= dims.k(); ++i) {
        const double gain = table[index + i * place[e]] - table[index];
        if (gain < -options.tolerance) {
          return NegativeMarginalWitness{x, e, i, gain};
        }
      }
    }
  }
  return std::nullopt;
}

bool CheckMonotone(ValueOracle& oracle, const CheckOptions& options) {
  return !FindNegativeMarginal(
              oracle.dims(), TabulateLattice(oracle, options.exhaustion_limit),
              options)
              .has_value();
}

}  // namespace ksub
