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

#include "ksub/value_oracle.h"

#include <cmath>
#include <string>

#include "ksub/error.h"
#include "ksub/rng.h"

namespace ksub {

double ValueOracle::Evaluate(const Assignment& x) {
  if (!(x.dims() == dims_)) {
    throw Error(ErrorCode::kDimsMismatch, "assignment dims differ from oracle");
  }
  query_count_.fetch_add(1, std::memory_order_relaxed);
  return DoEvaluate(x);
}

TableOracle::TableOracle(Dims dims, std::vector<double> values)
    : ValueOracle(dims), values_(std::move(values)) {
  if (dims.LatticeSize() != values_.size()) {
    throw Error(ErrorCode::kDimsMismatch,
                "table has " + std::to_string(values_.size()) +
                    " entries, lattice has " +
                    std::to_string(dims.LatticeSize()));
  }
}

AffineOracle::AffineOracle(ValueOracle* base, double scale, double shift)
    : ValueOracle(base->dims()), base_(base), scale_(scale), shift_(shift) {}

BoundedNoisyOracle::BoundedNoisyOracle(ValueOracle* base, double epsilon,
                                       uint64_t seed)
    : ValueOracle(base->dims()), base_(base), epsilon_(epsilon), seed_(seed) {
  if (!(epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  }
}

BoundedNoisyOracle::BoundedNoisyOracle(ValueOracle* base, double epsilon,
                                       std::vector<double> perturbation_table)
    : ValueOracle(base->dims()),
      base_(base),
      epsilon_(epsilon),
      table_(std::move(perturbation_table)) {
  if (!(epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  }
  if (table_.size() != base->dims().LatticeSize()) {
    throw Error(ErrorCode::kDimsMismatch, "perturbation table size mismatch");
  }
  for (double p : table_) {
    if (!(std::abs(p) <= epsilon)) {
      throw Error(ErrorCode::kValueOutOfRange,
                  "perturbation exceeds epsilon: " + std::to_string(p));
    }
  }
}

double BoundedNoisyOracle::Perturbation(const Assignment& x) const {
  if (!table_.empty()) return table_[x.LatticeIndex()];
  if (epsilon_ == 0.0) return 0.0;
  const uint64_t bits = SplitMix64(seed_ ^ static_cast<uint64_t>(x.Hash()));
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return epsilon_ * (2.0 * u - 1.0);
}

std::vector<double> TabulateLattice(ValueOracle& oracle, uint64_t limit) {
  const uint64_t size = oracle.dims().LatticeSize();
  if (size > limit) {
    throw Error(ErrorCode::kInstanceTooLarge,
                "lattice size " + std::to_string(size) + " exceeds limit " +
                    std::to_string(limit));
  }
  std::vector<double> values;
  values.reserve(size);
  Assignment x(oracle.dims());
  do {
    values.push_back(oracle.Evaluate(x));
  } while (NextLatticePoint(x));
  return values;
}

std::vector<double> FlatteningPerturbation(const std::vector<double>& values,
                                           double epsilon) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  std::vector<double> table(values.size(), 0.0);
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] > mean) table[i] = -epsilon;
    if (values[i] < mean) table[i] = epsilon;
  }
  return table;
}

}  // namespace ksub
