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

#ifndef KSUB_MATROID_H_
#define KSUB_MATROID_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <vector>

#include "ksub/lattice.h"

namespace ksub {

using ElementSet = std::vector<int>;  // sorted, distinct

// Independence oracle over the ground set [n]. Implementations are immutable
// and IsIndependent() is safe to call concurrently.
class MatroidOracle {
 public:
  virtual ~MatroidOracle() = default;
  virtual int ground_size() const = 0;
  virtual bool IsIndependent(std::span<const int> subset) const = 0;
};

// |S| <= capacity. This is the total-size constraint.
class UniformMatroid : public MatroidOracle {
 public:
  UniformMatroid(int ground_size, int capacity);

  int ground_size() const override { return ground_size_; }
  int capacity() const { return capacity_; }
  bool IsIndependent(std::span<const int> subset) const override;

 private:
  int ground_size_;
  int capacity_;
};

// |S ∩ block_j| <= capacity_j for every block of a partition of [n].
class PartitionMatroid : public MatroidOracle {
 public:
  PartitionMatroid(int ground_size, std::vector<ElementSet> blocks,
                   std::vector<int> capacities);

  int ground_size() const override { return ground_size_; }
  const std::vector<ElementSet>& blocks() const { return blocks_; }
  const std::vector<int>& capacities() const { return capacities_; }
  bool IsIndependent(std::span<const int> subset) const override;

 private:
  int ground_size_;
  std::vector<ElementSet> blocks_;
  std::vector<int> capacities_;
  std::vector<int> block_of_;
};

// Exhaustive family of independent sets, for small n. Construction fails with
// NotAMatroid unless the family satisfies (M1)-(M3).
class ExplicitMatroid : public MatroidOracle {
 public:
  ExplicitMatroid(int ground_size, const std::vector<ElementSet>& family);

  static ExplicitMatroid Materialize(const MatroidOracle& matroid);

  int ground_size() const override { return ground_size_; }
  bool IsIndependent(std::span<const int> subset) const override;
  std::vector<ElementSet> Family() const;

 private:
  int ground_size_;
  std::vector<char> independent_;  // indexed by subset bitmask
};

inline constexpr int kMaxExplicitGroundSize = 20;

struct AxiomReport {
  bool empty_set_ok = true;         // (M1)
  bool downward_closed_ok = true;   // (M2)
  bool exchange_ok = true;          // (M3)
  std::optional<ElementSet> downward_witness;  // missing subset
  std::optional<std::pair<ElementSet, ElementSet>> exchange_witness;  // (A, B)

  bool ok() const { return empty_set_ok && downward_closed_ok && exchange_ok; }
};

// Throws InstanceTooLarge above kMaxExplicitGroundSize.
AxiomReport CheckMatroidAxioms(int ground_size,
                               const std::vector<ElementSet>& family);
AxiomReport CheckMatroidAxioms(const MatroidOracle& matroid);

// E(x) = { e not in supp(x) : supp(x) + e independent }, ascending.
// Throws InfeasibleState when supp(x) itself is dependent.
std::vector<int> AvailableElements(const MatroidOracle& matroid,
                                   const Assignment& x);

// Size of the basis found by greedy extension in increasing element order.
int MatroidRank(const MatroidOracle& matroid);

// Lines of the form `block <cap>: e1 e2 ...`; '#' starts a comment.
PartitionMatroid ReadPartitionMatroid(std::istream& in, int ground_size);
PartitionMatroid ReadPartitionMatroidFile(const std::string& path,
                                          int ground_size);

}  // namespace ksub

#endif  // KSUB_MATROID_H_
