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

#ifndef KSUB_CONSTRAINT_H_
#define KSUB_CONSTRAINT_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ksub/lattice.h"
#include "ksub/matroid.h"

namespace ksub {

// Per-type budgets B_1..B_k on |supp_i|.
class IndividualBudgets {
 public:
  explicit IndividualBudgets(std::vector<int> per_type);

  const std::vector<int>& per_type() const { return per_type_; }
  int operator[](int type) const { return per_type_[type - 1]; }
  int total() const { return total_; }

 private:
  std::vector<int> per_type_;
  int total_;
};

// One of: unconstrained, total size |supp| <= B (a uniform matroid),
// individual size, or an arbitrary matroid over elements. All are
// downward closed under ⪯.
class Constraint {
 public:
  enum class Kind { kUnconstrained, kTotalSize, kIndividualSize, kMatroid };

  static Constraint Unconstrained();
  static Constraint TotalSize(int ground_size, int budget);
  static Constraint IndividualSize(IndividualBudgets budgets);
  static Constraint Matroid(std::shared_ptr<const MatroidOracle> matroid);

  // `unconstrained | ts:<B> | is:<B1,...,Bk> | partition:<file>`.
  static Constraint Parse(std::string_view text, const Dims& dims);

  Kind kind() const { return kind_; }
  const IndividualBudgets& budgets() const;
  // Set for kTotalSize and kMatroid.
  const MatroidOracle& matroid() const;
  int total_size_budget() const { return ts_budget_; }

  bool IsFeasible(const Assignment& x) const;
  std::string ToString() const;

 private:
  Constraint() = default;

  Kind kind_ = Kind::kUnconstrained;
  int ts_budget_ = 0;
  std::shared_ptr<const IndividualBudgets> budgets_;
  std::shared_ptr<const MatroidOracle> matroid_;
  std::string label_;
};

// Depth-first walk over every feasible assignment (label choices 0..k for
// element 0, then element 1, ...). Throws InstanceTooLarge once more than
// `limit` feasible points have been visited.
void ForEachFeasible(const Dims& dims, const Constraint& constraint,
                     uint64_t limit,
                     const std::function<void(const Assignment&)>& visit);

uint64_t CountFeasible(const Dims& dims, const Constraint& constraint,
                       uint64_t limit);

// A feasible x is maximal when no (e, i) with e unassigned can be added.
bool IsMaximal(const Assignment& x, const Constraint& constraint);

// Every maximal feasible assignment ("actions that exhaust the budget").
// Throws ActionSpaceTooLarge when there are more than `cap`.
std::vector<Assignment> EnumerateMaximalActions(const Dims& dims,
                                                const Constraint& constraint,
                                                uint64_t cap);

}  // namespace ksub

#endif  // KSUB_CONSTRAINT_H_
