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

#ifndef KSUB_SOLVERS_H_
#define KSUB_SOLVERS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ksub/constraint.h"
#include "ksub/lattice.h"
#include "ksub/rng.h"
#include "ksub/value_oracle.h"

namespace ksub {

enum class Algorithm {
  kUncNonMonotone,  // randomized, partition output, 1/2
  kUncMonotone,     // randomized, partition output, k/(2k-1)
  kGreedyIS,        // greedy under individual budgets
  kGreedyMatroid,   // greedy over available elements of a matroid
};

enum class Objective { kMonotone, kNonMonotone };

std::string_view AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(std::string_view name);
std::string_view ObjectiveName(Objective objective);
Objective ParseObjective(std::string_view name);

struct Ratio {
  int64_t num;
  int64_t den;
  double value() const { return static_cast<double>(num) / den; }
};

// Approximation ratio alpha, robustness slope delta and query bound N of one
// row of the offline summary table, instantiated for an instance.
struct SolverSpec {
  Algorithm algorithm;
  Objective objective;
  Ratio alpha;
  double delta;
  int64_t query_bound;
  std::string row;
};

// Looks up (alpha, delta, N) for the algorithm/objective/constraint combination:
//   UncNonMonotone  unconstrained          1/2       20n          nk
//   UncMonotone     unconstrained          k/(2k-1)  (16-2/k)n    nk
//   GreedyMatroid   ts:B, monotone         1/2       B+1          nkB
//   GreedyMatroid   ts:B, non-monotone     1/3       4/3(B+1)     nkB
//   GreedyIS        is:B1..Bk, monotone    1/3       4/3(B+1)     nkB
//   GreedyMatroid   matroid, monotone      1/2       M+1          nkM
//   GreedyMatroid   matroid, non-monotone  1/3       4/3(M+1)     nkM
// Throws InvalidArgument for combinations outside the table.
SolverSpec MakeSolverSpec(Algorithm algorithm, Objective objective,
                          const Dims& dims, const Constraint& constraint);

struct TraceEntry {
  Assignment query;
  double value;
};

struct SolverOutput {
  Assignment solution;
  int64_t queries_used = 0;
  std::vector<TraceEntry> trace;
};

// How the monotone randomized solver turns gains into probabilities.
enum class MonotoneRule {
  kClamped,  // p_i = [y_i]_+^t / beta
  kLiteral,  // p_i = y_i^t / beta; throws InvalidDistribution if invalid
};

// Type distribution of the non-monotone randomized solver, indexed by type
// (entry i-1 for type i). Gains are ranked by a stable descending sort, so
// ties go to the lower type index.
std::vector<double> NonMonotoneTypeProbabilities(std::span<const double> gains);

std::vector<double> MonotoneTypeProbabilities(
    std::span<const double> gains, MonotoneRule rule = MonotoneRule::kClamped);

// The randomized solvers take f̂(0) = 0 and reuse the chosen candidate's
// value as the next base, so they issue exactly nk queries.
SolverOutput SolveUnconstrainedNonMonotone(ValueOracle& oracle, Rng& rng);
SolverOutput SolveUnconstrainedMonotone(
    ValueOracle& oracle, Rng& rng, MonotoneRule rule = MonotoneRule::kClamped);

// The greedy solvers rank candidates by f̂(s + (e, i)); the base f̂(s) is
// shared by all candidates of an iteration, so it is never queried. Ties go
// to the lowest element, then the lowest type.
SolverOutput GreedyIndividualSize(ValueOracle& oracle,
                                  const IndividualBudgets& budgets);
SolverOutput GreedyMatroid(ValueOracle& oracle, const MatroidOracle& matroid);

struct RunOptions {
  MonotoneRule monotone_rule = MonotoneRule::kClamped;
};

// Dispatches on spec.algorithm.
SolverOutput RunSolver(const SolverSpec& spec, const Constraint& constraint,
                       ValueOracle& oracle, Rng& rng,
                       const RunOptions& options = {});

bool IsRandomized(Algorithm algorithm);

}  // namespace ksub

#endif  // KSUB_SOLVERS_H_
