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

#include "ksub/solvers.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ksub/error.h"

namespace ksub {
namespace {

// Counts and records every query a solver issues.
class QueryRecorder {
 public:
  explicit QueryRecorder(ValueOracle& oracle) : oracle_(oracle) {}

  double Query(const Assignment& x) {
    const double value = oracle_.Evaluate(x);
    output_.trace.push_back({x, value});
    ++output_.queries_used;
    return value;
  }

  SolverOutput Finish(Assignment solution) {
    output_.solution = std::move(solution);
    return std::move(output_);
  }

 private:
  ValueOracle& oracle_;
  SolverOutput output_{Assignment(oracle_.dims()), 0, {}};
};

}  // namespace

std::string_view AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kUncNonMonotone: return "unc-nonmonotone";
    case Algorithm::kUncMonotone: return "unc-monotone";
    case Algorithm::kGreedyIS: return "greedy-is";
    case Algorithm::kGreedyMatroid: return "greedy-matroid";
  }
  return "unknown";
}

Algorithm ParseAlgorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kUncNonMonotone, Algorithm::kUncMonotone,
                      Algorithm::kGreedyIS, Algorithm::kGreedyMatroid}) {
    if (name == AlgorithmName(a)) return a;
  }
  if (name == "UncNonMonotone") return Algorithm::kUncNonMonotone;
  if (name == "UncMonotone") return Algorithm::kUncMonotone;
  if (name == "GreedyIS") return Algorithm::kGreedyIS;
  if (name == "GreedyMatroid") return Algorithm::kGreedyMatroid;
  throw Error(ErrorCode::kParseError,
              "unknown algorithm '" + std::string(name) + "'");
}

std::string_view ObjectiveName(Objective objective) {
  return objective == Objective::kMonotone ? "monotone" : "nonmonotone";
}

Objective ParseObjective(std::string_view name) {
  if (name == "monotone") return Objective::kMonotone;
  if (name == "nonmonotone" || name == "non-monotone") {
    return Objective::kNonMonotone;
  }
  throw Error(ErrorCode::kParseError,
              "unknown objective '" + std::string(name) + "'");
}

bool IsRandomized(Algorithm algorithm) {
  return algorithm == Algorithm::kUncNonMonotone ||
         algorithm == Algorithm::kUncMonotone;
}

SolverSpec MakeSolverSpec(Algorithm algorithm, Objective objective,
                          const Dims& dims, const Constraint& constraint) {
  const int64_t n = dims.n();
  const int64_t k = dims.k();
  const auto mismatch = [&](const std::string& need) {
    return Error(ErrorCode::kInvalidArgument,
                 std::string(AlgorithmName(algorithm)) + " requires " + need +
                     ", got " + constraint.ToString());
  };
  using Kind = Constraint::Kind;
  switch (algorithm) {
    case Algorithm::kUncNonMonotone:
      if (constraint.kind() != Kind::kUnconstrained) {
        throw mismatch("an unconstrained problem");
      }
      return {algorithm, objective, {1, 2}, 20.0 * n, n * k,
              "non-monotone/unconstrained"};
    case Algorithm::kUncMonotone:
      if (constraint.kind() != Kind::kUnconstrained) {
        throw mismatch("an unconstrained problem");
      }
      if (objective != Objective::kMonotone) {
        throw mismatch("a monotone objective");
      }
      return {algorithm,
              objective,
              {k, 2 * k - 1},
              (16.0 - 2.0 / static_cast<double>(k)) * n,
              n * k,
              "monotone/unconstrained"};
    case Algorithm::kGreedyIS: {
      if (constraint.kind() != Kind::kIndividualSize) {
        throw mismatch("an individual-size constraint");
      }
      if (objective != Objective::kMonotone) {
        throw mismatch("a monotone objective");
      }
      const int64_t b = constraint.budgets().total();
      return {algorithm, objective, {1, 3}, 4.0 / 3.0 * (b + 1), n * k * b,
              "monotone/individual-size"};
    }
    case Algorithm::kGreedyMatroid: {
      if (constraint.kind() != Kind::kTotalSize &&
          constraint.kind() != Kind::kMatroid) {
        throw mismatch("a total-size or matroid constraint");
      }
      const bool ts = constraint.kind() == Kind::kTotalSize;
      const int64_t m = ts ? std::min<int64_t>(constraint.total_size_budget(), n)
                           : MatroidRank(constraint.matroid());
      const std::string shape = ts ? "total-size" : "matroid";
      if (objective == Objective::kMonotone) {
        return {algorithm, objective, {1, 2}, static_cast<double>(m + 1),
                n * k * m, "monotone/" + shape};
      }
      return {algorithm, objective, {1, 3}, 4.0 / 3.0 * (m + 1), n * k * m,
              "non-monotone/" + shape};
    }
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

std::vector<double> NonMonotoneTypeProbabilities(
    std::span<const double> gains) {
  const int k = static_cast<int>(gains.size());
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gains[a] > gains[b]; });

  // i+ is the 1-based rank of the last strictly positive sorted gain.
  int i_plus = 0;
  for (int r = 0; r < k; ++r) {
    if (gains[order[r]] > 0.0) i_plus = r + 1;
  }
  std::vector<double> sorted_p(k, 0.0);
  if (i_plus <= 1) {
    sorted_p[0] = 1.0;
  } else if (i_plus == 2) {
    const double y1 = gains[order[0]];
    const double y2 = gains[order[1]];
    sorted_p[0] = y1 / (y1 + y2);
    sorted_p[1] = y2 / (y1 + y2);
  } else {
    for (int r = 1; r < i_plus; ++r) sorted_p[r - 1] = std::ldexp(1.0, -r);
    sorted_p[i_plus - 1] = std::ldexp(1.0, -(i_plus - 1));
  }
  std::vector<double> p(k, 0.0);
  for (int r = 0; r < k; ++r) p[order[r]] = sorted_p[r];
  return p;
}

std::vector<double> MonotoneTypeProbabilities(std::span<const double> gains,
                                              MonotoneRule rule) {
  const int k = static_cast<int>(gains.size());
  std::vector<double> p(k, 0.0);
  if (k == 1) {
    p[0] = 1.0;
    return p;
  }
  const int t = k - 1;
  std::vector<double> clamped_pow(k);
  double beta = 0.0;
  for (int i = 0; i < k; ++i) {
    clamped_pow[i] = std::pow(std::max(gains[i], 0.0), t);
    beta += clamped_pow[i];
  }
  if (beta == 0.0) {
    p[0] = 1.0;
    return p;
  }
  if (rule == MonotoneRule::kClamped) {
    for (int i = 0; i < k; ++i) p[i] = clamped_pow[i] / beta;
    return p;
  }
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    p[i] = std::pow(gains[i], t) / beta;
    total += p[i];
    if (p[i] < 0.0) {
      throw Error(ErrorCode::kInvalidDistribution,
                  "literal rule produced a negative probability");
    }
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidDistribution,
                "literal rule probabilities sum to " + std::to_string(total));
  }
  return p;
}

namespace {

template <typename ProbabilityFn>
SolverOutput SequentialRandomized(ValueOracle& oracle, Rng& rng,
                                  ProbabilityFn probabilities) {
  const Dims dims = oracle.dims();
  QueryRecorder recorder(oracle);
  Assignment s(dims);
  double base = 0.0;
  std::vector<double> values(dims.k());
  std::vector<double> gains(dims.k());
  for (int e = 0; e < dims.n(); ++e) {
    for (int i = 1; i <= dims.k(); ++i) {
      values[i - 1] = recorder.Query(s.With(e, i));
      gains[i - 1] = values[i - 1] - base;
    }
    const std::vector<double> p = probabilities(gains);
    const int chosen = SampleIndex(p, rng);
    s.Set(e, chosen + 1);
    base = values[chosen];
  }
  return recorder.Finish(std::move(s));
}

}  // namespace

SolverOutput SolveUnconstrainedNonMonotone(ValueOracle& oracle, Rng& rng) {
  return SequentialRandomized(oracle, rng, [](std::span<const double> gains) {
    return NonMonotoneTypeProbabilities(gains);
  });
}

SolverOutput SolveUnconstrainedMonotone(ValueOracle& oracle, Rng& rng,
                                        MonotoneRule rule) {
  return SequentialRandomized(oracle, rng,
                              [rule](std::span<const double> gains) {
                                return MonotoneTypeProbabilities(gains, rule);
                              });
}

SolverOutput GreedyIndividualSize(ValueOracle& oracle,
                                  const IndividualBudgets& budgets) {
  const Dims dims = oracle.dims();
  if (static_cast<int>(budgets.per_type().size()) != dims.k()) {
    throw Error(ErrorCode::kDimsMismatch, "budget count != k");
  }
  if (budgets.total() > dims.n()) {
    throw Error(ErrorCode::kBudgetInfeasible,
                "sum of budgets " + std::to_string(budgets.total()) +
                    " exceeds n=" + std::to_string(dims.n()));
  }
  QueryRecorder recorder(oracle);
  Assignment s(dims);
  std::vector<int> used(dims.k() + 1, 0);
  for (int step = 0; step < budgets.total(); ++step) {
    int best_e = -1;
    int best_i = -1;
    double best = 0.0;
    for (int e = 0; e < dims.n(); ++e) {
      if (s[e] != 0) continue;
      for (int i = 1; i <= dims.k(); ++i) {
        if (used[i] >= budgets[i]) continue;
        const double value = recorder.Query(s.With(e, i));
        if (best_e < 0 || value > best) {
          best = value;
          best_e = e;
          best_i = i;
        }
      }
    }
    s.Set(best_e, best_i);
    ++used[best_i];
  }
  return recorder.Finish(std::move(s));
}

SolverOutput GreedyMatroid(ValueOracle& oracle, const MatroidOracle& matroid) {
  const Dims dims = oracle.dims();
  QueryRecorder recorder(oracle);
  Assignment s(dims);
  for (std::vector<int> available = AvailableElements(matroid, s);
       !available.empty(); available = AvailableElements(matroid, s)) {
    int best_e = -1;
    int best_i = -1;
    double best = 0.0;
    for (int e : available) {
      for (int i = 1; i <= dims.k(); ++i) {
        const double value = recorder.Query(s.With(e, i));
        if (best_e < 0 || value > best) {
          best = value;
          best_e = e;
          best_i = i;
        }
      }
    }
    s.Set(best_e, best_i);
  }
  return recorder.Finish(std::move(s));
}

SolverOutput RunSolver(const SolverSpec& spec, const Constraint& constraint,
                       ValueOracle& oracle, Rng& rng,
                       const RunOptions& options) {
  switch (spec.algorithm) {
    case Algorithm::kUncNonMonotone:
      return SolveUnconstrainedNonMonotone(oracle, rng);
    case Algorithm::kUncMonotone:
      return SolveUnconstrainedMonotone(oracle, rng, options.monotone_rule);
    case Algorithm::kGreedyIS:
      return GreedyIndividualSize(oracle, constraint.budgets());
    case Algorithm::kGreedyMatroid:
      return GreedyMatroid(oracle, constraint.matroid());
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

}  // namespace ksub
