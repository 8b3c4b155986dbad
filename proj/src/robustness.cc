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

#include "ksub/robustness.h"

#include <cmath>
#include <memory>
#include <vector>

#include "ksub/brute_force.h"
#include "ksub/error.h"

namespace ksub {

RobustnessReport VerifyRobustness(const SolverSpec& spec,
                                  const Constraint& constraint,
                                  ValueOracle& truth, double epsilon,
                                  Rng& rng,
                                  const RobustnessOptions& options) {
  if (!(epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be >= 0");
  }
  const Dims dims = truth.dims();
  TableOracle exact(dims, TabulateLattice(truth, options.exhaustion_limit));

  RobustnessReport report;
  report.f_opt = BruteForceOpt(exact, constraint, options.exhaustion_limit).value;
  report.rhs = spec.alpha.value() * report.f_opt - spec.delta * epsilon;

  std::unique_ptr<BoundedNoisyOracle> noisy;
  if (options.perturbation == PerturbationKind::kSeededUniform) {
    noisy = std::make_unique<BoundedNoisyOracle>(&exact, epsilon, rng());
  } else {
    noisy = std::make_unique<BoundedNoisyOracle>(
        &exact, epsilon, FlatteningPerturbation(exact.values(), epsilon));
  }

  const bool randomized = IsRandomized(spec.algorithm);
  report.trials = randomized ? std::max(1, options.trials) : 1;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int trial = 0; trial < report.trials; ++trial) {
    Rng trial_rng(rng());
    const int64_t before = noisy->query_count();
    const SolverOutput out =
        RunSolver(spec, constraint, *noisy, trial_rng, options.run);
    const int64_t used = noisy->query_count() - before;
    report.max_queries = std::max(report.max_queries, used);
    if (used > spec.query_bound) report.within_query_bound = false;
    if (!constraint.IsFeasible(out.solution)) {
      throw Error(ErrorCode::kInfeasibleState, "solver output infeasible");
    }
    const double value = exact.values()[out.solution.LatticeIndex()];
    sum += value;
    sum_sq += value * value;
  }
  const double t = report.trials;
  report.lhs = sum / t;
  if (randomized && report.trials > 1) {
    const double var =
        std::max(0.0, (sum_sq - t * report.lhs * report.lhs) / (t - 1.0));
    report.standard_error = std::sqrt(var / t);
  }
  // Scaled by the ratio's denominator so that at eps = 0 the comparison
  // alpha f(OPT) <= f(S*) is exact for dyadic values.
  const double den = static_cast<double>(spec.alpha.den);
  const double num = static_cast<double>(spec.alpha.num);
  report.pass = report.within_query_bound &&
                den * (report.lhs + options.z * report.standard_error) >=
                    num * report.f_opt - den * spec.delta * epsilon;
  return report;
}

}  // namespace ksub
