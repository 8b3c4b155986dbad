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

#ifndef KSUB_ROBUSTNESS_H_
#define KSUB_ROBUSTNESS_H_

#include <cstdint>
#include <string>

#include "ksub/constraint.h"
#include "ksub/properties.h"
#include "ksub/rng.h"
#include "ksub/solvers.h"
#include "ksub/value_oracle.h"

namespace ksub {

enum class PerturbationKind {
  kSeededUniform,  // independent uniform draw in [-eps, eps] per assignment
  kFlattening,     // adversarial: every value pushed eps towards the mean
};

struct RobustnessOptions {
  PerturbationKind perturbation = PerturbationKind::kSeededUniform;
  // Ignored (forced to 1) for deterministic solvers.
  int trials = 2000;
  // Statistical margin for randomized solvers, in standard errors.
  double z = 3.0;
  uint64_t exhaustion_limit = kDefaultExhaustionLimit;
  RunOptions run;
};

struct RobustnessReport {
  double f_opt = 0.0;
  double lhs = 0.0;             // mean of f(S*) under the true f
  double standard_error = 0.0;  // zero for deterministic solvers
  double rhs = 0.0;             // alpha f(OPT) - delta eps
  int trials = 0;
  int64_t max_queries = 0;      // largest per-run oracle counter increment
  bool within_query_bound = true;
  bool pass = false;
};

// Runs the solver against a bounded-noise surrogate of `truth` and checks
// E[f(S*)] >= alpha f(OPT) - delta eps, with f and OPT taken under `truth`.
// Deterministic solvers must satisfy the inequality exactly; randomized ones
// need mean + z * SE >= rhs.
RobustnessReport VerifyRobustness(const SolverSpec& spec,
                                  const Constraint& constraint,
                                  ValueOracle& truth, double epsilon,
                                  Rng& rng,
                                  const RobustnessOptions& options = {});

}  // namespace ksub

#endif  // KSUB_ROBUSTNESS_H_
