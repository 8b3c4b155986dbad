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

#ifndef KSUB_EXPERIMENT_H_
#define KSUB_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ksub/bandit.h"
#include "ksub/constraint.h"
#include "ksub/lattice.h"
#include "ksub/solvers.h"

namespace ksub {

enum class ReferenceMode { kNone, kBruteForce, kOfflineGreedy };

std::string_view ReferenceModeName(ReferenceMode mode);
ReferenceMode ParseReferenceMode(std::string_view name);

// Flat `key = value` configuration. Recognized keys:
//   env, constraint, policies, algorithm, objective, horizon, seeds,
//   master_seed, reference, out, window, workers, weights, weight_seed,
//   expectation_sims, max_actions, step_budget
// `seeds` is either a comma list or `count:N`, the latter expanded from
// master_seed.
struct ExperimentConfig {
  std::string env;
  std::string constraint = "unconstrained";
  std::vector<std::string> policies;
  std::optional<Algorithm> algorithm;
  Objective objective = Objective::kMonotone;
  int64_t horizon = 0;
  std::vector<uint64_t> seeds;
  uint64_t master_seed = 0;
  ReferenceMode reference = ReferenceMode::kNone;
  std::string out;
  int window = 100;
  int workers = 1;
  std::string weights;  // influence weight schemes, `a;b;c`
  uint64_t weight_seed = 1;
  int expectation_sims = 100;
  uint64_t max_actions = 1'000'000;
  // Upper bound on policies * seeds * horizon.
  uint64_t step_budget = 2'000'000'000;

  static ExperimentConfig Parse(std::istream& in);
  static ExperimentConfig ParseFile(const std::string& path);
  // Throws InvalidConfig on structural problems.
  void Validate() const;
  // Canonical `key = value` rendering; Parse(ToString()) round-trips.
  std::string ToString() const;
};

// Builds fresh environments for one env spec:
//   coverage:<instance file> | coverage:seed=S,n=N,k=K[,universe=U]
//   coupled:<instance file>  | coupled:seed=S,n=N,k=K[,universe=U]
//   bernoulli:<instance file>
//   influence:<graph file>[,raw]
//   influence:synthetic,nodes=N,degree=D,seed=S[,raw]
// Coupled objectives are rescaled affinely onto [0, 1] over the lattice.
// Influence rewards are spread / node count unless `raw` is given.
struct EnvironmentFactory {
  Dims dims{1, 1};
  std::string description;
  std::function<std::unique_ptr<BanditEnvironment>()> make;
};

EnvironmentFactory MakeEnvironmentFactory(const ExperimentConfig& config);

// The algorithm C-ETC runs when the policy omits one.
Algorithm DefaultAlgorithm(const Constraint& constraint,
                           const ExperimentConfig& config);

struct CellResult {
  std::string policy;
  uint64_t seed = 0;
  Trajectory trajectory;
  std::vector<double> cum_regret;  // empty without a reference
  std::optional<ExplorationSchedule> schedule;
};

struct PolicySeries {
  std::string policy;
  int runs = 0;
  std::vector<double> mean_reward;      // per step, raw
  std::vector<double> std_reward;       // sample (n - 1) convention
  std::vector<double> mean_cum_regret;  // empty without a reference
};

struct AggregateReport {
  std::vector<PolicySeries> series;
  std::vector<CellResult> cells;
  int window = 100;
  std::optional<double> reference_value;
  double regret_alpha = 1.0;
  std::string reference_label;
  std::vector<std::string> notices;

  const PolicySeries* Find(const std::string& policy) const;
};

// Per-seed mean reward over the last `steps` steps of every cell of
// `policy`, in configured seed order.
std::vector<double> TailMeans(const AggregateReport& report,
                              const std::string& policy, int64_t steps);

// Runs every (policy, seed) cell, aggregates, and when config.out is set
// writes cells/<policy>_seed<seed>.csv, aggregate.csv, summary.json and
// plot.csv / plot.svg under it.
AggregateReport RunExperiment(const ExperimentConfig& config);

// Loads aggregate.csv (and the window from summary.json when present).
AggregateReport ReadAggregate(const std::string& dir);

void WriteAggregateCsv(std::ostream& out, const AggregateReport& report);
void WriteCellCsv(std::ostream& out, const CellResult& cell);

// Moving-average mean curves with +/- 1 std bands; format is "csv" or
// "svg".
void EmitPlotData(const AggregateReport& report, std::string_view format,
                  std::ostream& out);

// Trailing moving average over up to `window` values.
std::vector<double> MovingAverage(const std::vector<double>& values,
                                  int window);

}  // namespace ksub

#endif  // KSUB_EXPERIMENT_H_
