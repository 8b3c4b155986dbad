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

#ifndef KSUB_BANDIT_H_
#define KSUB_BANDIT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ksub/constraint.h"
#include "ksub/lattice.h"
#include "ksub/rng.h"
#include "ksub/solvers.h"

namespace ksub {

// Stochastic reward source over assignments. Pulls lie in [0, 1] and are
// i.i.d. given the assignment.
class BanditEnvironment {
 public:
  virtual ~BanditEnvironment() = default;

  virtual const Dims& dims() const = 0;
  virtual double Pull(const Assignment& x, Rng& rng) = 0;
  // E[Pull(x)], when the environment can compute or estimate it.
  virtual std::optional<double> ExpectedValue(const Assignment& /*x*/) const {
    return std::nullopt;
  }
};

// m = ceil(delta^{2/3} T^{2/3} ln(T)^{1/3} / (2 N^{2/3})). If N*m > T the
// per-query pull count is capped at max(1, floor(T/N)) and `capped` is set.
struct ExplorationSchedule {
  int64_t m = 1;
  int64_t uncapped_m = 1;
  int64_t query_bound = 0;
  double delta = 0.0;
  int64_t horizon = 0;
  bool capped = false;
  // T >= max{N, 2 sqrt(2) N / delta}.
  bool horizon_sufficient = true;

  static ExplorationSchedule Compute(double delta, int64_t query_bound,
                                     int64_t horizon);
};

struct QueryRecord {
  int action = 0;          // index into Trajectory::actions
  int64_t first_step = 0;  // 1-based step of the first pull
  int64_t pulls = 0;
  double mean = 0.0;       // value handed back to the solver
};

// Per-step log of a bandit run. Actions are interned so each step stores an
// index; step t (1-based) lives at position t-1.
class Trajectory {
 public:
  int Intern(const Assignment& x);
  void Record(int action, double reward);

  int64_t size() const { return static_cast<int64_t>(rewards_.size()); }
  const std::vector<Assignment>& actions() const { return actions_; }
  const std::vector<int>& step_actions() const { return step_actions_; }
  const std::vector<double>& rewards() const { return rewards_; }
  const Assignment& ActionAt(int64_t t) const {
    return actions_[step_actions_[t - 1]];
  }
  double CumulativeReward() const;

  // Number of exploration steps; the exploitation phase starts after it.
  int64_t phase_boundary = 0;
  std::vector<QueryRecord> queries;
  std::vector<std::string> warnings;

 private:
  std::vector<Assignment> actions_;
  std::unordered_map<Assignment, int, AssignmentHash> index_;
  std::vector<int> step_actions_;
  std::vector<double> rewards_;
};

struct CetcResult {
  Trajectory trajectory;
  ExplorationSchedule schedule;
  SolverOutput solver_output;
};

// Explore-then-commit around an offline solver: each oracle query the solver
// issues is answered with the mean of m fresh pulls of that assignment, then
// the solver's output is played for the remaining steps. Throws
// HorizonExhausted if exploration would run past T.
CetcResult RunCetc(const SolverSpec& spec, const Constraint& constraint,
                   BanditEnvironment& env, int64_t horizon, Rng& rng,
                   const RunOptions& options = {});

// UCB1 over an explicit action list: each action once, then the highest
// mean + sqrt(2 ln t / pulls); ties go to the lowest index.
Trajectory RunNaiveUcb(BanditEnvironment& env,
                       std::span<const Assignment> actions, int64_t horizon,
                       Rng& rng);

// Uniformly random action each step.
Trajectory RunRandom(BanditEnvironment& env,
                     std::span<const Assignment> actions, int64_t horizon,
                     Rng& rng);

// R(t) = alpha * t * f_opt - sum_{s <= t} reward_s for t = 1..T.
std::vector<double> ComputeAlphaRegret(const Trajectory& trajectory,
                                       double alpha, double f_opt);

}  // namespace ksub

#endif  // KSUB_BANDIT_H_
