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

#include "ksub/bandit.h"

#include <cmath>
#include <limits>

#include "ksub/error.h"
#include "ksub/value_oracle.h"

namespace ksub {

ExplorationSchedule ExplorationSchedule::Compute(double delta,
                                                 int64_t query_bound,
                                                 int64_t horizon) {
  if (horizon < 1) throw Error(ErrorCode::kInvalidArgument, "horizon < 1");
  if (query_bound < 1) {
    throw Error(ErrorCode::kInvalidArgument, "query bound < 1");
  }
  if (!(delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta <= 0");
  ExplorationSchedule s;
  s.delta = delta;
  s.query_bound = query_bound;
  s.horizon = horizon;
  const double t = static_cast<double>(horizon);
  const double n = static_cast<double>(query_bound);
  const double raw = std::cbrt(delta * delta * t * t * std::log(t)) /
                     (2.0 * std::cbrt(n * n));
  s.uncapped_m = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(raw)));
  s.m = s.uncapped_m;
  s.horizon_sufficient =
      t >= std::max(n, 2.0 * std::sqrt(2.0) * n / delta);
  if (s.m > horizon / query_bound) {
    s.m = std::max<int64_t>(1, horizon / query_bound);
    s.capped = true;
  }
  return s;
}

int Trajectory::Intern(const Assignment& x) {
  auto [it, inserted] = index_.try_emplace(x, static_cast<int>(actions_.size()));
  if (inserted) actions_.push_back(x);
  return it->second;
}

void Trajectory::Record(int action, double reward) {
  step_actions_.push_back(action);
  rewards_.push_back(reward);
}

double Trajectory::CumulativeReward() const {
  double total = 0.0;
  for (double r : rewards_) total += r;
  return total;
}

namespace {

double CheckedPull(BanditEnvironment& env, const Assignment& x, Rng& rng) {
  const double reward = env.Pull(x, rng);
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw Error(ErrorCode::kRewardOutOfRange,
                "reward " + std::to_string(reward) + " outside [0, 1]");
  }
  return reward;
}

// Answers the solver's value queries by playing the queried assignment m
// times. The solver sees an ordinary ValueOracle.
class ExplorationOracle : public ValueOracle {
 public:
  ExplorationOracle(BanditEnvironment& env, Trajectory& trajectory,
                    int64_t m, int64_t horizon, Rng& rng)
      : ValueOracle(env.dims()),
        env_(env),
        trajectory_(trajectory),
        m_(m),
        horizon_(horizon),
        rng_(rng) {}

 protected:
  double DoEvaluate(const Assignment& x) override {
    if (trajectory_.size() + m_ > horizon_) {
      throw Error(ErrorCode::kHorizonExhausted,
                  "exploration needs more than T=" + std::to_string(horizon_) +
                      " steps");
    }
    QueryRecord record;
    record.action = trajectory_.Intern(x);
    record.first_step = trajectory_.size() + 1;
    record.pulls = m_;
    double sum = 0.0;
    for (int64_t j = 0; j < m_; ++j) {
      const double reward = CheckedPull(env_, x, rng_);
      trajectory_.Record(record.action, reward);
      sum += reward;
    }
    record.mean = sum / static_cast<double>(m_);
    trajectory_.queries.push_back(record);
    return record.mean;
  }

 private:
  BanditEnvironment& env_;
  Trajectory& trajectory_;
  int64_t m_;
  int64_t horizon_;
  Rng& rng_;
};

}  // namespace

CetcResult RunCetc(const SolverSpec& spec, const Constraint& constraint,
                   BanditEnvironment& env, int64_t horizon, Rng& rng,
                   const RunOptions& options) {
  CetcResult result{Trajectory{},
                    ExplorationSchedule::Compute(spec.delta, spec.query_bound,
                                                 horizon),
                    SolverOutput{Assignment(env.dims()), 0, {}}};
  Trajectory& trajectory = result.trajectory;
  if (!result.schedule.horizon_sufficient) {
    trajectory.warnings.push_back(
        "horizon below max{N, 2*sqrt(2)*N/delta}; regret bound not covered");
  }
  if (result.schedule.capped) {
    trajectory.warnings.push_back(
        "N*m > T: pulls per query capped at " +
        std::to_string(result.schedule.m) + " (formula gives " +
        std::to_string(result.schedule.uncapped_m) + ")");
  }
  // Separate stream for the solver's own coin flips.
  Rng solver_rng(rng());
  ExplorationOracle channel(env, trajectory, result.schedule.m, horizon, rng);
  result.solver_output =
      RunSolver(spec, constraint, channel, solver_rng, options);
  trajectory.phase_boundary = trajectory.size();
  const int commit = trajectory.Intern(result.solver_output.solution);
  while (trajectory.size() < horizon) {
    trajectory.Record(commit,
                      CheckedPull(env, result.solver_output.solution, rng));
  }
  return result;
}

namespace {

void RequireActions(std::span<const Assignment> actions) {
  if (actions.empty()) {
    throw Error(ErrorCode::kEmptyActions, "action list is empty");
  }
}

}  // namespace

Trajectory RunNaiveUcb(BanditEnvironment& env,
                       std::span<const Assignment> actions, int64_t horizon,
                       Rng& rng) {
  RequireActions(actions);
  Trajectory trajectory;
  const size_t count = actions.size();
  std::vector<double> sums(count, 0.0);
  std::vector<int64_t> pulls(count, 0);
  std::vector<int> ids(count);
  for (size_t a = 0; a < count; ++a) ids[a] = trajectory.Intern(actions[a]);
  for (int64_t t = 1; t <= horizon; ++t) {
    size_t choice = 0;
    if (static_cast<uint64_t>(t) <= count) {
      choice = static_cast<size_t>(t - 1);
    } else {
      const double log_t = std::log(static_cast<double>(t));
      double best = -std::numeric_limits<double>::infinity();
      for (size_t a = 0; a < count; ++a) {
        const double p = static_cast<double>(pulls[a]);
        const double score = sums[a] / p + std::sqrt(2.0 * log_t / p);
        if (score > best) {
          best = score;
          choice = a;
        }
      }
    }
    const double reward = CheckedPull(env, actions[choice], rng);
    sums[choice] += reward;
    ++pulls[choice];
    trajectory.Record(ids[choice], reward);
  }
  return trajectory;
}

Trajectory RunRandom(BanditEnvironment& env,
                     std::span<const Assignment> actions, int64_t horizon,
                     Rng& rng) {
  RequireActions(actions);
  Trajectory trajectory;
  const uint64_t count = actions.size();
  for (int64_t t = 1; t <= horizon; ++t) {
    const size_t choice = static_cast<size_t>(
        std::min<uint64_t>(count - 1, static_cast<uint64_t>(
                                          Uniform01(rng) * count)));
    const int id = trajectory.Intern(actions[choice]);
    trajectory.Record(id, CheckedPull(env, actions[choice], rng));
  }
  return trajectory;
}

std::vector<double> ComputeAlphaRegret(const Trajectory& trajectory,
                                       double alpha, double f_opt) {
  std::vector<double> regret;
  regret.reserve(trajectory.size());
  double cumulative = 0.0;
  const std::vector<double>& rewards = trajectory.rewards();
  for (size_t s = 0; s < rewards.size(); ++s) {
    cumulative += rewards[s];
    regret.push_back(alpha * static_cast<double>(s + 1) * f_opt - cumulative);
  }
  return regret;
}

}  // namespace ksub
