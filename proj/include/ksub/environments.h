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

#ifndef KSUB_ENVIRONMENTS_H_
#define KSUB_ENVIRONMENTS_H_

#include <memory>
#include <optional>
#include <unordered_map>

#include "ksub/bandit.h"
#include "ksub/influence.h"
#include "ksub/value_oracle.h"

namespace ksub {

// Reward ~ Bernoulli(f(x)). f must lie in [0, 1] on every pulled assignment;
// the first violation throws ValueOutOfRange.
class BernoulliEnvironment : public BanditEnvironment {
 public:
  // Takes ownership of the oracle.
  explicit BernoulliEnvironment(std::unique_ptr<ValueOracle> oracle);

  const Dims& dims() const override { return oracle_->dims(); }
  double Pull(const Assignment& x, Rng& rng) override;
  std::optional<double> ExpectedValue(const Assignment& x) const override;

  ValueOracle& oracle() { return *oracle_; }

 private:
  double Mean(const Assignment& x) const;

  std::unique_ptr<ValueOracle> oracle_;
  mutable std::unordered_map<Assignment, double, AssignmentHash> cache_;
};

struct InfluenceEnvOptions {
  // Divide spread by node_count so rewards lie in [0, 1].
  bool normalize = true;
  // Simulations behind ExpectedValue().
  int n_sims = 100;
  uint64_t expectation_seed = 0x5eed;
};

// Each pull is one k-IC cascade. ExpectedValue() is a Monte Carlo estimate
// whose stream is derived from the assignment, so repeated calls agree.
class InfluenceEnvironment : public BanditEnvironment {
 public:
  InfluenceEnvironment(std::shared_ptr<const InfluenceGraph> graph,
                       InfluenceEnvOptions options = {});

  const Dims& dims() const override { return dims_; }
  double Pull(const Assignment& x, Rng& rng) override;
  std::optional<double> ExpectedValue(const Assignment& x) const override;

  const InfluenceGraph& graph() const { return *graph_; }

 private:
  std::shared_ptr<const InfluenceGraph> graph_;
  InfluenceEnvOptions options_;
  Dims dims_;
};

// Value oracle that answers with an environment's expected value; used for
// offline reference solutions.
class ExpectedValueOracle : public ValueOracle {
 public:
  explicit ExpectedValueOracle(const BanditEnvironment& env)
      : ValueOracle(env.dims()), env_(env) {}

 protected:
  double DoEvaluate(const Assignment& x) override;

 private:
  const BanditEnvironment& env_;
};

}  // namespace ksub

#endif  // KSUB_ENVIRONMENTS_H_
