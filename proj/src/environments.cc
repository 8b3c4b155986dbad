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

#include "ksub/environments.h"

#include <string>

#include "ksub/error.h"

namespace ksub {

BernoulliEnvironment::BernoulliEnvironment(std::unique_ptr<ValueOracle> oracle)
    : oracle_(std::move(oracle)) {}

double BernoulliEnvironment::Mean(const Assignment& x) const {
  auto it = cache_.find(x);
  if (it != cache_.end()) return it->second;
  const double f = oracle_->Evaluate(x);
  if (!(f >= 0.0 && f <= 1.0)) {
    throw Error(ErrorCode::kValueOutOfRange,
                "f(" + x.ToString() + ") = " + std::to_string(f) +
                    " outside [0, 1]");
  }
  cache_.emplace(x, f);
  return f;
}

double BernoulliEnvironment::Pull(const Assignment& x, Rng& rng) {
  return Uniform01(rng) < Mean(x) ? 1.0 : 0.0;
}

std::optional<double> BernoulliEnvironment::ExpectedValue(
    const Assignment& x) const {
  return Mean(x);
}

InfluenceEnvironment::InfluenceEnvironment(
    std::shared_ptr<const InfluenceGraph> graph, InfluenceEnvOptions options)
    : graph_(std::move(graph)),
      options_(options),
      dims_(graph_->node_count(), graph_->topic_count()) {}

double InfluenceEnvironment::Pull(const Assignment& x, Rng& rng) {
  const double spread = SimulateKIc(*graph_, x, rng);
  return options_.normalize ? spread / graph_->node_count() : spread;
}

std::optional<double> InfluenceEnvironment::ExpectedValue(
    const Assignment& x) const {
  Rng rng(DeriveSeed(options_.expectation_seed, x.Hash()));
  const double sigma = EstimateSigma(*graph_, x, options_.n_sims, rng);
  return options_.normalize ? sigma / graph_->node_count() : sigma;
}

double ExpectedValueOracle::DoEvaluate(const Assignment& x) {
  const std::optional<double> value = env_.ExpectedValue(x);
  if (!value) {
    throw Error(ErrorCode::kInvalidArgument,
                "environment has no expected-value instrumentation");
  }
  return *value;
}

}  // namespace ksub
