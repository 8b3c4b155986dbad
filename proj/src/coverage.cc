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

#include "ksub/coverage.h"

#include <algorithm>
#include <string>

#include "ksub/error.h"
#include "ksub/properties.h"

namespace ksub {

CoverageInstance::CoverageInstance(Dims dims, std::vector<double> weights,
                                   std::vector<std::vector<int>> covers)
    : dims_(dims), weights_(std::move(weights)), covers_(std::move(covers)) {
  if (covers_.size() != static_cast<size_t>(dims_.n()) * dims_.k()) {
    throw Error(ErrorCode::kInvalidArgument,
                "coverage needs one subset per (element, type) pair");
  }
  for (double w : weights_) {
    if (!(w >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "negative coverage weight");
    }
  }
  for (auto& subset : covers_) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (int u : subset) {
      if (u < 0 || u >= universe_size()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "universe point " + std::to_string(u) + " out of range");
      }
    }
  }
}

double CoverageInstance::Evaluate(const Assignment& x) const {
  std::vector<char> covered(weights_.size(), 0);
  for (int e = 0; e < dims_.n(); ++e) {
    if (x[e] == 0) continue;
    for (int u : Covered(e, x[e])) covered[u] = 1;
  }
  double total = 0.0;
  for (size_t u = 0; u < weights_.size(); ++u) {
    if (covered[u]) total += weights_[u];
  }
  return total;
}

CoupledInstance::CoupledInstance(CoverageInstance coverage,
                                 std::vector<double> lambda)
    : coverage_(std::move(coverage)), lambda_(std::move(lambda)) {
  const int k = coverage_.dims().k();
  if (static_cast<int>(lambda_.size()) != k) {
    throw Error(ErrorCode::kInvalidArgument, "need one lambda per type");
  }
  if (!(lambda_[0] < 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda_1 must be negative");
  }
  for (int i = 1; i < k; ++i) {
    if (!(lambda_[0] + lambda_[i] >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "lambda_1 + lambda_" + std::to_string(i + 1) +
                      " must be >= 0");
    }
  }
}

double CoupledInstance::Evaluate(const Assignment& x) const {
  double value = coverage_.Evaluate(x);
  for (int e = 0; e < x.n(); ++e) {
    if (x[e] != 0) value += lambda_[x[e] - 1];
  }
  return value;
}

CoverageInstance GenerateCoverage(Dims dims, Rng& rng,
                                  const CoverageGenParams& params) {
  if (params.universe_size < 1 || params.weight_denominator < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bad coverage parameters");
  }
  const int u_size = params.universe_size;
  // Integer weights >= 1 summing to the denominator (when it is large
  // enough), so f lies in [0, 1].
  std::vector<int> raw(u_size);
  int raw_total = 0;
  for (int& r : raw) {
    r = 1 + static_cast<int>(rng() % 8);
    raw_total += r;
  }
  std::vector<double> weights(u_size);
  int assigned = 0;
  for (int u = 0; u < u_size; ++u) {
    int w = std::max(1, raw[u] * params.weight_denominator / raw_total);
    if (u == u_size - 1) {
      w = std::max(1, params.weight_denominator - assigned);
    }
    assigned += w;
    weights[u] = static_cast<double>(w) / params.weight_denominator;
  }
  std::vector<std::vector<int>> covers(static_cast<size_t>(dims.n()) *
                                       dims.k());
  for (auto& subset : covers) {
    for (int u = 0; u < u_size; ++u) {
      if (Uniform01(rng) < params.cover_probability) subset.push_back(u);
    }
    if (subset.empty()) subset.push_back(static_cast<int>(rng() % u_size));
  }
  return CoverageInstance(dims, std::move(weights), std::move(covers));
}

CoupledInstance GenerateCoupled(Dims dims, Rng& rng,
                                const CoverageGenParams& params) {
  const double denom = params.weight_denominator;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CoverageInstance g = GenerateCoverage(dims, rng, params);
    // lambda_1 in -[1, 256]/denom; the others at least |lambda_1|.
    const int neg = 1 + static_cast<int>(rng() % 256);
    std::vector<double> lambda(dims.k());
    lambda[0] = -neg / denom;
    for (int i = 1; i < dims.k(); ++i) {
      lambda[i] = (neg + static_cast<int>(rng() % 64)) / denom;
    }
    CoupledInstance instance(std::move(g), std::move(lambda));
    if (dims.LatticeSize() > kDefaultExhaustionLimit) return instance;
    auto oracle = ExactOracle(instance);
    if (!CheckMonotone(*oracle)) return instance;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "could not generate a non-monotone coupled instance");
}

std::unique_ptr<ValueOracle> ExactOracle(const CoverageInstance& instance) {
  return std::make_unique<FunctionOracle>(
      instance.dims(),
      [instance](const Assignment& x) { return instance.Evaluate(x); });
}

std::unique_ptr<ValueOracle> ExactOracle(const CoupledInstance& instance) {
  return std::make_unique<FunctionOracle>(
      instance.dims(),
      [instance](const Assignment& x) { return instance.Evaluate(x); });
}

}  // namespace ksub
