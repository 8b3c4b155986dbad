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

#ifndef KSUB_COVERAGE_H_
#define KSUB_COVERAGE_H_

#include <memory>
#include <vector>

#include "ksub/lattice.h"
#include "ksub/rng.h"
#include "ksub/value_oracle.h"

namespace ksub {

// Weighted coverage: each (element, type) pair covers a subset of a weighted
// universe and f(x) is the weight of the union over assigned pairs. Monotone
// and k-submodular.
class CoverageInstance {
 public:
  // covers[(e * k) + (i - 1)] lists universe points covered by pair (e, i).
  CoverageInstance(Dims dims, std::vector<double> weights,
                   std::vector<std::vector<int>> covers);

  const Dims& dims() const { return dims_; }
  int universe_size() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& Covered(int e, int type) const {
    return covers_[static_cast<size_t>(e) * dims_.k() + (type - 1)];
  }

  double Evaluate(const Assignment& x) const;

 private:
  Dims dims_;
  std::vector<double> weights_;
  std::vector<std::vector<int>> covers_;
};

// f(x) = g(x) + sum_i lambda_i |supp_i(x)| with g a coverage function and
// lambda_1 < 0 <= lambda_1 + lambda_i for i >= 2. Orthant submodular (g is,
// the modular term is neutral) and pairwise monotone (every pair of lambdas
// sums to >= 0), but non-monotone once a type-1 coverage gain drops below
// |lambda_1|.
class CoupledInstance {
 public:
  CoupledInstance(CoverageInstance coverage, std::vector<double> lambda);

  const Dims& dims() const { return coverage_.dims(); }
  const CoverageInstance& coverage() const { return coverage_; }
  const std::vector<double>& lambda() const { return lambda_; }

  double Evaluate(const Assignment& x) const;

 private:
  CoverageInstance coverage_;
  std::vector<double> lambda_;
};

struct CoverageGenParams {
  int universe_size = 8;
  double cover_probability = 0.35;
  // Weights are integers out of this denominator (a power of two), so every
  // value of f is exactly representable and lattice checks need no slack.
  int weight_denominator = 1024;
};

CoverageInstance GenerateCoverage(Dims dims, Rng& rng,
                                  const CoverageGenParams& params = {});

// Redraws until the instance has a strictly negative marginal.
CoupledInstance GenerateCoupled(Dims dims, Rng& rng,
                                const CoverageGenParams& params = {});

std::unique_ptr<ValueOracle> ExactOracle(const CoverageInstance& instance);
std::unique_ptr<ValueOracle> ExactOracle(const CoupledInstance& instance);

}  // namespace ksub

#endif  // KSUB_COVERAGE_H_
