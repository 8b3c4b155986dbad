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

#ifndef KSUB_VALUE_ORACLE_H_
#define KSUB_VALUE_ORACLE_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <vector>

#include "ksub/lattice.h"

namespace ksub {

// Value oracle for f : (k+1)^V -> R. Every Evaluate() call is one query and
// bumps the counter atomically, so an oracle can be shared across threads
// when its DoEvaluate() is itself thread-safe.
class ValueOracle {
 public:
  explicit ValueOracle(Dims dims) : dims_(dims) {}
  virtual ~ValueOracle() = default;

  ValueOracle(const ValueOracle&) = delete;
  ValueOracle& operator=(const ValueOracle&) = delete;

  double Evaluate(const Assignment& x);

  const Dims& dims() const { return dims_; }
  int64_t query_count() const {
    return query_count_.load(std::memory_order_relaxed);
  }

 protected:
  virtual double DoEvaluate(const Assignment& x) = 0;

 private:
  Dims dims_;
  std::atomic<int64_t> query_count_{0};
};

class FunctionOracle : public ValueOracle {
 public:
  using Function = std::function<double(const Assignment&)>;
  FunctionOracle(Dims dims, Function f) : ValueOracle(dims), f_(std::move(f)) {}

 protected:
  double DoEvaluate(const Assignment& x) override { return f_(x); }

 private:
  Function f_;
};

// Dense table over the whole lattice indexed by Assignment::LatticeIndex().
class TableOracle : public ValueOracle {
 public:
  TableOracle(Dims dims, std::vector<double> values);

  const std::vector<double>& values() const { return values_; }

 protected:
  double DoEvaluate(const Assignment& x) override {
    return values_[x.LatticeIndex()];
  }

 private:
  std::vector<double> values_;
};

// f(x) = scale * base(x) + shift.
class AffineOracle : public ValueOracle {
 public:
  AffineOracle(ValueOracle* base, double scale, double shift);

 protected:
  double DoEvaluate(const Assignment& x) override {
    return scale_ * base_->Evaluate(x) + shift_;
  }

 private:
  ValueOracle* base_;
  double scale_;
  double shift_;
};

// Surrogate f̂ with |f̂(x) - f(x)| <= epsilon everywhere. The perturbation of
// each assignment is fixed for the oracle's lifetime: either a seeded draw
// (a pure function of seed and labels, uniform in [-epsilon, epsilon]) or a
// caller-supplied table keyed by lattice index.
class BoundedNoisyOracle : public ValueOracle {
 public:
  // `base` is not owned and must outlive this oracle.
  BoundedNoisyOracle(ValueOracle* base, double epsilon, uint64_t seed);
  BoundedNoisyOracle(ValueOracle* base, double epsilon,
                     std::vector<double> perturbation_table);

  double epsilon() const { return epsilon_; }
  double Perturbation(const Assignment& x) const;

 protected:
  double DoEvaluate(const Assignment& x) override {
    return base_->Evaluate(x) + Perturbation(x);
  }

 private:
  ValueOracle* base_;
  double epsilon_;
  uint64_t seed_ = 0;
  std::vector<double> table_;
};

// Writes f over every lattice point into a table. Throws InstanceTooLarge when
// (k+1)^n exceeds `limit`.
std::vector<double> TabulateLattice(ValueOracle& oracle, uint64_t limit);

// Perturbation table that pushes every value towards the lattice mean by
// epsilon, flattening differences as much as the bound allows.
std::vector<double> FlatteningPerturbation(const std::vector<double>& values,
                                           double epsilon);

}  // namespace ksub

#endif  // KSUB_VALUE_ORACLE_H_
