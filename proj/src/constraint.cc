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

#include "ksub/constraint.h"

#include <numeric>
#include <sstream>

#include "ksub/error.h"

namespace ksub {

IndividualBudgets::IndividualBudgets(std::vector<int> per_type)
    : per_type_(std::move(per_type)), total_(0) {
  if (per_type_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "budgets need k >= 1 entries");
  }
  for (int b : per_type_) {
    if (b < 0) throw Error(ErrorCode::kInvalidArgument, "negative budget");
    total_ += b;
  }
}

Constraint Constraint::Unconstrained() {
  Constraint c;
  c.label_ = "unconstrained";
  return c;
}

Constraint Constraint::TotalSize(int ground_size, int budget) {
  Constraint c;
  c.kind_ = Kind::kTotalSize;
  c.ts_budget_ = budget;
  c.matroid_ = std::make_shared<UniformMatroid>(ground_size, budget);
  c.label_ = "ts:" + std::to_string(budget);
  return c;
}

Constraint Constraint::IndividualSize(IndividualBudgets budgets) {
  Constraint c;
  c.kind_ = Kind::kIndividualSize;
  c.label_ = "is:";
  for (size_t i = 0; i < budgets.per_type().size(); ++i) {
    if (i > 0) c.label_ += ",";
    c.label_ += std::to_string(budgets.per_type()[i]);
  }
  c.budgets_ = std::make_shared<IndividualBudgets>(std::move(budgets));
  return c;
}

Constraint Constraint::Matroid(std::shared_ptr<const MatroidOracle> matroid) {
  Constraint c;
  c.kind_ = Kind::kMatroid;
  c.matroid_ = std::move(matroid);
  c.label_ = "matroid";
  return c;
}

Constraint Constraint::Parse(std::string_view text, const Dims& dims) {
  const auto bad = [&](const std::string& why) {
    return Error(ErrorCode::kParseError,
                 "constraint '" + std::string(text) + "': " + why);
  };
  const auto parse_int = [&](std::string_view token) {
    try {
      size_t used = 0;
      int value = std::stoi(std::string(token), &used);
      if (used != token.size()) throw bad("bad integer");
      return value;
    } catch (const std::logic_error&) {
      throw bad("bad integer '" + std::string(token) + "'");
    }
  };
  if (text == "unconstrained") return Unconstrained();
  if (text.starts_with("ts:")) {
    return TotalSize(dims.n(), parse_int(text.substr(3)));
  }
  if (text.starts_with("is:")) {
    std::vector<int> budgets;
    std::string_view rest = text.substr(3);
    size_t start = 0;
    while (start <= rest.size()) {
      size_t end = rest.find(',', start);
      if (end == std::string_view::npos) end = rest.size();
      budgets.push_back(parse_int(rest.substr(start, end - start)));
      start = end + 1;
    }
    if (static_cast<int>(budgets.size()) != dims.k()) {
      throw Error(ErrorCode::kDimsMismatch,
                  "is: needs exactly k=" + std::to_string(dims.k()) +
                      " budgets");
    }
    return IndividualSize(IndividualBudgets(std::move(budgets)));
  }
  if (text.starts_with("partition:")) {
    const std::string path(text.substr(10));
    auto matroid = std::make_shared<PartitionMatroid>(
        ReadPartitionMatroidFile(path, dims.n()));
    Constraint c = Matroid(std::move(matroid));
    c.label_ = "partition:" + path;
    return c;
  }
  throw bad("expected unconstrained | ts:<B> | is:<B1,...> | partition:<file>");
}

const IndividualBudgets& Constraint::budgets() const {
  if (!budgets_) {
    throw Error(ErrorCode::kInvalidArgument, "constraint has no budgets");
  }
  return *budgets_;
}

const MatroidOracle& Constraint::matroid() const {
  if (!matroid_) {
    throw Error(ErrorCode::kInvalidArgument, "constraint has no matroid");
  }
  return *matroid_;
}

bool Constraint::IsFeasible(const Assignment& x) const {
  switch (kind_) {
    case Kind::kUnconstrained:
      return true;
    case Kind::kTotalSize:
      return x.SupportSize() <= ts_budget_;
    case Kind::kIndividualSize:
      if (static_cast<int>(budgets_->per_type().size()) != x.k()) {
        throw Error(ErrorCode::kDimsMismatch, "budget count != k");
      }
      for (int i = 1; i <= x.k(); ++i) {
        if (x.CountOfType(i) > (*budgets_)[i]) return false;
      }
      return true;
    case Kind::kMatroid:
      return matroid_->IsIndependent(x.Support());
  }
  return false;
}

std::string Constraint::ToString() const { return label_; }

namespace {

class FeasibleWalker {
 public:
  FeasibleWalker(const Dims& dims, const Constraint& constraint,
                 uint64_t limit,
                 const std::function<void(const Assignment&)>& visit)
      : constraint_(constraint), limit_(limit), visit_(visit), x_(dims) {}

  void Run() { Walk(0); }

 private:
  void Walk(int e) {
    if (e == x_.n()) {
      if (++visited_ > limit_) {
        throw Error(ErrorCode::kInstanceTooLarge,
                    "feasible set exceeds limit " + std::to_string(limit_));
      }
      visit_(x_);
      return;
    }
    Walk(e + 1);
    for (int type = 1; type <= x_.k(); ++type) {
      x_.Set(e, type);
      if (constraint_.IsFeasible(x_)) Walk(e + 1);
    }
    x_.Set(e, 0);
  }

  const Constraint& constraint_;
  uint64_t limit_;
  const std::function<void(const Assignment&)>& visit_;
  Assignment x_;
  uint64_t visited_ = 0;
};

}  // namespace

void ForEachFeasible(const Dims& dims, const Constraint& constraint,
                     uint64_t limit,
                     const std::function<void(const Assignment&)>& visit) {
  FeasibleWalker(dims, constraint, limit, visit).Run();
}

uint64_t CountFeasible(const Dims& dims, const Constraint& constraint,
                       uint64_t limit) {
  uint64_t count = 0;
  ForEachFeasible(dims, constraint, limit,
                  [&](const Assignment&) { ++count; });
  return count;
}

bool IsMaximal(const Assignment& x, const Constraint& constraint) {
  if (!constraint.IsFeasible(x)) return false;
  for (int e = 0; e < x.n(); ++e) {
    if (x[e] != 0) continue;
    for (int type = 1; type <= x.k(); ++type) {
      if (constraint.IsFeasible(x.With(e, type))) return false;
    }
  }
  return true;
}

namespace {

// Walks partial assignments in element order but only keeps branches that
// can still reach a maximal point; counts maximal leaves against the cap.
class MaximalWalker {
 public:
  MaximalWalker(const Dims& dims, const Constraint& constraint, uint64_t cap)
      : constraint_(constraint), cap_(cap), x_(dims) {}

  std::vector<Assignment> Run() {
    Walk(0);
    return std::move(actions_);
  }

 private:
  void Walk(int e) {
    if (e == x_.n()) {
      if (IsMaximal(x_, constraint_)) {
        if (actions_.size() >= cap_) {
          throw Error(ErrorCode::kActionSpaceTooLarge,
                      "more than " + std::to_string(cap_) +
                          " maximal actions");
        }
        actions_.push_back(x_);
      }
      return;
    }
    for (int type = 1; type <= x_.k(); ++type) {
      x_.Set(e, type);
      if (constraint_.IsFeasible(x_)) Walk(e + 1);
    }
    x_.Set(e, 0);
    Walk(e + 1);
  }

  const Constraint& constraint_;
  uint64_t cap_;
  Assignment x_;
  std::vector<Assignment> actions_;
};

}  // namespace

std::vector<Assignment> EnumerateMaximalActions(const Dims& dims,
                                                const Constraint& constraint,
                                                uint64_t cap) {
  std::vector<Assignment> actions = MaximalWalker(dims, constraint, cap).Run();
  if (actions.empty()) {
    throw Error(ErrorCode::kEmptyActions, "no maximal feasible actions");
  }
  return actions;
}

}  // namespace ksub
