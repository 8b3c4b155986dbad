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

#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <span>
#include <sstream>
#include <vector>

#include "gtest/gtest.h"
#include "ksub/constraint.h"
#include "ksub/error.h"
#include "ksub/lattice.h"
#include "ksub/matroid.h"

namespace ksub {
namespace {

template <typename F>
void ExpectError(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(ErrorCodeName(e.code()), ErrorCodeName(code)) << e.what();
  }
}

Assignment WithSupport(Dims dims, const std::vector<int>& support) {
  Assignment x(dims);
  for (int e : support) x.Set(e, 1);
  return x;
}

uint64_t Binomial(int n, int r) {
  uint64_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

uint64_t Power(uint64_t b, int e) {
  uint64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

TEST(AvailableElementsTest, UniformExamples) {
  const Dims dims(4, 2);
  EXPECT_EQ(AvailableElements(UniformMatroid(4, 2), WithSupport(dims, {3})),
            (std::vector<int>{0, 1, 2}));
  EXPECT_TRUE(
      AvailableElements(UniformMatroid(4, 1), WithSupport(dims, {3})).empty());
}

// An independence oracle over a listed family, with no axiom validation.
class FamilyOracle : public MatroidOracle {
 public:
  FamilyOracle(int n, std::vector<ElementSet> family)
      : n_(n), family_(family.begin(), family.end()) {}
  int ground_size() const override { return n_; }
  bool IsIndependent(std::span<const int> subset) const override {
    return family_.count(ElementSet(subset.begin(), subset.end())) > 0;
  }

 private:
  int n_;
  std::set<ElementSet> family_;
};

TEST(AvailableElementsTest, ListedFamilyExample) {
  // All subsets of {0,1} plus {2}. From {0} only 1 extends. The family
  // breaks the exchange axiom ({2} cannot grow from {0,1}), so it cannot be
  // an ExplicitMatroid.
  const std::vector<ElementSet> family = {{}, {0}, {1}, {0, 1}, {2}};
  EXPECT_EQ(AvailableElements(FamilyOracle(3, family),
                              WithSupport(Dims(3, 1), {0})),
            (std::vector<int>{1}));
  ExpectError(ErrorCode::kNotAMatroid, [&] { ExplicitMatroid(3, family); });
}

TEST(AvailableElementsTest, ExplicitMatroid) {
  // All subsets of {0,1} plus {2} and {0,2}: a valid matroid of rank 2.
  const ExplicitMatroid m(3, {{}, {0}, {1}, {0, 1}, {2}, {0, 2}});
  EXPECT_EQ(AvailableElements(m, WithSupport(Dims(3, 1), {0})),
            (std::vector<int>{1, 2}));
  EXPECT_TRUE(AvailableElements(m, WithSupport(Dims(3, 1), {0, 2})).empty());
}

TEST(AvailableElementsTest, RejectsInfeasibleOrMismatched) {
  const UniformMatroid m(3, 1);
  ExpectError(ErrorCode::kInfeasibleState,
              [&] { AvailableElements(m, WithSupport(Dims(3, 1), {0, 1})); });
  ExpectError(ErrorCode::kDimsMismatch,
              [&] { AvailableElements(m, Assignment(Dims(4, 1))); });
}

TEST(AvailableElementsTest, UniformIsComplementBelowCapacity) {
  const Dims dims(5, 1);
  for (int cap = 0; cap <= 5; ++cap) {
    const UniformMatroid m(5, cap);
    Assignment x(dims);
    do {
      if (x.SupportSize() > cap) continue;
      const std::vector<int> avail = AvailableElements(m, x);
      std::vector<int> expected;
      if (x.SupportSize() < cap) {
        for (int e = 0; e < 5; ++e) {
          if (!x.IsAssigned(e)) expected.push_back(e);
        }
      }
      EXPECT_EQ(avail, expected);
    } while (NextLatticePoint(x));
  }
}

TEST(MatroidRankTest, Examples) {
  EXPECT_EQ(MatroidRank(UniformMatroid(350, 6)), 6);
  EXPECT_EQ(MatroidRank(UniformMatroid(4, 9)), 4);
  EXPECT_EQ(MatroidRank(PartitionMatroid(4, {{0, 1}, {2, 3}}, {1, 1})), 2);
}

TEST(MatroidRankTest, GreedyExtensionStopsAtRank) {
  const PartitionMatroid m(6, {{0, 1, 2}, {3}, {4, 5}}, {2, 0, 1});
  const Dims dims(6, 1);
  Assignment x(dims);
  int steps = 0;
  for (std::vector<int> avail = AvailableElements(m, x); !avail.empty();
       avail = AvailableElements(m, x)) {
    for (int e : avail) EXPECT_FALSE(x.IsAssigned(e));
    x.Set(avail.back(), 1);
    ++steps;
  }
  EXPECT_EQ(steps, MatroidRank(m));
  EXPECT_EQ(steps, 3);
}

TEST(MatroidAxiomsTest, UniformPasses) {
  const ExplicitMatroid m = ExplicitMatroid::Materialize(UniformMatroid(4, 2));
  EXPECT_EQ(m.Family().size(), 1u + 4u + 6u);
  EXPECT_TRUE(CheckMatroidAxioms(UniformMatroid(4, 2)).ok());
}

TEST(MatroidAxiomsTest, DownwardClosureWitness) {
  const AxiomReport r =
      CheckMatroidAxioms(3, {{}, {0}, {1}, {0, 1}, {0, 1, 2}});
  EXPECT_TRUE(r.empty_set_ok);
  EXPECT_FALSE(r.downward_closed_ok);
  ASSERT_TRUE(r.downward_witness.has_value());
  EXPECT_EQ(*r.downward_witness, (ElementSet{0, 2}));
}

TEST(MatroidAxiomsTest, MissingEmptySet) {
  const AxiomReport r = CheckMatroidAxioms(2, {{0}});
  EXPECT_FALSE(r.empty_set_ok);
  EXPECT_FALSE(r.ok());
}

TEST(MatroidAxiomsTest, ExchangeViolation) {
  // {2} cannot be extended from {0,1}.
  const AxiomReport r = CheckMatroidAxioms(3, {{}, {0}, {1}, {2}, {0, 1}});
  EXPECT_TRUE(r.downward_closed_ok);
  EXPECT_FALSE(r.exchange_ok);
  ExpectError(ErrorCode::kNotAMatroid, [] {
    ExplicitMatroid(3, {{}, {0}, {1}, {2}, {0, 1}});
  });
}

TEST(MatroidAxiomsTest, TooLargeGroundSet) {
  ExpectError(ErrorCode::kInstanceTooLarge,
              [] { CheckMatroidAxioms(UniformMatroid(25, 2)); });
}

TEST(PartitionMatroidTest, ValidatesPartition) {
  ExpectError(ErrorCode::kInvalidArgument,
              [] { PartitionMatroid(3, {{0, 1}}, {1}); });
  ExpectError(ErrorCode::kInvalidArgument,
              [] { PartitionMatroid(3, {{0, 1}, {1, 2}}, {1, 1}); });
}

TEST(PartitionMatroidTest, ReadsBlockFile) {
  std::istringstream in("# two blocks\nblock 1: 0 1\nblock 2: 2 3 4\n");
  const PartitionMatroid m = ReadPartitionMatroid(in, 5);
  EXPECT_EQ(m.capacities(), (std::vector<int>{1, 2}));
  EXPECT_EQ(MatroidRank(m), 3);
  EXPECT_TRUE(CheckMatroidAxioms(m).ok());
}

TEST(ConstraintTest, ParseForms) {
  const Dims dims(4, 2);
  EXPECT_EQ(Constraint::Parse("unconstrained", dims).kind(),
            Constraint::Kind::kUnconstrained);
  const Constraint ts = Constraint::Parse("ts:2", dims);
  EXPECT_EQ(ts.kind(), Constraint::Kind::kTotalSize);
  EXPECT_EQ(ts.total_size_budget(), 2);
  const Constraint is = Constraint::Parse("is:1,2", dims);
  EXPECT_EQ(is.budgets().per_type(), (std::vector<int>{1, 2}));
  ExpectError(ErrorCode::kDimsMismatch,
              [&] { Constraint::Parse("is:1,2,3", dims); });
  ExpectError(ErrorCode::kParseError, [&] { Constraint::Parse("ts:x", dims); });

  const auto path =
      std::filesystem::temp_directory_path() / "ksub_constraint_test.txt";
  std::ofstream(path) << "block 1: 0 1\nblock 1: 2 3\n";
  const Constraint pm = Constraint::Parse("partition:" + path.string(), dims);
  EXPECT_EQ(pm.kind(), Constraint::Kind::kMatroid);
  EXPECT_TRUE(pm.IsFeasible(Assignment::Parse(dims, "1010")));
  EXPECT_FALSE(pm.IsFeasible(Assignment::Parse(dims, "1100")));
  std::filesystem::remove(path);
}

// ForEachFeasible against a plain filter over the whole lattice.
TEST(ConstraintTest, FeasibleWalkMatchesFilter) {
  const Dims dims(4, 3);
  const std::vector<Constraint> constraints = {
      Constraint::Unconstrained(), Constraint::TotalSize(4, 2),
      Constraint::IndividualSize(IndividualBudgets({1, 0, 2})),
      Constraint::Matroid(std::make_shared<PartitionMatroid>(
          4, std::vector<ElementSet>{{0, 3}, {1, 2}},
          std::vector<int>{1, 2}))};
  for (const Constraint& c : constraints) {
    std::set<uint64_t> expected;
    Assignment x(dims);
    do {
      if (c.IsFeasible(x)) expected.insert(x.LatticeIndex());
    } while (NextLatticePoint(x));
    std::set<uint64_t> walked;
    ForEachFeasible(dims, c, 1000, [&](const Assignment& y) {
      EXPECT_TRUE(walked.insert(y.LatticeIndex()).second);
    });
    EXPECT_EQ(walked, expected) << c.ToString();
    EXPECT_EQ(CountFeasible(dims, c, 1000), expected.size());
  }
  ExpectError(ErrorCode::kInstanceTooLarge, [&] {
    CountFeasible(dims, Constraint::Unconstrained(), 10);
  });
}

TEST(MaximalActionsTest, TotalSizeCount) {
  // C(4,2) supports times 2^2 type choices.
  const Dims dims(4, 2);
  const auto actions =
      EnumerateMaximalActions(dims, Constraint::TotalSize(4, 2), 1000);
  EXPECT_EQ(actions.size(), 24u);
  for (int n = 2; n <= 6; ++n) {
    for (int b = 1; b <= n; ++b) {
      EXPECT_EQ(EnumerateMaximalActions(Dims(n, 3), Constraint::TotalSize(n, b),
                                        100000)
                    .size(),
                Binomial(n, b) * Power(3, b));
    }
  }
}

TEST(MaximalActionsTest, IndividualSizeCount) {
  // n! / (B1! B2! (n - B1 - B2)!) ways to pick disjoint type supports.
  const Dims dims(5, 2);
  const auto actions = EnumerateMaximalActions(
      dims, Constraint::IndividualSize(IndividualBudgets({2, 1})), 1000);
  EXPECT_EQ(actions.size(), Binomial(5, 2) * Binomial(3, 1));
  for (const Assignment& a : actions) {
    EXPECT_EQ(a.CountOfType(1), 2);
    EXPECT_EQ(a.CountOfType(2), 1);
  }
}

TEST(MaximalActionsTest, EveryActionIsMaximal) {
  const Dims dims(4, 2);
  const Constraint c = Constraint::Matroid(std::make_shared<PartitionMatroid>(
      4, std::vector<ElementSet>{{0, 1, 2}, {3}}, std::vector<int>{2, 1}));
  uint64_t maximal = 0;
  ForEachFeasible(dims, c, 1000, [&](const Assignment& x) {
    if (IsMaximal(x, c)) ++maximal;
  });
  const auto actions = EnumerateMaximalActions(dims, c, 1000);
  EXPECT_EQ(actions.size(), maximal);
  for (const Assignment& a : actions) EXPECT_TRUE(IsMaximal(a, c));
}

TEST(MaximalActionsTest, Errors) {
  ExpectError(ErrorCode::kActionSpaceTooLarge, [] {
    EnumerateMaximalActions(Dims(6, 3), Constraint::Unconstrained(), 100);
  });
}

}  // namespace
}  // namespace ksub
