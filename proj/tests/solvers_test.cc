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

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "ksub/brute_force.h"
#include "ksub/constraint.h"
#include "ksub/coverage.h"
#include "ksub/error.h"
#include "ksub/matroid.h"
#include "ksub/robustness.h"
#include "ksub/solvers.h"

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

void ExpectProbabilities(const std::vector<double>& got,
                         const std::vector<double>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    EXPECT_NEAR(got[i], want[i], 1e-12) << "type " << i + 1;
  }
}

// f(x) = sum_e w[e][x(e)] with w[e][0] = 0.
std::unique_ptr<ValueOracle> Additive(Dims dims,
                                      std::vector<std::vector<double>> w) {
  return std::make_unique<FunctionOracle>(dims, [w](const Assignment& x) {
    double v = 0;
    for (int e = 0; e < x.n(); ++e) {
      if (x[e] != 0) v += w[e][x[e] - 1];
    }
    return v;
  });
}

// Exhaustive maximum over feasible points, independent of BruteForceOpt.
double LoopOpt(ValueOracle& oracle, const Constraint& c) {
  Assignment x(oracle.dims());
  double best = -INFINITY;
  do {
    if (c.IsFeasible(x)) best = std::max(best, oracle.Evaluate(x));
  } while (NextLatticePoint(x));
  return best;
}

TEST(NonMonotoneProbabilitiesTest, Examples) {
  ExpectProbabilities(NonMonotoneTypeProbabilities(std::vector{-0.2, -0.5}),
                      {1, 0});
  ExpectProbabilities(
      NonMonotoneTypeProbabilities(std::vector{0.6, 0.4, -0.1}),
      {0.6, 0.4, 0});
  ExpectProbabilities(
      NonMonotoneTypeProbabilities(std::vector{0.5, 0.3, 0.2, 0.1}),
      {0.5, 0.25, 0.125, 0.125});
}

TEST(NonMonotoneProbabilitiesTest, MapsBackThroughSort) {
  // Sorted order is types 3, 1, 2.
  ExpectProbabilities(
      NonMonotoneTypeProbabilities(std::vector{0.4, -0.1, 0.6}),
      {0.4, 0, 0.6});
  // Ties keep type order.
  ExpectProbabilities(NonMonotoneTypeProbabilities(std::vector{-1.0, -1.0}),
                      {1, 0});
}

TEST(MonotoneProbabilitiesTest, Examples) {
  ExpectProbabilities(MonotoneTypeProbabilities(std::vector{0.3, 0.1}),
                      {0.75, 0.25});
  ExpectProbabilities(MonotoneTypeProbabilities(std::vector{-0.3, 0.0, -1.0}),
                      {1, 0, 0});
  ExpectProbabilities(MonotoneTypeProbabilities(std::vector{0.2, -0.1, 0.1}),
                      {0.8, 0, 0.2});
}

TEST(MonotoneProbabilitiesTest, LiteralRuleRejectsNegativeMass) {
  // t = 2 squares the negative gain into positive mass, so only odd t can
  // produce a negative probability: k = 2, t = 1.
  ExpectError(ErrorCode::kInvalidDistribution, [] {
    MonotoneTypeProbabilities(std::vector{0.3, -0.1}, MonotoneRule::kLiteral);
  });
  ExpectProbabilities(
      MonotoneTypeProbabilities(std::vector{0.3, 0.1}, MonotoneRule::kLiteral),
      {0.75, 0.25});
}

TEST(ProbabilitiesTest, AlwaysDistributions) {
  Rng rng(4);
  for (int trial = 0; trial < 5000; ++trial) {
    const int k = 1 + trial % 5;
    std::vector<double> gains(k);
    for (double& g : gains) g = Uniform01(rng) * 2 - 0.7;
    for (const auto& probs : {NonMonotoneTypeProbabilities(gains),
                              MonotoneTypeProbabilities(gains)}) {
      double sum = 0;
      for (double p : probs) {
        EXPECT_GE(p, 0.0);
        sum += p;
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(SolverSpecTest, TableRows) {
  const Dims dims(5, 3);
  const auto spec = [&](Algorithm a, Objective o, const Constraint& c) {
    return MakeSolverSpec(a, o, dims, c);
  };
  const SolverSpec unc = spec(Algorithm::kUncNonMonotone,
                              Objective::kNonMonotone,
                              Constraint::Unconstrained());
  EXPECT_EQ(unc.alpha.num, 1);
  EXPECT_EQ(unc.alpha.den, 2);
  EXPECT_EQ(unc.delta, 100.0);
  EXPECT_EQ(unc.query_bound, 15);
  const SolverSpec mono =
      spec(Algorithm::kUncMonotone, Objective::kMonotone,
           Constraint::Unconstrained());
  EXPECT_EQ(mono.alpha.num, 3);
  EXPECT_EQ(mono.alpha.den, 5);
  EXPECT_DOUBLE_EQ(mono.delta, (16 - 2.0 / 3) * 5);
  const SolverSpec ts = spec(Algorithm::kGreedyMatroid, Objective::kMonotone,
                             Constraint::TotalSize(5, 2));
  EXPECT_EQ(ts.alpha.den, 2);
  EXPECT_EQ(ts.delta, 3.0);
  EXPECT_EQ(ts.query_bound, 30);
  const SolverSpec ts_nm =
      spec(Algorithm::kGreedyMatroid, Objective::kNonMonotone,
           Constraint::TotalSize(5, 2));
  EXPECT_EQ(ts_nm.alpha.den, 3);
  EXPECT_DOUBLE_EQ(ts_nm.delta, 4.0);
  const SolverSpec is =
      spec(Algorithm::kGreedyIS, Objective::kMonotone,
           Constraint::IndividualSize(IndividualBudgets({1, 2, 0})));
  EXPECT_EQ(is.alpha.den, 3);
  EXPECT_DOUBLE_EQ(is.delta, 4.0 / 3 * 4);
  EXPECT_EQ(is.query_bound, 45);
  const SolverSpec pm = spec(
      Algorithm::kGreedyMatroid, Objective::kMonotone,
      Constraint::Matroid(std::make_shared<PartitionMatroid>(
          5, std::vector<ElementSet>{{0, 1}, {2, 3, 4}},
          std::vector<int>{1, 2})));
  EXPECT_EQ(pm.delta, 4.0);
  EXPECT_EQ(pm.query_bound, 45);
  ExpectError(ErrorCode::kInvalidArgument, [&] {
    spec(Algorithm::kGreedyIS, Objective::kNonMonotone,
         Constraint::IndividualSize(IndividualBudgets({1, 1, 1})));
  });
  ExpectError(ErrorCode::kInvalidArgument, [&] {
    spec(Algorithm::kUncMonotone, Objective::kMonotone,
         Constraint::TotalSize(5, 2));
  });
}

TEST(GreedyIndividualSizeTest, AdditiveExample) {
  const Dims dims(3, 2);
  auto oracle = Additive(dims, {{0.9, 0.1}, {0.5, 0.6}, {0.2, 0.3}});
  const SolverOutput out =
      GreedyIndividualSize(*oracle, IndividualBudgets({1, 1}));
  EXPECT_EQ(out.solution, Assignment::Parse(dims, "120"));
  EXPECT_DOUBLE_EQ(oracle->Evaluate(out.solution), 1.5);
  const Constraint c = Constraint::IndividualSize(IndividualBudgets({1, 1}));
  EXPECT_DOUBLE_EQ(BruteForceOpt(*oracle, c).value, 1.5);
  EXPECT_DOUBLE_EQ(LoopOpt(*oracle, c), 1.5);
}

TEST(GreedyIndividualSizeTest, ZeroBudgetsIssueNoQueries) {
  const Dims dims(3, 2);
  auto oracle = Additive(dims, {{1, 1}, {1, 1}, {1, 1}});
  const SolverOutput out =
      GreedyIndividualSize(*oracle, IndividualBudgets({0, 0}));
  EXPECT_EQ(out.solution, Assignment(dims));
  EXPECT_EQ(out.queries_used, 0);
  EXPECT_EQ(oracle->query_count(), 0);
}

TEST(GreedyIndividualSizeTest, RejectsInfeasibleBudgets) {
  auto oracle = Additive(Dims(2, 2), {{1, 1}, {1, 1}});
  ExpectError(ErrorCode::kBudgetInfeasible,
              [&] { GreedyIndividualSize(*oracle, IndividualBudgets({2, 1})); });
}

TEST(GreedyIndividualSizeTest, BudgetsMetAndRatioOnCoverage) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const Dims dims(3 + trial % 3, 2);
    auto oracle = ExactOracle(GenerateCoverage(dims, rng));
    const IndividualBudgets budgets({1, 1});
    const SolverOutput out = GreedyIndividualSize(*oracle, budgets);
    EXPECT_EQ(out.solution.CountOfType(1), 1);
    EXPECT_EQ(out.solution.CountOfType(2), 1);
    EXPECT_LE(out.queries_used, dims.n() * dims.k() * budgets.total());
    const double opt = LoopOpt(*oracle, Constraint::IndividualSize(budgets));
    EXPECT_GE(3 * oracle->Evaluate(out.solution), opt);
  }
}

TEST(GreedyMatroidTest, FullCapacityGivesFullSupport) {
  Rng rng(2);
  const Dims dims(4, 3);
  auto oracle = ExactOracle(GenerateCoverage(dims, rng));
  const SolverOutput out = GreedyMatroid(*oracle, UniformMatroid(4, 4));
  EXPECT_EQ(out.solution.SupportSize(), 4);
}

TEST(GreedyMatroidTest, RatiosOnCoverageAndCoupled) {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Dims dims(3 + trial % 3, 2);
    auto monotone = ExactOracle(GenerateCoverage(dims, rng));
    const Constraint ts = Constraint::TotalSize(dims.n(), 2);
    const SolverOutput out = GreedyMatroid(*monotone, ts.matroid());
    EXPECT_EQ(out.solution.SupportSize(), 2);
    EXPECT_TRUE(AvailableElements(ts.matroid(), out.solution).empty());
    EXPECT_LE(out.queries_used, dims.n() * dims.k() * 2);
    EXPECT_GE(2 * monotone->Evaluate(out.solution), LoopOpt(*monotone, ts));

    const Dims small(2 + trial % 3, 2);
    auto coupled = ExactOracle(GenerateCoupled(small, rng));
    const Constraint ts2 = Constraint::TotalSize(small.n(), 2);
    const SolverOutput nm = GreedyMatroid(*coupled, ts2.matroid());
    EXPECT_GE(3 * coupled->Evaluate(nm.solution), LoopOpt(*coupled, ts2));
  }
}

TEST(GreedyMatroidTest, TiesBreakByLowestElementThenType) {
  const Dims dims(3, 2);
  FunctionOracle flat(dims, [](const Assignment& x) {
    return static_cast<double>(x.SupportSize());
  });
  const SolverOutput out = GreedyMatroid(flat, UniformMatroid(3, 2));
  EXPECT_EQ(out.solution, Assignment::Parse(dims, "110"));
}

TEST(GreedySolversTest, DeterministicTraces) {
  Rng rng(3);
  const Dims dims(4, 2);
  const CoverageInstance instance = GenerateCoverage(dims, rng);
  auto a = ExactOracle(instance);
  auto b = ExactOracle(instance);
  const SolverOutput x = GreedyMatroid(*a, UniformMatroid(4, 3));
  const SolverOutput y = GreedyMatroid(*b, UniformMatroid(4, 3));
  ASSERT_EQ(x.trace.size(), y.trace.size());
  for (size_t i = 0; i < x.trace.size(); ++i) {
    EXPECT_EQ(x.trace[i].query, y.trace[i].query);
    EXPECT_EQ(x.trace[i].value, y.trace[i].value);
  }
  EXPECT_EQ(static_cast<int64_t>(x.trace.size()), x.queries_used);
  EXPECT_EQ(a->query_count(), x.queries_used);
}

TEST(UnconstrainedSolversTest, ExactlyNkQueriesAndFullSupport) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Dims dims(2 + trial % 3, 2 + trial % 2);
    auto coupled = ExactOracle(GenerateCoupled(dims, rng));
    const SolverOutput a = SolveUnconstrainedNonMonotone(*coupled, rng);
    EXPECT_EQ(a.queries_used, dims.n() * dims.k());
    EXPECT_EQ(a.solution.SupportSize(), dims.n());
    auto coverage = ExactOracle(GenerateCoverage(dims, rng));
    const SolverOutput b = SolveUnconstrainedMonotone(*coverage, rng);
    EXPECT_EQ(b.queries_used, dims.n() * dims.k());
    EXPECT_EQ(coverage->query_count(), b.queries_used);
    EXPECT_EQ(b.solution.SupportSize(), dims.n());
  }
}

TEST(UnconstrainedSolversTest, ExpectationAboveHalfOpt) {
  Rng gen(12);
  const Dims dims(3, 2);
  auto oracle = ExactOracle(GenerateCoupled(dims, gen));
  const double opt = LoopOpt(*oracle, Constraint::Unconstrained());
  std::vector<double> values;
  Rng rng(13);
  for (int trial = 0; trial < 2000; ++trial) {
    values.push_back(
        oracle->Evaluate(SolveUnconstrainedNonMonotone(*oracle, rng).solution));
  }
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double se = std::sqrt(ss / (values.size() - 1) / values.size());
  EXPECT_GE(mean + 3 * se, 0.5 * opt);
}

TEST(BruteForceTest, ConstantFunction) {
  FunctionOracle c(Dims(3, 2), [](const Assignment&) { return 4.0; });
  const OptResult r = BruteForceOpt(c, Constraint::Unconstrained());
  EXPECT_EQ(r.value, 4.0);
  EXPECT_EQ(r.solution, Assignment(Dims(3, 2)));
  EXPECT_EQ(r.feasible_count, 27u);
}

TEST(BruteForceTest, AdditiveTakesBestPositiveType) {
  const Dims dims(3, 2);
  auto oracle = Additive(dims, {{0.1, 0.4}, {-0.2, -0.1}, {0.3, 0.0}});
  const OptResult r = BruteForceOpt(*oracle, Constraint::Unconstrained());
  EXPECT_EQ(r.solution, Assignment::Parse(dims, "201"));
  EXPECT_DOUBLE_EQ(r.value, 0.7);
}

TEST(BruteForceTest, MatchesIndependentLoop) {
  Rng rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    const Dims dims(4, 2);
    auto oracle = ExactOracle(GenerateCoverage(dims, rng));
    const Constraint ts = Constraint::TotalSize(4, 2);
    const OptResult r = BruteForceOpt(*oracle, ts);
    EXPECT_EQ(r.value, LoopOpt(*oracle, ts));
    EXPECT_TRUE(ts.IsFeasible(r.solution));
    EXPECT_EQ(r.feasible_count, 1u + 4 * 2 + 6 * 4);
  }
}

TEST(PartitionOptimalityTest, ValidatedInstances) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Dims dims(2 + trial % 3, 2 + trial % 2);
    auto coverage = ExactOracle(GenerateCoverage(dims, rng));
    EXPECT_TRUE(CheckPartitionOptimality(*coverage));
    auto coupled = ExactOracle(GenerateCoupled(dims, rng));
    EXPECT_TRUE(CheckPartitionOptimality(*coupled));
  }
}

TEST(PartitionOptimalityTest, Preconditions) {
  FunctionOracle k1(Dims(2, 1), [](const Assignment&) { return 0.0; });
  ExpectError(ErrorCode::kInvalidArgument,
              [&] { CheckPartitionOptimality(k1); });
  FunctionOracle bad(Dims(2, 2), [](const Assignment& x) {
    return x.SupportSize() == 2 ? 1.0 : 0.0;
  });
  ExpectError(ErrorCode::kNotKSubmodular,
              [&] { CheckPartitionOptimality(bad); });
}

TEST(RobustnessTest, GreedyMatroidAtZeroNoise) {
  Rng rng(5);
  const Dims dims(4, 2);
  auto truth = ExactOracle(GenerateCoverage(dims, rng));
  const Constraint ts = Constraint::TotalSize(4, 2);
  const SolverSpec spec =
      MakeSolverSpec(Algorithm::kGreedyMatroid, Objective::kMonotone, dims, ts);
  const RobustnessReport r = VerifyRobustness(spec, ts, *truth, 0.0, rng);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.trials, 1);
  EXPECT_EQ(r.standard_error, 0.0);
  EXPECT_DOUBLE_EQ(r.rhs, 0.5 * r.f_opt);
  EXPECT_GE(r.lhs, 0.5 * r.f_opt);
}

TEST(RobustnessTest, NonMonotoneRhsFormula) {
  Rng rng(6);
  const Dims dims(3, 2);
  auto truth = ExactOracle(GenerateCoupled(dims, rng));
  const Constraint unc = Constraint::Unconstrained();
  const SolverSpec spec = MakeSolverSpec(Algorithm::kUncNonMonotone,
                                         Objective::kNonMonotone, dims, unc);
  const RobustnessReport r = VerifyRobustness(spec, unc, *truth, 0.01, rng);
  EXPECT_DOUBLE_EQ(r.rhs, 0.5 * r.f_opt - 20 * 3 * 0.01);
  EXPECT_EQ(r.trials, 2000);
  EXPECT_GT(r.standard_error, 0.0);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.within_query_bound);
  EXPECT_EQ(r.max_queries, 6);
}

TEST(RobustnessTest, FlatteningPerturbation) {
  Rng rng(7);
  const Dims dims(4, 2);
  auto truth = ExactOracle(GenerateCoverage(dims, rng));
  const Constraint ts = Constraint::TotalSize(4, 3);
  const SolverSpec spec =
      MakeSolverSpec(Algorithm::kGreedyMatroid, Objective::kMonotone, dims, ts);
  RobustnessOptions opts;
  opts.perturbation = PerturbationKind::kFlattening;
  EXPECT_TRUE(VerifyRobustness(spec, ts, *truth, 0.02, rng, opts).pass);
}

}  // namespace
}  // namespace ksub
