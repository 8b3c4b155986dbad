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

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "ksub/error.h"
#include "ksub/experiment.h"
#include "ksub/instance_io.h"

namespace ksub {
namespace {

namespace fs = std::filesystem;

template <typename F>
void ExpectError(ErrorCode code, F&& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << ErrorCodeName(code);
  } catch (const Error& e) {
    EXPECT_EQ(ErrorCodeName(e.code()), ErrorCodeName(code)) << e.what();
  }
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() /
              ("ksub_" + name + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> ReadCsv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

ExperimentConfig ParseText(const std::string& text) {
  std::istringstream in(text);
  return ExperimentConfig::Parse(in);
}

// 0/1 values make every pull deterministic.
std::string WriteZeroOneTable(const fs::path& dir) {
  const fs::path path = dir / "zero_one.inst";
  std::ofstream out(path);
  out << "ksub v1 n=2 k=1 kind=table\n00 0\n10 1\n01 0\n11 1\n";
  return path.string();
}

TEST(ConfigTest, ParsesKeysAndExpandsSeeds) {
  const ExperimentConfig c = ParseText(
      "# comment\n"
      "env = coverage:seed=3,n=3,k=2\n"
      "constraint = ts:2\n"
      "policies = cetc, ucb ,random\n"
      "horizon = 500\n"
      "seeds = count:4\n"
      "master_seed = 9\n"
      "reference = offline-greedy\n"
      "window = 20\n");
  EXPECT_EQ(c.policies, (std::vector<std::string>{"cetc", "ucb", "random"}));
  EXPECT_EQ(c.horizon, 500);
  ASSERT_EQ(c.seeds.size(), 4u);
  EXPECT_EQ(c.seeds, ParseText("env = coverage:seed=3,n=3,k=2\n"
                               "policies = random\nhorizon = 1\n"
                               "seeds = count:4\nmaster_seed = 9\n")
                         .seeds);
  EXPECT_EQ(c.reference, ReferenceMode::kOfflineGreedy);
  EXPECT_EQ(c.window, 20);

  const ExperimentConfig again = ParseText(c.ToString());
  EXPECT_EQ(again.ToString(), c.ToString());
  EXPECT_EQ(again.seeds, c.seeds);
}

TEST(ConfigTest, RejectsBadConfigs) {
  const std::string base = "env = coverage:seed=1,n=2,k=2\nseeds = 1\n";
  ExpectError(ErrorCode::kInvalidConfig, [&] {
    ParseText(base + "policies = random\nhorizon = 0\n");
  });
  ExpectError(ErrorCode::kInvalidConfig,
              [&] { ParseText(base + "horizon = 5\n"); });
  ExpectError(ErrorCode::kInvalidConfig, [&] {
    ParseText(base + "policies = random\nhorizon = 5\ncolour = red\n");
  });
  ExpectError(ErrorCode::kInvalidConfig, [&] {
    ParseText(base + "policies = random,random\nhorizon = 5\n");
  });
  ExpectError(ErrorCode::kInvalidConfig, [&] {
    ParseText(base + "policies = greedy\nhorizon = 5\n");
  });
  ExpectError(ErrorCode::kInvalidConfig, [&] {
    ParseText(base + "policies = random\nhorizon = 5\nhorizon = 6\n");
  });
  ExpectError(ErrorCode::kInvalidConfig, [&] {
    ParseText(base + "policies = random\nhorizon = 100\nstep_budget = 10\n");
  });
}

TEST(ExperimentTest, AggregateIsMeanOfCellCsvs) {
  TempDir dir("aggregate");
  ExperimentConfig c = ParseText(
      "env = coverage:seed=4,n=3,k=2\nconstraint = ts:2\n"
      "policies = random\nhorizon = 100\nseeds = 7,8\nreference = none\n");
  c.out = (dir.path() / "out").string();
  const AggregateReport report = RunExperiment(c);
  const auto a = ReadCsv(dir.path() / "out" / "cells" / "random_seed7.csv");
  const auto b = ReadCsv(dir.path() / "out" / "cells" / "random_seed8.csv");
  const auto agg = ReadCsv(dir.path() / "out" / "aggregate.csv");
  ASSERT_EQ(a.size(), 100u);
  ASSERT_EQ(agg.size(), 100u);
  for (size_t t = 0; t < 100; ++t) {
    const double ra = std::stod(a[t][2]);
    const double rb = std::stod(b[t][2]);
    EXPECT_EQ(std::stod(agg[t][2]), (ra + rb) / 2);
    EXPECT_DOUBLE_EQ(std::stod(agg[t][3]), std::abs(ra - rb) / std::sqrt(2.0));
    EXPECT_EQ(agg[t][1], "random");
    EXPECT_TRUE(a[t][4].empty());
    EXPECT_TRUE(agg[t][4].empty());
  }
  ASSERT_EQ(report.notices.size(), 1u);
  EXPECT_FALSE(report.reference_value.has_value());
}

TEST(ExperimentTest, DeterministicEnvironmentAverages) {
  TempDir dir("deterministic");
  ExperimentConfig c = ParseText(
      "env = bernoulli:" + WriteZeroOneTable(dir.path()) +
      "\nconstraint = ts:1\npolicies = random\nhorizon = 100\n"
      "seeds = 1,2\n");
  const AggregateReport report = RunExperiment(c);
  ASSERT_EQ(report.cells.size(), 2u);
  const PolicySeries* s = report.Find("random");
  ASSERT_NE(s, nullptr);
  for (size_t t = 0; t < 100; ++t) {
    // Action "10" pays 1, "01" pays 0.
    const double r1 = report.cells[0].trajectory.ActionAt(t + 1)[0];
    const double r2 = report.cells[1].trajectory.ActionAt(t + 1)[0];
    EXPECT_EQ(s->mean_reward[t], (r1 + r2) / 2);
  }
}

TEST(ExperimentTest, BruteForceReferenceAddsRegret) {
  ExperimentConfig c = ParseText(
      "env = coverage:seed=4,n=3,k=2\nconstraint = ts:2\n"
      "policies = cetc,random\nhorizon = 2000\nseeds = 1,2,3\n"
      "reference = brute-force\n");
  const AggregateReport report = RunExperiment(c);
  ASSERT_TRUE(report.reference_value.has_value());
  EXPECT_EQ(report.regret_alpha, 0.5);
  EXPECT_NE(report.reference_label.find("brute-force"), std::string::npos);
  for (const CellResult& cell : report.cells) {
    ASSERT_EQ(cell.cum_regret.size(), 2000u);
    double cum = 0;
    for (int64_t t = 0; t < 2000; ++t) cum += cell.trajectory.rewards()[t];
    EXPECT_NEAR(cell.cum_regret.back(), 0.5 * 2000 * *report.reference_value - cum,
                1e-9);
  }
  EXPECT_TRUE(report.notices.empty());
  const PolicySeries* cetc = report.Find("cetc");
  ASSERT_NE(cetc, nullptr);
  EXPECT_EQ(cetc->mean_cum_regret.size(), 2000u);
}

TEST(ExperimentTest, BruteForceNeedsExhaustibleSet) {
  // Every one of the 4^11 > 10^6 lattice points is feasible under ts:11.
  const ExperimentConfig c = ParseText(
      "env = coverage:seed=4,n=11,k=3\nconstraint = ts:11\npolicies = cetc\n"
      "horizon = 10\nseeds = 1\nreference = brute-force\n");
  ExpectError(ErrorCode::kInvalidConfig, [&] { RunExperiment(c); });
}

TEST(ExperimentTest, CoupledEnvironmentIsRescaled) {
  ExperimentConfig c = ParseText(
      "env = coupled:seed=2,n=3,k=2\npolicies = cetc:unc-nonmonotone\n"
      "objective = nonmonotone\nhorizon = 3000\nseeds = 1\n");
  const AggregateReport report = RunExperiment(c);
  for (double r : report.cells[0].trajectory.rewards()) {
    EXPECT_TRUE(r == 0.0 || r == 1.0);
  }
  ASSERT_TRUE(report.cells[0].schedule.has_value());
  EXPECT_EQ(report.cells[0].schedule->query_bound, 6);
}

TEST(ExperimentTest, ReproducibleFiles) {
  TempDir dir("repro");
  ExperimentConfig c = ParseText(
      "env = influence:synthetic,nodes=10,degree=3,seed=5\n"
      "constraint = ts:2\npolicies = cetc,ucb,random\nhorizon = 3000\n"
      "seeds = count:3\nreference = offline-greedy\nexpectation_sims = 20\n");
  c.out = (dir.path() / "a").string();
  RunExperiment(c);
  c.out = (dir.path() / "b").string();
  c.workers = 3;
  RunExperiment(c);
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir.path() / "a" / "cells")) {
    names.push_back(entry.path().filename().string());
  }
  ASSERT_EQ(names.size(), 9u);
  for (const std::string& name : names) {
    EXPECT_EQ(Slurp(dir.path() / "a" / "cells" / name),
              Slurp(dir.path() / "b" / "cells" / name))
        << name;
  }
  for (const char* file : {"aggregate.csv", "plot.csv", "plot.svg"}) {
    EXPECT_EQ(Slurp(dir.path() / "a" / file), Slurp(dir.path() / "b" / file))
        << file;
  }
}

TEST(ExperimentTest, ReadAggregateRoundTrip) {
  TempDir dir("read");
  ExperimentConfig c = ParseText(
      "env = coverage:seed=4,n=3,k=2\nconstraint = ts:2\n"
      "policies = ucb,random\nhorizon = 200\nseeds = 1,2\n"
      "reference = offline-greedy\nwindow = 7\n");
  c.out = dir.path().string();
  const AggregateReport report = RunExperiment(c);
  const AggregateReport loaded = ReadAggregate(dir.path().string());
  EXPECT_EQ(loaded.window, 7);
  ASSERT_EQ(loaded.series.size(), 2u);
  for (size_t p = 0; p < 2; ++p) {
    EXPECT_EQ(loaded.series[p].policy, report.series[p].policy);
    EXPECT_EQ(loaded.series[p].runs, 2);
    EXPECT_EQ(loaded.series[p].mean_reward, report.series[p].mean_reward);
    EXPECT_EQ(loaded.series[p].mean_cum_regret,
              report.series[p].mean_cum_regret);
  }
  std::ostringstream a, b;
  EmitPlotData(report, "csv", a);
  EmitPlotData(loaded, "csv", b);
  EXPECT_EQ(a.str(), b.str());
}

TEST(TailMeansTest, LastSteps) {
  AggregateReport report;
  CellResult cell;
  cell.policy = "p";
  const Assignment x(Dims(1, 1));
  const int action = cell.trajectory.Intern(x);
  for (double r : {0.0, 0.0, 1.0, 0.5}) cell.trajectory.Record(action, r);
  report.cells.push_back(cell);
  EXPECT_EQ(TailMeans(report, "p", 2), std::vector<double>{0.75});
  EXPECT_EQ(TailMeans(report, "p", 10), std::vector<double>{0.375});
  EXPECT_TRUE(TailMeans(report, "q", 2).empty());
}

TEST(MovingAverageTest, TrailingWindow) {
  EXPECT_EQ(MovingAverage({1, 2, 3, 4}, 2),
            (std::vector<double>{1, 1.5, 2.5, 3.5}));
  EXPECT_EQ(MovingAverage({1, 2, 3}, 10), (std::vector<double>{1, 1.5, 2}));
}

PolicySeries ConstantSeries(const std::string& name, double value, int steps) {
  PolicySeries s;
  s.policy = name;
  s.runs = 2;
  s.mean_reward.assign(steps, value);
  s.std_reward.assign(steps, 0.0);
  return s;
}

TEST(PlotTest, Errors) {
  AggregateReport empty;
  std::ostringstream out;
  ExpectError(ErrorCode::kNoSeries, [&] { EmitPlotData(empty, "svg", out); });
  AggregateReport one;
  one.series.push_back(ConstantSeries("a", 0.5, 10));
  ExpectError(ErrorCode::kUnsupportedFormat,
              [&] { EmitPlotData(one, "png", out); });
}

TEST(PlotTest, ConstantSeriesIsFlatWithZeroBand) {
  AggregateReport report;
  report.series.push_back(ConstantSeries("flat", 0.5, 50));
  std::ostringstream out;
  EmitPlotData(report, "csv", out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,policy,mean,lower,upper");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find(",flat,0.5,0.5,0.5"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 50);
}

TEST(PlotTest, TwoLabeledSeriesInSvg) {
  AggregateReport report;
  report.series.push_back(ConstantSeries("cetc", 0.5, 30));
  report.series.push_back(ConstantSeries("random", 0.2, 30));
  std::ostringstream out;
  EmitPlotData(report, "svg", out);
  const std::string svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  size_t count = 0;
  for (size_t pos = 0; (pos = svg.find("class=\"series\"", pos)) != std::string::npos;
       ++pos) {
    ++count;
  }
  EXPECT_EQ(count, 2u);
  EXPECT_NE(svg.find(">cetc</text>"), std::string::npos);
  EXPECT_NE(svg.find(">random</text>"), std::string::npos);
}

int RunCli(const std::string& args) {
  const std::string cmd =
      std::string(KSUB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

TEST(CliTest, ExitCodes) {
  TempDir dir("cli");
  const std::string inst = (dir.path() / "c.inst").string();
  EXPECT_EQ(RunCli("generate --kind coverage --n 3 --k 2 --out " + inst), 0);
  EXPECT_EQ(RunCli("check --instance " + inst + " --constraint ts:2"), 0);
  EXPECT_EQ(RunCli("offline --instance " + inst +
                   " --algorithm greedy-matroid --constraint ts:2"),
            0);
  EXPECT_EQ(RunCli("offline --instance " + inst +
                   " --algorithm greedy-matroid --constraint ts:2 "
                   "--epsilon 0.02"),
            0);
  const std::string out = (dir.path() / "run").string();
  EXPECT_EQ(RunCli("bandit --env coverage:" + inst +
                   " --constraint ts:2 --policy cetc,random --horizon 500 "
                   "--seeds 1,2 --reference brute-force --out " + out),
            0);
  EXPECT_TRUE(fs::exists(fs::path(out) / "aggregate.csv"));
  EXPECT_EQ(RunCli("report --in " + out + " --format svg"), 0);

  const std::string config = (dir.path() / "bad.cfg").string();
  std::ofstream(config) << "env = coverage:" << inst << "\nhorizon = 0\n";
  EXPECT_EQ(RunCli("experiment --config " + config), 2);
  EXPECT_EQ(RunCli("offline --instance " + inst + " --algorithm nope"), 2);
  EXPECT_EQ(RunCli("report --in " + out + " --format png"), 2);
  EXPECT_EQ(RunCli("bogus"), 2);
  // Missing files and out-of-range rewards are runtime failures.
  EXPECT_EQ(RunCli("report --in " + (dir.path() / "missing").string()), 3);
  EXPECT_EQ(RunCli("bandit --env influence:synthetic,nodes=8,seed=1,raw "
                   "--constraint ts:2 --policy random --horizon 50"),
            3);
}

}  // namespace
}  // namespace ksub
