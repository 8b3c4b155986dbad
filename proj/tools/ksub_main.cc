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

// Command-line front end: property checks, offline solvers, bandit runs and
// batch experiments. Exit status is 0 on success, 2 when input fails
// validation and 3 on runtime failures.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ksub/brute_force.h"
#include "ksub/constraint.h"
#include "ksub/coverage.h"
#include "ksub/error.h"
#include "ksub/experiment.h"
#include "ksub/influence.h"
#include "ksub/instance_io.h"
#include "ksub/matroid.h"
#include "ksub/properties.h"
#include "ksub/robustness.h"
#include "ksub/solvers.h"

namespace {

using nlohmann::json;

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

json SetJson(const std::vector<int>& s) { return json(s); }

int RunCheck(const std::string& instance_path, const std::string& constraint,
             uint64_t limit) {
  const ksub::Instance instance = ksub::ReadInstanceFile(instance_path);
  auto oracle = instance.MakeOracle();
  ksub::CheckOptions opts;
  opts.exhaustion_limit = limit;
  const std::vector<double> table = ksub::TabulateLattice(*oracle, limit);
  const ksub::KSubmodularReport report =
      ksub::CheckKSubmodular(instance.dims, table, opts);

  json out;
  out["n"] = instance.dims.n();
  out["k"] = instance.dims.k();
  out["orthant_submodular"] = report.orthant_ok;
  out["pairwise_monotone"] = report.pairwise_ok;
  if (report.orthant_witness) {
    const auto& w = *report.orthant_witness;
    out["orthant_witness"] = {{"smaller", w.smaller.ToString()},
                              {"larger", w.larger.ToString()},
                              {"element", w.element},
                              {"type", w.type},
                              {"gain_smaller", w.gain_smaller},
                              {"gain_larger", w.gain_larger}};
  }
  if (report.pairwise_witness) {
    const auto& w = *report.pairwise_witness;
    out["pairwise_witness"] = {{"x", w.x.ToString()},
                               {"element", w.element},
                               {"type_i", w.type_i},
                               {"type_j", w.type_j},
                               {"sum", w.sum}};
  }
  const auto negative = ksub::FindNegativeMarginal(instance.dims, table, opts);
  out["monotone"] = !negative.has_value();
  if (negative) {
    out["negative_marginal"] = {{"x", negative->x.ToString()},
                                {"element", negative->element},
                                {"type", negative->type},
                                {"gain", negative->gain}};
  }
  if (report.ok() && instance.dims.k() >= 2) {
    ksub::TableOracle table_oracle(instance.dims, table);
    out["partition_optimal"] =
        ksub::CheckPartitionOptimality(table_oracle, opts);
  }
  bool ok = report.ok();
  if (!constraint.empty()) {
    const ksub::Constraint c = ksub::Constraint::Parse(constraint, instance.dims);
    out["constraint"] = c.ToString();
    out["feasible_count"] = ksub::CountFeasible(instance.dims, c, limit);
    if (c.kind() == ksub::Constraint::Kind::kMatroid ||
        c.kind() == ksub::Constraint::Kind::kTotalSize) {
      const ksub::AxiomReport axioms = ksub::CheckMatroidAxioms(c.matroid());
      out["matroid_axioms"] = {{"empty_set", axioms.empty_set_ok},
                               {"downward_closed", axioms.downward_closed_ok},
                               {"exchange", axioms.exchange_ok}};
      if (axioms.downward_witness) {
        out["matroid_axioms"]["downward_witness"] =
            SetJson(*axioms.downward_witness);
      }
      if (axioms.exchange_witness) {
        out["matroid_axioms"]["exchange_witness"] = {
            SetJson(axioms.exchange_witness->first),
            SetJson(axioms.exchange_witness->second)};
      }
      ok = ok && axioms.ok();
    }
  }
  std::cout << out.dump(2) << "\n";
  return ok ? 0 : kExitValidation;
}

struct OfflineArgs {
  std::string instance;
  std::string algorithm;
  std::string objective = "monotone";
  std::string constraint = "unconstrained";
  uint64_t seed = 1;
  std::optional<double> epsilon;
  int trials = 2000;
  std::string perturbation = "seeded";
  std::string monotone_rule = "clamped";
  bool brute_force = false;
};

int RunOffline(const OfflineArgs& args) {
  const ksub::Instance instance = ksub::ReadInstanceFile(args.instance);
  auto oracle = instance.MakeOracle();
  const ksub::Constraint constraint =
      ksub::Constraint::Parse(args.constraint, instance.dims);
  const ksub::SolverSpec spec = ksub::MakeSolverSpec(
      ksub::ParseAlgorithm(args.algorithm),
      ksub::ParseObjective(args.objective), instance.dims, constraint);
  ksub::RunOptions run;
  if (args.monotone_rule == "literal") {
    run.monotone_rule = ksub::MonotoneRule::kLiteral;
  } else if (args.monotone_rule != "clamped") {
    throw ksub::Error(ksub::ErrorCode::kInvalidArgument,
                      "monotone rule must be clamped or literal");
  }

  json out;
  out["algorithm"] = std::string(ksub::AlgorithmName(spec.algorithm));
  out["objective"] = std::string(ksub::ObjectiveName(spec.objective));
  out["constraint"] = constraint.ToString();
  out["row"] = spec.row;
  out["alpha"] = {{"num", spec.alpha.num}, {"den", spec.alpha.den}};
  out["delta"] = spec.delta;
  out["query_bound"] = spec.query_bound;

  ksub::Rng rng(args.seed);
  if (args.epsilon) {
    ksub::RobustnessOptions opts;
    opts.trials = args.trials;
    opts.run = run;
    if (args.perturbation == "flattening") {
      opts.perturbation = ksub::PerturbationKind::kFlattening;
    } else if (args.perturbation != "seeded") {
      throw ksub::Error(ksub::ErrorCode::kInvalidArgument,
                        "perturbation must be seeded or flattening");
    }
    const ksub::RobustnessReport r = ksub::VerifyRobustness(
        spec, constraint, *oracle, *args.epsilon, rng, opts);
    out["epsilon"] = *args.epsilon;
    out["robustness"] = {{"f_opt", r.f_opt},
                         {"mean_value", r.lhs},
                         {"standard_error", r.standard_error},
                         {"bound", r.rhs},
                         {"trials", r.trials},
                         {"max_queries", r.max_queries},
                         {"within_query_bound", r.within_query_bound},
                         {"pass", r.pass}};
    std::cout << out.dump(2) << "\n";
    return r.pass ? 0 : kExitValidation;
  }

  const ksub::SolverOutput result =
      ksub::RunSolver(spec, constraint, *oracle, rng, run);
  out["solution"] = result.solution.ToString();
  out["value"] = oracle->Evaluate(result.solution);
  out["queries"] = result.queries_used;
  if (args.brute_force) {
    const ksub::OptResult opt = ksub::BruteForceOpt(*oracle, constraint);
    out["opt"] = {{"solution", opt.solution.ToString()},
                  {"value", opt.value},
                  {"feasible_count", opt.feasible_count}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

json ReportSummary(const ksub::AggregateReport& report, int64_t horizon) {
  json out = json::array();
  const int64_t tail = std::max<int64_t>(1, horizon / 10);
  for (const ksub::PolicySeries& s : report.series) {
    json p;
    p["policy"] = s.policy;
    p["runs"] = s.runs;
    const std::vector<double> tails = ksub::TailMeans(report, s.policy, tail);
    double mean = 0.0;
    for (double v : tails) mean += v;
    p["tail_mean_reward"] = tails.empty() ? 0.0 : mean / tails.size();
    if (!s.mean_cum_regret.empty()) {
      p["final_mean_cum_regret"] = s.mean_cum_regret.back();
    }
    out.push_back(std::move(p));
  }
  return out;
}

int RunConfig(const ksub::ExperimentConfig& config) {
  const ksub::AggregateReport report = ksub::RunExperiment(config);
  json out;
  out["policies"] = ReportSummary(report, config.horizon);
  out["notices"] = report.notices;
  if (report.reference_value) {
    out["reference"] = {{"label", report.reference_label},
                        {"value", *report.reference_value},
                        {"alpha", report.regret_alpha}};
  }
  if (!config.out.empty()) out["out"] = config.out;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int RunReport(const std::string& dir, const std::string& format,
              const std::string& output) {
  const ksub::AggregateReport report = ksub::ReadAggregate(dir);
  const std::vector<std::string> formats =
      format == "all" ? std::vector<std::string>{"csv", "svg"}
                      : std::vector<std::string>{format};
  for (const std::string& f : formats) {
    if (output == "-") {
      ksub::EmitPlotData(report, f, std::cout);
      continue;
    }
    const std::string path =
        output.empty() || formats.size() > 1 ? dir + "/plot." + f : output;
    std::ostringstream buffer;
    ksub::EmitPlotData(report, f, buffer);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
      throw ksub::Error(ksub::ErrorCode::kIoError, "cannot write " + path);
    }
    file << buffer.str();
    std::cerr << "wrote " << path << "\n";
  }
  return 0;
}

struct GenerateArgs {
  std::string kind = "coverage";
  int n = 3;
  int k = 2;
  uint64_t seed = 1;
  int universe = 8;
  int nodes = 20;
  double degree = 3.0;
  std::string weights;
  uint64_t weight_seed = 1;
  std::string out;
};

int RunGenerate(const GenerateArgs& args) {
  std::ostringstream text;
  ksub::Rng rng(args.seed);
  if (args.kind == "graph") {
    std::vector<ksub::Edge> edges =
        ksub::GenerateSyntheticEdges(args.nodes, args.degree, rng);
    const std::vector<ksub::WeightScheme> schemes =
        args.weights.empty() ? ksub::DefaultWeightSchemes()
                             : ksub::ParseWeightSchemes(args.weights);
    ksub::Rng weight_rng(args.weight_seed);
    auto probs = ksub::GenerateWeights(static_cast<int>(edges.size()),
                                       schemes, weight_rng);
    ksub::WriteInfluenceGraph(
        text, ksub::InfluenceGraph(args.nodes, std::move(edges),
                                   std::move(probs)));
  } else {
    const ksub::Dims dims(args.n, args.k);
    ksub::CoverageGenParams params;
    params.universe_size = args.universe;
    if (args.kind == "coverage") {
      ksub::WriteInstance(
          text, ksub::MakeInstance(ksub::GenerateCoverage(dims, rng, params)));
    } else if (args.kind == "coupled") {
      ksub::WriteInstance(
          text, ksub::MakeInstance(ksub::GenerateCoupled(dims, rng, params)));
    } else {
      throw ksub::Error(ksub::ErrorCode::kInvalidArgument,
                        "kind must be coverage, coupled or graph");
    }
  }
  if (args.out.empty() || args.out == "-") {
    std::cout << text.str();
  } else {
    std::ofstream file(args.out, std::ios::binary);
    if (!file) {
      throw ksub::Error(ksub::ErrorCode::kIoError, "cannot write " + args.out);
    }
    file << text.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-submodular bandit toolkit"};
  app.require_subcommand(1);

  std::string instance_path;
  std::string check_constraint;
  uint64_t limit = ksub::kDefaultExhaustionLimit;
  auto* check = app.add_subcommand("check", "Property checks on an instance");
  check->add_option("--instance", instance_path, "Instance file")->required();
  check->add_option("--constraint", check_constraint,
                    "Also count feasible points and check matroid axioms");
  check->add_option("--exhaustion-limit", limit, "Largest lattice to walk");

  OfflineArgs offline_args;
  auto* offline = app.add_subcommand("offline", "Run an offline solver");
  offline->add_option("--instance", offline_args.instance)->required();
  offline->add_option("--algorithm", offline_args.algorithm,
                      "unc-nonmonotone | unc-monotone | greedy-is | "
                      "greedy-matroid")
      ->required();
  offline->add_option("--objective", offline_args.objective,
                      "monotone | nonmonotone");
  offline->add_option("--constraint", offline_args.constraint,
                      "unconstrained | ts:B | is:B1,..,Bk | partition:FILE");
  offline->add_option("--seed", offline_args.seed);
  offline->add_option("--epsilon", offline_args.epsilon,
                      "Verify robustness at this noise level");
  offline->add_option("--trials", offline_args.trials);
  offline->add_option("--perturbation", offline_args.perturbation,
                      "seeded | flattening");
  offline->add_option("--monotone-rule", offline_args.monotone_rule,
                      "clamped | literal");
  offline->add_flag("--brute-force", offline_args.brute_force,
                    "Also report the exhaustive optimum");

  ksub::ExperimentConfig bandit_config;
  std::string bandit_policies = "cetc";
  std::string bandit_seeds = "1";
  std::string bandit_algorithm;
  std::string bandit_objective = "monotone";
  std::string bandit_reference = "none";
  auto* bandit = app.add_subcommand("bandit", "Run bandit policies");
  bandit->add_option("--env", bandit_config.env)->required();
  bandit->add_option("--policy", bandit_policies, "cetc[:alg],ucb,random");
  bandit->add_option("--algorithm", bandit_algorithm);
  bandit->add_option("--objective", bandit_objective);
  bandit->add_option("--constraint", bandit_config.constraint);
  bandit->add_option("--horizon", bandit_config.horizon)->required();
  bandit->add_option("--seeds", bandit_seeds, "List or count:N");
  bandit->add_option("--master-seed", bandit_config.master_seed);
  bandit->add_option("--reference", bandit_reference,
                     "none | brute-force | offline-greedy");
  bandit->add_option("--out", bandit_config.out);
  bandit->add_option("--workers", bandit_config.workers);
  bandit->add_option("--window", bandit_config.window);

  std::string config_path;
  std::string config_out;
  auto* experiment = app.add_subcommand("experiment", "Run a config file");
  experiment->add_option("--config", config_path)->required();
  experiment->add_option("--out", config_out, "Override the output directory");

  std::string report_dir;
  std::string report_format = "all";
  std::string report_output;
  auto* report = app.add_subcommand("report", "Plot data from a results dir");
  report->add_option("--in", report_dir)->required();
  report->add_option("--format", report_format, "csv | svg | all");
  report->add_option("--output", report_output, "File, or - for stdout");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--kind", gen.kind, "coverage | coupled | graph");
  generate->add_option("--n", gen.n);
  generate->add_option("--k", gen.k);
  generate->add_option("--seed", gen.seed);
  generate->add_option("--universe", gen.universe);
  generate->add_option("--nodes", gen.nodes);
  generate->add_option("--degree", gen.degree);
  generate->add_option("--weights", gen.weights);
  generate->add_option("--weight-seed", gen.weight_seed);
  generate->add_option("--out", gen.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*check) return RunCheck(instance_path, check_constraint, limit);
    if (*offline) return RunOffline(offline_args);
    if (*bandit) {
      std::ostringstream text;
      text << "env = " << bandit_config.env << "\n"
           << "constraint = " << bandit_config.constraint << "\n"
           << "policies = " << bandit_policies << "\n"
           << "objective = " << bandit_objective << "\n"
           << "horizon = " << bandit_config.horizon << "\n"
           << "seeds = " << bandit_seeds << "\n"
           << "master_seed = " << bandit_config.master_seed << "\n"
           << "reference = " << bandit_reference << "\n"
           << "workers = " << bandit_config.workers << "\n"
           << "window = " << bandit_config.window << "\n";
      if (!bandit_algorithm.empty()) {
        text << "algorithm = " << bandit_algorithm << "\n";
      }
      if (!bandit_config.out.empty()) text << "out = " << bandit_config.out << "\n";
      std::istringstream in(text.str());
      return RunConfig(ksub::ExperimentConfig::Parse(in));
    }
    if (*experiment) {
      ksub::ExperimentConfig config =
          ksub::ExperimentConfig::ParseFile(config_path);
      if (!config_out.empty()) config.out = config_out;
      return RunConfig(config);
    }
    if (*report) return RunReport(report_dir, report_format, report_output);
    if (*generate) return RunGenerate(gen);
  } catch (const ksub::Error& e) {
    std::cerr << "error: " << e.what()
              << "\n";
    return ksub::IsValidationError(e.code()) ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
