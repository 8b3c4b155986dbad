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

#include "ksub/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ksub/brute_force.h"
#include "ksub/coverage.h"
#include "ksub/environments.h"
#include "ksub/error.h"
#include "ksub/influence.h"
#include "ksub/instance_io.h"
#include "ksub/properties.h"
#include "ksub/rng.h"
#include "ksub/value_oracle.h"

namespace ksub {
namespace {

using nlohmann::json;

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> SplitList(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t pos = s.find(sep, start);
    const size_t end = pos == std::string_view::npos ? s.size() : pos;
    std::string item = Trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Error ConfigError(const std::string& what) {
  return Error(ErrorCode::kInvalidConfig, what);
}

uint64_t ParseU64(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    if (!value.empty() && value[0] != '-') {
      const uint64_t v = std::stoull(value, &used, 0);
      if (used == value.size()) return v;
    }
  } catch (const std::logic_error&) {
  }
  throw ConfigError(key + ": expected a non-negative integer, got '" + value +
                    "'");
}

int64_t ParseI64(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const int64_t v = std::stoll(value, &used);
    if (used == value.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError(key + ": expected an integer, got '" + value + "'");
}

double ParseNumber(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used == value.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw ConfigError(key + ": expected a number, got '" + value + "'");
}

std::string Fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// FNV-1a, so per-policy random streams do not depend on list order.
uint64_t LabelHash(std::string_view label) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool IsPolicy(const std::string& p) {
  if (p == "ucb" || p == "random" || p == "cetc") return true;
  if (p.rfind("cetc:", 0) == 0) {
    ParseAlgorithm(p.substr(5));
    return true;
  }
  return false;
}

std::string FileSafe(std::string s) {
  for (char& c : s) {
    if (c == ':' || c == '/' || c == ' ') c = '-';
  }
  return s;
}

// key=value parameters after an env kind; bare words become flags.
struct EnvParams {
  std::string head;
  std::map<std::string, std::string> values;
  std::set<std::string> flags;
};

EnvParams ParseEnvParams(std::string_view rest) {
  EnvParams params;
  bool first = true;
  for (const std::string& item : SplitList(rest, ',')) {
    const auto eq = item.find('=');
    if (eq != std::string::npos) {
      params.values[Trim(item.substr(0, eq))] = Trim(item.substr(eq + 1));
    } else if (first) {
      params.head = item;
    } else {
      params.flags.insert(item);
    }
    first = false;
  }
  return params;
}

int ParamInt(const EnvParams& p, const std::string& key,
             std::optional<int> fallback) {
  auto it = p.values.find(key);
  if (it == p.values.end()) {
    if (!fallback) throw ConfigError("env: missing parameter " + key);
    return *fallback;
  }
  return static_cast<int>(ParseI64("env " + key, it->second));
}

CoverageInstance GeneratedCoverage(const EnvParams& p) {
  const Dims dims(ParamInt(p, "n", std::nullopt), ParamInt(p, "k", std::nullopt));
  CoverageGenParams gen;
  gen.universe_size = ParamInt(p, "universe", gen.universe_size);
  Rng rng(static_cast<uint64_t>(ParamInt(p, "seed", 1)));
  return GenerateCoverage(dims, rng, gen);
}

CoupledInstance GeneratedCoupled(const EnvParams& p) {
  const Dims dims(ParamInt(p, "n", std::nullopt), ParamInt(p, "k", std::nullopt));
  CoverageGenParams gen;
  gen.universe_size = ParamInt(p, "universe", gen.universe_size);
  Rng rng(static_cast<uint64_t>(ParamInt(p, "seed", 1)));
  return GenerateCoupled(dims, rng, gen);
}

EnvironmentFactory TableFactory(Dims dims, std::vector<double> values,
                                std::string description) {
  auto shared = std::make_shared<const std::vector<double>>(std::move(values));
  EnvironmentFactory f;
  f.dims = dims;
  f.description = std::move(description);
  f.make = [dims, shared]() -> std::unique_ptr<BanditEnvironment> {
    return std::make_unique<BernoulliEnvironment>(
        std::make_unique<TableOracle>(dims, *shared));
  };
  return f;
}

EnvironmentFactory RescaledFactory(const Instance& instance,
                                   std::string description) {
  auto oracle = instance.MakeOracle();
  std::vector<double> values =
      TabulateLattice(*oracle, kDefaultExhaustionLimit);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double low = *lo;
  const double span = *hi - *lo;
  for (double& v : values) v = span > 0.0 ? (v - low) / span : 0.0;
  return TableFactory(instance.dims, std::move(values),
                      description + " rescaled to [0,1]");
}

EnvironmentFactory InstanceFactory(const Instance& instance,
                                   std::string description) {
  if (instance.kind == InstanceKind::kTable) {
    return TableFactory(instance.dims,
                        std::get<std::vector<double>>(instance.data),
                        std::move(description));
  }
  auto shared = std::make_shared<const Instance>(instance);
  EnvironmentFactory f;
  f.dims = instance.dims;
  f.description = std::move(description);
  f.make = [shared]() -> std::unique_ptr<BanditEnvironment> {
    return std::make_unique<BernoulliEnvironment>(shared->MakeOracle());
  };
  return f;
}

std::vector<WeightScheme> ConfigSchemes(const ExperimentConfig& config) {
  return config.weights.empty() ? DefaultWeightSchemes()
                                : ParseWeightSchemes(config.weights);
}

EnvironmentFactory InfluenceFactory(const EnvParams& p,
                                    const ExperimentConfig& config) {
  const std::vector<WeightScheme> schemes = ConfigSchemes(config);
  std::shared_ptr<const InfluenceGraph> graph;
  std::string description;
  if (p.head == "synthetic") {
    const int nodes = ParamInt(p, "nodes", 20);
    double degree = 3.0;
    if (auto it = p.values.find("degree"); it != p.values.end()) {
      degree = ParseNumber("env degree", it->second);
    }
    Rng edge_rng(static_cast<uint64_t>(ParamInt(p, "seed", 1)));
    std::vector<Edge> edges = GenerateSyntheticEdges(nodes, degree, edge_rng);
    Rng weight_rng(config.weight_seed);
    auto probs =
        GenerateWeights(static_cast<int>(edges.size()), schemes, weight_rng);
    graph = std::make_shared<const InfluenceGraph>(nodes, std::move(edges),
                                                   std::move(probs));
    description = "synthetic influence graph, " + std::to_string(nodes) +
                  " nodes, " + std::to_string(graph->edges().size()) + " edges";
  } else {
    if (p.head.empty()) throw ConfigError("env: influence needs a graph file");
    graph = std::make_shared<const InfluenceGraph>(ReadInfluenceGraphFile(
        p.head, std::make_pair(schemes, config.weight_seed)));
    description = "influence graph " + p.head;
  }
  for (const std::string& flag : p.flags) {
    if (flag != "raw" && flag != "normalize") {
      throw ConfigError("env: unknown influence option " + flag);
    }
  }
  InfluenceEnvOptions options;
  options.normalize = p.flags.count("raw") == 0;
  options.n_sims = config.expectation_sims;
  EnvironmentFactory f;
  f.dims = Dims(graph->node_count(), graph->topic_count());
  f.description = description;
  f.make = [graph, options]() -> std::unique_ptr<BanditEnvironment> {
    return std::make_unique<InfluenceEnvironment>(graph, options);
  };
  return f;
}

ExperimentConfig ParseConfigStream(std::istream& in) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::optional<std::string> seeds_text;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key = Trim(trimmed.substr(0, eq));
    const std::string value = Trim(trimmed.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError("duplicate key " + key);
    }
    if (key == "env") {
      config.env = value;
    } else if (key == "constraint") {
      config.constraint = value;
    } else if (key == "policies") {
      config.policies = SplitList(value, ',');
    } else if (key == "algorithm") {
      config.algorithm = ParseAlgorithm(value);
    } else if (key == "objective") {
      config.objective = ParseObjective(value);
    } else if (key == "horizon") {
      config.horizon = ParseI64(key, value);
    } else if (key == "seeds") {
      seeds_text = value;
    } else if (key == "master_seed") {
      config.master_seed = ParseU64(key, value);
    } else if (key == "reference") {
      config.reference = ParseReferenceMode(value);
    } else if (key == "out") {
      config.out = value;
    } else if (key == "window") {
      config.window = static_cast<int>(ParseI64(key, value));
    } else if (key == "workers") {
      config.workers = static_cast<int>(ParseI64(key, value));
    } else if (key == "weights") {
      config.weights = value;
    } else if (key == "weight_seed") {
      config.weight_seed = ParseU64(key, value);
    } else if (key == "expectation_sims") {
      config.expectation_sims = static_cast<int>(ParseI64(key, value));
    } else if (key == "max_actions") {
      config.max_actions = ParseU64(key, value);
    } else if (key == "step_budget") {
      config.step_budget = ParseU64(key, value);
    } else {
      throw ConfigError("unknown key " + key);
    }
  }
  if (seeds_text) {
    if (seeds_text->rfind("count:", 0) == 0) {
      const uint64_t count = ParseU64("seeds", seeds_text->substr(6));
      for (uint64_t s = 0; s < count; ++s) {
        config.seeds.push_back(DeriveSeed(config.master_seed, s));
      }
    } else {
      for (const std::string& s : SplitList(*seeds_text, ',')) {
        config.seeds.push_back(ParseU64("seeds", s));
      }
    }
  }
  return config;
}

double Mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

CellResult RunCell(const ExperimentConfig& config,
                   const EnvironmentFactory& factory,
                   const Constraint& constraint,
                   const std::vector<Assignment>& actions,
                   const std::string& policy, uint64_t seed) {
  CellResult cell;
  cell.policy = policy;
  cell.seed = seed;
  Rng rng(DeriveSeed(seed, LabelHash(policy)));
  std::unique_ptr<BanditEnvironment> env = factory.make();
  if (policy == "ucb") {
    cell.trajectory = RunNaiveUcb(*env, actions, config.horizon, rng);
  } else if (policy == "random") {
    cell.trajectory = RunRandom(*env, actions, config.horizon, rng);
  } else {
    const Algorithm algorithm = policy.size() > 5
                                    ? ParseAlgorithm(policy.substr(5))
                                    : DefaultAlgorithm(constraint, config);
    const SolverSpec spec =
        MakeSolverSpec(algorithm, config.objective, factory.dims, constraint);
    CetcResult result =
        RunCetc(spec, constraint, *env, config.horizon, rng);
    cell.trajectory = std::move(result.trajectory);
    cell.schedule = result.schedule;
  }
  return cell;
}

json ConfigJson(const ExperimentConfig& config) {
  json j;
  j["env"] = config.env;
  j["constraint"] = config.constraint;
  j["policies"] = config.policies;
  j["algorithm"] = config.algorithm
                       ? json(std::string(AlgorithmName(*config.algorithm)))
                       : json(nullptr);
  j["objective"] = std::string(ObjectiveName(config.objective));
  j["horizon"] = config.horizon;
  j["seeds"] = config.seeds;
  j["reference"] = std::string(ReferenceModeName(config.reference));
  j["window"] = config.window;
  j["workers"] = config.workers;
  j["weights"] = config.weights;
  j["weight_seed"] = config.weight_seed;
  j["expectation_sims"] = config.expectation_sims;
  return j;
}

json SummaryJson(const ExperimentConfig& config,
                 const EnvironmentFactory& factory,
                 const Constraint& constraint, const AggregateReport& report) {
  json j;
  j["config"] = ConfigJson(config);
  j["environment"] = factory.description;
  j["n"] = factory.dims.n();
  j["k"] = factory.dims.k();
  j["constraint"] = constraint.ToString();
  j["window"] = report.window;
  if (report.reference_value) {
    j["reference"] = {{"mode", std::string(ReferenceModeName(config.reference))},
                      {"label", report.reference_label},
                      {"value", *report.reference_value},
                      {"alpha", report.regret_alpha}};
  } else {
    j["reference"] = nullptr;
  }
  j["notices"] = report.notices;
  const int64_t tail = std::max<int64_t>(1, config.horizon / 10);
  json policies = json::array();
  for (const PolicySeries& s : report.series) {
    json p;
    p["policy"] = s.policy;
    p["runs"] = s.runs;
    p["tail_steps"] = tail;
    p["tail_mean_reward"] = Mean(TailMeans(report, s.policy, tail));
    if (!s.mean_cum_regret.empty()) {
      p["final_mean_cum_regret"] = s.mean_cum_regret.back();
    }
    json cells = json::array();
    for (const CellResult& c : report.cells) {
      if (c.policy != s.policy) continue;
      json cj;
      cj["seed"] = c.seed;
      cj["cum_reward"] = c.trajectory.CumulativeReward();
      if (!c.cum_regret.empty()) cj["final_cum_regret"] = c.cum_regret.back();
      if (c.schedule) {
        cj["m"] = c.schedule->m;
        cj["uncapped_m"] = c.schedule->uncapped_m;
        cj["query_bound"] = c.schedule->query_bound;
        cj["phase_boundary"] = c.trajectory.phase_boundary;
        cj["queries"] = c.trajectory.queries.size();
        if (c.trajectory.size() > 0) {
          cj["committed_action"] =
              c.trajectory.ActionAt(c.trajectory.size()).ToString();
        }
      }
      cj["warnings"] = c.trajectory.warnings;
      cells.push_back(std::move(cj));
    }
    p["cells"] = std::move(cells);
    policies.push_back(std::move(p));
  }
  j["policies"] = std::move(policies);
  return j;
}

void WriteFile(const std::filesystem::path& path,
               const std::function<void(std::ostream&)>& write) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  write(out);
  if (!out) throw Error(ErrorCode::kIoError, "error writing " + path.string());
}

std::string CsvField(const std::string& s) {
  if (s.find(',') == std::string::npos) return s;
  return "\"" + s + "\"";
}

std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string Tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct SmoothSeries {
  std::string policy;
  std::vector<double> mean;
  std::vector<double> std;
};

std::vector<SmoothSeries> Smooth(const AggregateReport& report) {
  std::vector<SmoothSeries> out;
  for (const PolicySeries& s : report.series) {
    if (s.mean_reward.empty()) continue;
    out.push_back({s.policy, MovingAverage(s.mean_reward, report.window),
                   MovingAverage(s.std_reward, report.window)});
  }
  if (out.empty()) throw Error(ErrorCode::kNoSeries, "report has no series");
  return out;
}

void EmitSvg(const std::vector<SmoothSeries>& series, int window,
             std::ostream& out) {
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#ff7f0e", "#9467bd", "#8c564b"};
  constexpr double kWidth = 800, kHeight = 480;
  constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  size_t steps = 0;
  double lo = INFINITY, hi = -INFINITY;
  for (const SmoothSeries& s : series) {
    steps = std::max(steps, s.mean.size());
    for (size_t t = 0; t < s.mean.size(); ++t) {
      lo = std::min(lo, s.mean[t] - s.std[t]);
      hi = std::max(hi, s.mean[t] + s.std[t]);
    }
  }
  if (hi - lo < 1e-12) {
    lo -= 0.05;
    hi += 0.05;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const auto x_of = [&](size_t t) {
    return kLeft + (steps <= 1 ? 0.0
                               : plot_w * static_cast<double>(t) / (steps - 1));
  };
  const auto y_of = [&](double v) {
    return kTop + plot_h * (hi - v) / (hi - lo);
  };
  const size_t stride = std::max<size_t>(1, steps / 800);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" "
      << "font-size=\"14\">Instantaneous reward (moving average, window "
      << window << ")</text>\n";
  out << "<g stroke=\"black\" fill=\"none\"><line x1=\"" << kLeft
      << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\"/><line x1=\"" << kLeft
      << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\"/></g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = lo + (hi - lo) * i / 4.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << Coord(y_of(v) + 4)
        << "\" text-anchor=\"end\">" << Tick(v) << "</text>\n";
    const size_t t = steps <= 1 ? 0 : (steps - 1) * i / 4;
    out << "<text x=\"" << Coord(x_of(t)) << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\">" << t + 1 << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">step</text>\n</g>\n";

  for (size_t p = 0; p < series.size(); ++p) {
    const SmoothSeries& s = series[p];
    const char* color = kColors[p % std::size(kColors)];
    std::vector<size_t> ts;
    for (size_t t = 0; t < s.mean.size(); t += stride) ts.push_back(t);
    if (ts.back() != s.mean.size() - 1) ts.push_back(s.mean.size() - 1);

    out << "<g class=\"series\" data-policy=\"" << XmlEscape(s.policy)
        << "\">\n<polygon fill=\"" << color
        << "\" fill-opacity=\"0.2\" stroke=\"none\" points=\"";
    for (size_t t : ts) {
      out << Coord(x_of(t)) << "," << Coord(y_of(s.mean[t] + s.std[t])) << " ";
    }
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
      out << Coord(x_of(*it)) << "," << Coord(y_of(s.mean[*it] - s.std[*it]))
          << " ";
    }
    out << "\"/>\n<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t t : ts) {
      out << Coord(x_of(t)) << "," << Coord(y_of(s.mean[t])) << " ";
    }
    out << "\"/>\n";
    const double ly = kTop + 10 + 20.0 * p;
    out << "<rect x=\"" << kLeft + plot_w + 15 << "\" y=\"" << ly - 9
        << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/>\n"
        << "<text x=\"" << kLeft + plot_w + 33 << "\" y=\"" << ly + 1
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << XmlEscape(s.policy) << "</text>\n</g>\n";
  }
  out << "</svg>\n";
}

}  // namespace

std::string_view ReferenceModeName(ReferenceMode mode) {
  switch (mode) {
    case ReferenceMode::kNone: return "none";
    case ReferenceMode::kBruteForce: return "brute-force";
    case ReferenceMode::kOfflineGreedy: return "offline-greedy";
  }
  return "none";
}

ReferenceMode ParseReferenceMode(std::string_view name) {
  if (name == "none") return ReferenceMode::kNone;
  if (name == "brute-force") return ReferenceMode::kBruteForce;
  if (name == "offline-greedy") return ReferenceMode::kOfflineGreedy;
  throw ConfigError("unknown reference mode " + std::string(name));
}

ExperimentConfig ExperimentConfig::Parse(std::istream& in) {
  ExperimentConfig config = ParseConfigStream(in);
  config.Validate();
  return config;
}

ExperimentConfig ExperimentConfig::ParseFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return Parse(in);
}

void ExperimentConfig::Validate() const {
  if (env.empty()) throw ConfigError("env is required");
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (policies.empty()) throw ConfigError("at least one policy is required");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (window < 1) throw ConfigError("window must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (expectation_sims < 1) throw ConfigError("expectation_sims must be >= 1");
  std::set<std::string> labels;
  for (const std::string& p : policies) {
    if (!IsPolicy(p)) throw ConfigError("unknown policy " + p);
    if (!labels.insert(p).second) throw ConfigError("duplicate policy " + p);
  }
  if (std::set<uint64_t>(seeds.begin(), seeds.end()).size() != seeds.size()) {
    throw ConfigError("duplicate seed");
  }
  const long double steps = static_cast<long double>(policies.size()) *
                            seeds.size() * static_cast<long double>(horizon);
  if (steps > static_cast<long double>(step_budget)) {
    throw ConfigError("policies x seeds x horizon exceeds step_budget");
  }
}

std::string ExperimentConfig::ToString() const {
  std::ostringstream text;
  text << "env = " << env << "\n";
  text << "constraint = " << constraint << "\n";
  text << "policies = ";
  for (size_t i = 0; i < policies.size(); ++i) {
    text << (i ? "," : "") << policies[i];
  }
  text << "\n";
  if (algorithm) text << "algorithm = " << AlgorithmName(*algorithm) << "\n";
  text << "objective = " << ObjectiveName(objective) << "\n";
  text << "horizon = " << horizon << "\n";
  text << "seeds = ";
  for (size_t i = 0; i < seeds.size(); ++i) text << (i ? "," : "") << seeds[i];
  text << "\n";
  text << "master_seed = " << master_seed << "\n";
  text << "reference = " << ReferenceModeName(reference) << "\n";
  if (!out.empty()) text << "out = " << out << "\n";
  text << "window = " << window << "\n";
  text << "workers = " << workers << "\n";
  if (!weights.empty()) text << "weights = " << weights << "\n";
  text << "weight_seed = " << weight_seed << "\n";
  text << "expectation_sims = " << expectation_sims << "\n";
  text << "max_actions = " << max_actions << "\n";
  text << "step_budget = " << step_budget << "\n";
  return text.str();
}

EnvironmentFactory MakeEnvironmentFactory(const ExperimentConfig& config) {
  const auto colon = config.env.find(':');
  if (colon == std::string::npos) {
    throw ConfigError("env must look like <kind>:<spec>, got " + config.env);
  }
  const std::string kind = config.env.substr(0, colon);
  const std::string rest = config.env.substr(colon + 1);
  const EnvParams params = ParseEnvParams(rest);
  const bool generated = params.head.empty() && !params.values.empty();

  if (kind == "coverage") {
    if (generated) {
      return InstanceFactory(MakeInstance(GeneratedCoverage(params)),
                             "generated coverage " + rest);
    }
    Instance instance = ReadInstanceFile(rest);
    if (instance.kind != InstanceKind::kCoverage) {
      throw ConfigError("env: " + rest + " is not a coverage instance");
    }
    return InstanceFactory(instance, "coverage instance " + rest);
  }
  if (kind == "coupled") {
    if (generated) {
      return RescaledFactory(MakeInstance(GeneratedCoupled(params)),
                             "generated coupled " + rest);
    }
    Instance instance = ReadInstanceFile(rest);
    if (instance.kind != InstanceKind::kCoupled) {
      throw ConfigError("env: " + rest + " is not a coupled instance");
    }
    return RescaledFactory(instance, "coupled instance " + rest);
  }
  if (kind == "bernoulli") {
    return InstanceFactory(ReadInstanceFile(rest), "instance " + rest);
  }
  if (kind == "influence") return InfluenceFactory(params, config);
  throw ConfigError("unknown env kind " + kind);
}

Algorithm DefaultAlgorithm(const Constraint& constraint,
                           const ExperimentConfig& config) {
  if (config.algorithm) return *config.algorithm;
  switch (constraint.kind()) {
    case Constraint::Kind::kUnconstrained:
      return config.objective == Objective::kMonotone
                 ? Algorithm::kUncMonotone
                 : Algorithm::kUncNonMonotone;
    case Constraint::Kind::kIndividualSize:
      return Algorithm::kGreedyIS;
    case Constraint::Kind::kTotalSize:
    case Constraint::Kind::kMatroid:
      return Algorithm::kGreedyMatroid;
  }
  return Algorithm::kGreedyMatroid;
}

const PolicySeries* AggregateReport::Find(const std::string& policy) const {
  for (const PolicySeries& s : series) {
    if (s.policy == policy) return &s;
  }
  return nullptr;
}

std::vector<double> TailMeans(const AggregateReport& report,
                              const std::string& policy, int64_t steps) {
  std::vector<double> out;
  for (const CellResult& c : report.cells) {
    if (c.policy != policy) continue;
    const std::vector<double>& r = c.trajectory.rewards();
    const size_t take = std::min<size_t>(r.size(), static_cast<size_t>(steps));
    if (take == 0) {
      out.push_back(0.0);
      continue;
    }
    out.push_back(std::accumulate(r.end() - take, r.end(), 0.0) / take);
  }
  return out;
}

std::vector<double> MovingAverage(const std::vector<double>& values,
                                  int window) {
  if (window < 1) throw Error(ErrorCode::kInvalidArgument, "window < 1");
  std::vector<double> out(values.size());
  double sum = 0.0;
  for (size_t t = 0; t < values.size(); ++t) {
    sum += values[t];
    if (t >= static_cast<size_t>(window)) sum -= values[t - window];
    out[t] = sum / static_cast<double>(std::min<size_t>(t + 1, window));
  }
  return out;
}

AggregateReport RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  const EnvironmentFactory factory = MakeEnvironmentFactory(config);
  const Dims dims = factory.dims;
  const Constraint constraint = Constraint::Parse(config.constraint, dims);

  AggregateReport report;
  report.window = config.window;

  std::vector<Assignment> actions;
  const bool needs_actions = std::any_of(
      config.policies.begin(), config.policies.end(),
      [](const std::string& p) { return p == "ucb" || p == "random"; });
  if (needs_actions) {
    actions = EnumerateMaximalActions(dims, constraint, config.max_actions);
  }

  // The regret reference is computed on the expected-reward oracle.
  if (config.reference == ReferenceMode::kNone) {
    report.notices.push_back("no reference configured; regret omitted");
  } else {
    std::unique_ptr<BanditEnvironment> env = factory.make();
    const Assignment empty(dims);
    if (!env->ExpectedValue(empty)) {
      report.notices.push_back(
          "environment has no expected-value instrumentation; regret omitted");
    } else if (config.reference == ReferenceMode::kBruteForce) {
      try {
        CountFeasible(dims, constraint, kDefaultExhaustionLimit);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kInstanceTooLarge) throw;
        throw ConfigError(
            "reference = brute-force needs an exhaustible feasible set");
      }
      ExpectedValueOracle oracle(*env);
      const OptResult opt = BruteForceOpt(oracle, constraint);
      const SolverSpec spec =
          MakeSolverSpec(DefaultAlgorithm(constraint, config),
                         config.objective, dims, constraint);
      report.reference_value = opt.value;
      report.regret_alpha = spec.alpha.value();
      report.reference_label = "brute-force OPT at " + opt.solution.ToString();
    } else {
      ExpectedValueOracle oracle(*env);
      const SolverSpec spec =
          MakeSolverSpec(DefaultAlgorithm(constraint, config),
                         config.objective, dims, constraint);
      Rng rng(DeriveSeed(config.master_seed, LabelHash("reference")));
      const SolverOutput out = RunSolver(spec, constraint, oracle, rng);
      report.reference_value = *env->ExpectedValue(out.solution);
      report.regret_alpha = 1.0;
      report.reference_label = std::string(AlgorithmName(spec.algorithm)) +
                               " on expected rewards at " +
                               out.solution.ToString();
    }
  }

  // Cells in (policy, seed) order; workers pull indices from a counter and
  // write only their own slot.
  const size_t seeds = config.seeds.size();
  const size_t cell_count = config.policies.size() * seeds;
  std::vector<CellResult> cells(cell_count);
  std::vector<std::exception_ptr> failures(cell_count);
  std::atomic<size_t> next{0};
  const auto work = [&] {
    for (size_t c; (c = next.fetch_add(1)) < cell_count;) {
      try {
        cells[c] = RunCell(config, factory, constraint, actions,
                           config.policies[c / seeds], config.seeds[c % seeds]);
        if (report.reference_value) {
          cells[c].cum_regret =
              ComputeAlphaRegret(cells[c].trajectory, report.regret_alpha,
                                 *report.reference_value);
        }
      } catch (...) {
        failures[c] = std::current_exception();
      }
    }
  };
  const int workers =
      static_cast<int>(std::min<size_t>(config.workers, cell_count));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  const size_t steps = static_cast<size_t>(config.horizon);
  for (size_t p = 0; p < config.policies.size(); ++p) {
    PolicySeries s;
    s.policy = config.policies[p];
    s.runs = static_cast<int>(seeds);
    s.mean_reward.assign(steps, 0.0);
    s.std_reward.assign(steps, 0.0);
    const bool regret = report.reference_value.has_value();
    if (regret) s.mean_cum_regret.assign(steps, 0.0);
    for (size_t t = 0; t < steps; ++t) {
      double sum = 0.0;
      double regret_sum = 0.0;
      for (size_t r = 0; r < seeds; ++r) {
        const CellResult& c = cells[p * seeds + r];
        sum += c.trajectory.rewards()[t];
        if (regret) regret_sum += c.cum_regret[t];
      }
      const double mean = sum / seeds;
      double ss = 0.0;
      for (size_t r = 0; r < seeds; ++r) {
        const double d = cells[p * seeds + r].trajectory.rewards()[t] - mean;
        ss += d * d;
      }
      s.mean_reward[t] = mean;
      s.std_reward[t] = seeds > 1 ? std::sqrt(ss / (seeds - 1)) : 0.0;
      if (regret) s.mean_cum_regret[t] = regret_sum / seeds;
    }
    report.series.push_back(std::move(s));
  }
  report.cells = std::move(cells);

  if (!config.out.empty()) {
    namespace fs = std::filesystem;
    const fs::path out(config.out);
    fs::create_directories(out / "cells");
    for (const CellResult& c : report.cells) {
      WriteFile(out / "cells" /
                    (FileSafe(c.policy) + "_seed" + std::to_string(c.seed) +
                     ".csv"),
                [&](std::ostream& o) { WriteCellCsv(o, c); });
    }
    WriteFile(out / "aggregate.csv",
              [&](std::ostream& o) { WriteAggregateCsv(o, report); });
    WriteFile(out / "summary.json", [&](std::ostream& o) {
      o << SummaryJson(config, factory, constraint, report).dump(2) << "\n";
    });
    WriteFile(out / "plot.csv",
              [&](std::ostream& o) { EmitPlotData(report, "csv", o); });
    WriteFile(out / "plot.svg",
              [&](std::ostream& o) { EmitPlotData(report, "svg", o); });
  }
  return report;
}

void WriteCellCsv(std::ostream& out, const CellResult& cell) {
  out << "t,action,reward,cum_reward,cum_alpha_regret\n";
  const Trajectory& traj = cell.trajectory;
  std::vector<std::string> names;
  names.reserve(traj.actions().size());
  for (const Assignment& a : traj.actions()) {
    names.push_back(CsvField(a.ToString()));
  }
  double cum = 0.0;
  for (int64_t t = 0; t < traj.size(); ++t) {
    const double r = traj.rewards()[t];
    cum += r;
    out << t + 1 << "," << names[traj.step_actions()[t]] << "," << Fmt(r)
        << "," << Fmt(cum) << ",";
    if (!cell.cum_regret.empty()) out << Fmt(cell.cum_regret[t]);
    out << "\n";
  }
}

void WriteAggregateCsv(std::ostream& out, const AggregateReport& report) {
  out << "t,policy,mean_reward,std_reward,mean_cum_regret\n";
  for (const PolicySeries& s : report.series) {
    for (size_t t = 0; t < s.mean_reward.size(); ++t) {
      out << t + 1 << "," << s.policy << "," << Fmt(s.mean_reward[t]) << ","
          << Fmt(s.std_reward[t]) << ",";
      if (!s.mean_cum_regret.empty()) out << Fmt(s.mean_cum_regret[t]);
      out << "\n";
    }
  }
}

AggregateReport ReadAggregate(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path path = fs::path(dir) / "aggregate.csv";
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  AggregateReport report;
  std::string line;
  if (!std::getline(in, line) ||
      Trim(line) != "t,policy,mean_reward,std_reward,mean_cum_regret") {
    throw Error(ErrorCode::kParseError, path.string() + ": bad header");
  }
  std::map<std::string, size_t> index;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(Trim(line));
    for (std::string item; std::getline(ss, item, ',');) f.push_back(item);
    if (f.size() == 4) f.emplace_back();
    if (f.size() != 5) {
      throw Error(ErrorCode::kParseError,
                  path.string() + ":" + std::to_string(line_no) +
                      ": expected 5 fields");
    }
    auto [it, inserted] = index.emplace(f[1], report.series.size());
    if (inserted) {
      PolicySeries fresh;
      fresh.policy = f[1];
      report.series.push_back(std::move(fresh));
    }
    PolicySeries& s = report.series[it->second];
    try {
      s.mean_reward.push_back(std::stod(f[2]));
      s.std_reward.push_back(std::stod(f[3]));
      if (!f[4].empty()) s.mean_cum_regret.push_back(std::stod(f[4]));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParseError,
                  path.string() + ":" + std::to_string(line_no) +
                      ": bad number");
    }
  }
  std::ifstream summary(fs::path(dir) / "summary.json");
  if (summary) {
    try {
      const json j = json::parse(summary);
      report.window = j.value("window", report.window);
      for (const json& p : j.value("policies", json::array())) {
        const std::string name = p.value("policy", "");
        if (auto it = index.find(name); it != index.end()) {
          report.series[it->second].runs = p.value("runs", 0);
        }
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError,
                  std::string("summary.json: ") + e.what());
    }
  }
  return report;
}

void EmitPlotData(const AggregateReport& report, std::string_view format,
                  std::ostream& out) {
  if (format != "csv" && format != "svg") {
    throw Error(ErrorCode::kUnsupportedFormat,
                "unsupported plot format " + std::string(format));
  }
  const std::vector<SmoothSeries> series = Smooth(report);
  if (format == "svg") {
    EmitSvg(series, report.window, out);
    return;
  }
  out << "t,policy,mean,lower,upper\n";
  for (const SmoothSeries& s : series) {
    for (size_t t = 0; t < s.mean.size(); ++t) {
      out << t + 1 << "," << s.policy << "," << Fmt(s.mean[t]) << ","
          << Fmt(s.mean[t] - s.std[t]) << "," << Fmt(s.mean[t] + s.std[t])
          << "\n";
    }
  }
}

}  // namespace ksub
