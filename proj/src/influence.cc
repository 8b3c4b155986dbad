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

#include "ksub/influence.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "ksub/error.h"

namespace ksub {

InfluenceGraph::InfluenceGraph(int node_count, std::vector<Edge> edges,
                               std::vector<std::vector<double>> probabilities)
    : node_count_(node_count),
      edges_(std::move(edges)),
      probabilities_(std::move(probabilities)) {
  if (node_count < 1) {
    throw Error(ErrorCode::kInvalidArgument, "graph needs >= 1 node");
  }
  if (probabilities_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "graph needs >= 1 topic");
  }
  std::set<std::pair<int, int>> seen;
  for (const Edge& edge : edges_) {
    if (edge.from < 0 || edge.from >= node_count || edge.to < 0 ||
        edge.to >= node_count) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge (" + std::to_string(edge.from) + "," +
                      std::to_string(edge.to) + ") outside node range");
    }
    if (edge.from == edge.to) {
      throw Error(ErrorCode::kInvalidArgument,
                  "self-loop at " + std::to_string(edge.from));
    }
    if (!seen.insert({edge.from, edge.to}).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "parallel edge (" + std::to_string(edge.from) + "," +
                      std::to_string(edge.to) + ")");
    }
  }
  for (const auto& topic : probabilities_) {
    if (topic.size() != edges_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "one probability per edge and topic");
    }
    for (double p : topic) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kValueOutOfRange,
                    "edge probability " + std::to_string(p));
      }
    }
  }
  out_offsets_.assign(node_count + 1, 0);
  for (const Edge& edge : edges_) ++out_offsets_[edge.from + 1];
  for (int u = 0; u < node_count; ++u) out_offsets_[u + 1] += out_offsets_[u];
  out_edges_.resize(edges_.size());
  std::vector<int> fill(out_offsets_.begin(), out_offsets_.end() - 1);
  for (int j = 0; j < static_cast<int>(edges_.size()); ++j) {
    out_edges_[fill[edges_[j].from]++] = j;
  }
}

WeightScheme WeightScheme::Uniform(double low, double high) {
  if (!(low >= 0.0 && low <= high && high <= 1.0)) {
    throw Error(ErrorCode::kInvalidSchemeParams,
                "uniform needs 0 <= low <= high <= 1");
  }
  return {Kind::kUniform, low, high};
}

WeightScheme WeightScheme::Normal(double mean, double stddev) {
  if (!(stddev > 0.0) || !std::isfinite(mean)) {
    throw Error(ErrorCode::kInvalidSchemeParams,
                "normal needs a finite mean and stddev > 0");
  }
  // Rejection into [0, 1] must have a usable acceptance rate.
  if (mean < -3.0 * stddev || mean > 1.0 + 3.0 * stddev) {
    throw Error(ErrorCode::kInvalidSchemeParams,
                "normal mass inside [0, 1] too small for rejection");
  }
  return {Kind::kNormal, mean, stddev};
}

WeightScheme WeightScheme::Exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::kInvalidSchemeParams, "exponential needs rate > 0");
  }
  return {Kind::kExponential, rate, 0.0};
}

WeightScheme WeightScheme::Parse(std::string_view text) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos ||
      close < open || close + 1 != text.size()) {
    throw Error(ErrorCode::kInvalidSchemeParams,
                "bad weight scheme '" + std::string(text) + "'");
  }
  const std::string name(text.substr(0, open));
  std::vector<double> args;
  std::stringstream body(std::string(text.substr(open + 1, close - open - 1)));
  std::string token;
  while (std::getline(body, token, ',')) {
    try {
      size_t used = 0;
      args.push_back(std::stod(token, &used));
      if (token.find_first_not_of(" \t", used) != std::string::npos) {
        throw std::invalid_argument("trailing");
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidSchemeParams,
                  "bad number in '" + std::string(text) + "'");
    }
  }
  if (name == "uniform" && args.size() == 2) return Uniform(args[0], args[1]);
  if (name == "normal" && args.size() == 2) return Normal(args[0], args[1]);
  if (name == "exponential" && args.size() == 1) return Exponential(args[0]);
  throw Error(ErrorCode::kInvalidSchemeParams,
              "unknown weight scheme '" + std::string(text) + "'");
}

std::string WeightScheme::ToString() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kUniform: out << "uniform(" << a << "," << b << ")"; break;
    case Kind::kNormal: out << "normal(" << a << "," << b << ")"; break;
    case Kind::kExponential: out << "exponential(" << a << ")"; break;
  }
  return out.str();
}

std::vector<WeightScheme> ParseWeightSchemes(std::string_view text) {
  std::vector<WeightScheme> schemes;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(start, end - start);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty()) schemes.push_back(WeightScheme::Parse(token));
    start = end + 1;
  }
  if (schemes.empty()) {
    throw Error(ErrorCode::kInvalidSchemeParams, "no weight schemes given");
  }
  return schemes;
}

std::vector<WeightScheme> DefaultWeightSchemes() {
  return {WeightScheme::Uniform(0.0, 0.2), WeightScheme::Normal(0.1, 0.05),
          WeightScheme::Exponential(10.0)};
}

std::vector<std::vector<double>> GenerateWeights(
    int edge_count, std::span<const WeightScheme> schemes, Rng& rng) {
  if (edge_count < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative edge count");
  }
  std::vector<std::vector<double>> weights;
  for (const WeightScheme& scheme : schemes) {
    std::vector<double> draws(edge_count);
    std::normal_distribution<double> normal(scheme.a,
                                            scheme.kind ==
                                                    WeightScheme::Kind::kNormal
                                                ? scheme.b
                                                : 1.0);
    std::exponential_distribution<double> exponential(
        scheme.kind == WeightScheme::Kind::kExponential ? scheme.a : 1.0);
    for (double& w : draws) {
      switch (scheme.kind) {
        case WeightScheme::Kind::kUniform:
          w = scheme.a + (scheme.b - scheme.a) * Uniform01(rng);
          break;
        case WeightScheme::Kind::kNormal:
          do {
            w = normal(rng);
          } while (!(w >= 0.0 && w <= 1.0));
          break;
        case WeightScheme::Kind::kExponential:
          do {
            w = exponential(rng);
          } while (!(w <= 1.0));
          break;
      }
    }
    weights.push_back(std::move(draws));
  }
  return weights;
}

int SimulateKIc(const InfluenceGraph& graph, const Assignment& seeds,
                Rng& rng) {
  if (seeds.n() != graph.node_count() || seeds.k() != graph.topic_count()) {
    throw Error(ErrorCode::kDimsMismatch,
                "seed dims do not match graph nodes/topics");
  }
  const int n = graph.node_count();
  std::vector<char> any_active(n, 0);
  std::vector<char> active(n, 0);
  std::vector<int> frontier;
  for (int topic = 1; topic <= graph.topic_count(); ++topic) {
    std::fill(active.begin(), active.end(), 0);
    frontier.clear();
    for (int v = 0; v < n; ++v) {
      if (seeds[v] == topic) {
        active[v] = 1;
        frontier.push_back(v);
      }
    }
    // Each newly active node tries each out-edge exactly once.
    for (size_t head = 0; head < frontier.size(); ++head) {
      const int u = frontier[head];
      for (int edge : graph.OutEdges(u)) {
        const int v = graph.edges()[edge].to;
        if (active[v]) continue;
        if (Uniform01(rng) < graph.Probability(topic, edge)) {
          active[v] = 1;
          frontier.push_back(v);
        }
      }
    }
    for (int v = 0; v < n; ++v) any_active[v] |= active[v];
  }
  int count = 0;
  for (char a : any_active) count += a;
  return count;
}

double EstimateSigma(const InfluenceGraph& graph, const Assignment& seeds,
                     int n_sims, Rng& rng) {
  if (n_sims < 1) throw Error(ErrorCode::kInvalidArgument, "n_sims < 1");
  double total = 0.0;
  for (int s = 0; s < n_sims; ++s) total += SimulateKIc(graph, seeds, rng);
  return total / n_sims;
}

InfluenceGraph ReadInfluenceGraph(
    std::istream& in,
    std::optional<std::pair<std::vector<WeightScheme>, uint64_t>> schemes) {
  std::vector<Edge> edges;
  std::vector<std::vector<double>> per_edge;
  int declared_nodes = -1;
  int max_id = -1;
  int width = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream tokens(line);
    std::vector<std::string> fields;
    for (std::string t; tokens >> t;) fields.push_back(t);
    if (fields.empty()) continue;
    const auto fail = [&](const std::string& what) {
      return Error(ErrorCode::kParseError,
                   "graph line " + std::to_string(line_no) + ": " + what);
    };
    try {
      if (fields[0] == "nodes") {
        if (fields.size() != 2) throw fail("expected 'nodes <count>'");
        declared_nodes = std::stoi(fields[1]);
        continue;
      }
      if (fields.size() < 2) throw fail("expected 'u v [p_1 ... p_k]'");
      Edge edge{std::stoi(fields[0]), std::stoi(fields[1])};
      std::vector<double> probs;
      for (size_t f = 2; f < fields.size(); ++f) {
        probs.push_back(std::stod(fields[f]));
      }
      if (width < 0) width = static_cast<int>(probs.size());
      if (static_cast<int>(probs.size()) != width) {
        throw fail("inconsistent number of probabilities");
      }
      max_id = std::max({max_id, edge.from, edge.to});
      edges.push_back(edge);
      per_edge.push_back(std::move(probs));
    } catch (const std::logic_error&) {
      throw fail("bad number");
    }
  }
  const int nodes = declared_nodes >= 0 ? declared_nodes : max_id + 1;
  std::vector<std::vector<double>> probabilities;
  if (width <= 0) {
    if (!schemes) {
      throw Error(ErrorCode::kParseError,
                  "unweighted edge list needs weight schemes");
    }
    Rng rng(schemes->second);
    probabilities = GenerateWeights(static_cast<int>(edges.size()),
                                    schemes->first, rng);
  } else {
    probabilities.assign(width, std::vector<double>(edges.size()));
    for (size_t j = 0; j < edges.size(); ++j) {
      for (int i = 0; i < width; ++i) probabilities[i][j] = per_edge[j][i];
    }
  }
  return InfluenceGraph(nodes, std::move(edges), std::move(probabilities));
}

InfluenceGraph ReadInfluenceGraphFile(
    const std::string& path,
    std::optional<std::pair<std::vector<WeightScheme>, uint64_t>> schemes) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ReadInfluenceGraph(in, std::move(schemes));
}

void WriteInfluenceGraph(std::ostream& out, const InfluenceGraph& graph) {
  out << "nodes " << graph.node_count() << "\n";
  out << std::setprecision(17);
  for (size_t j = 0; j < graph.edges().size(); ++j) {
    out << graph.edges()[j].from << " " << graph.edges()[j].to;
    for (int i = 1; i <= graph.topic_count(); ++i) {
      out << " " << graph.Probability(i, static_cast<int>(j));
    }
    out << "\n";
  }
}

std::vector<Edge> GenerateSyntheticEdges(int node_count, double mean_degree,
                                         Rng& rng) {
  if (node_count < 2 || !(mean_degree > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bad synthetic graph parameters");
  }
  // Pareto with shape 2 has mean 2 * scale.
  const double scale = mean_degree / 2.0;
  std::vector<Edge> edges;
  std::vector<int> targets(node_count - 1);
  for (int u = 0; u < node_count; ++u) {
    const double u01 = 1.0 - Uniform01(rng);
    int degree = static_cast<int>(scale / std::sqrt(u01));
    degree = std::clamp(degree, 1, node_count - 1);
    for (int v = 0, j = 0; v < node_count; ++v) {
      if (v != u) targets[j++] = v;
    }
    // Partial Fisher-Yates for `degree` distinct targets.
    for (int j = 0; j < degree; ++j) {
      const int pick =
          j + static_cast<int>(Uniform01(rng) * (node_count - 1 - j));
      std::swap(targets[j], targets[pick]);
      edges.push_back({u, targets[j]});
    }
  }
  return edges;
}

}  // namespace ksub
