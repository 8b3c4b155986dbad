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

#ifndef KSUB_INFLUENCE_H_
#define KSUB_INFLUENCE_H_

#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ksub/lattice.h"
#include "ksub/rng.h"

namespace ksub {

struct Edge {
  int from;
  int to;
};

// Directed graph with one activation probability per edge and topic.
// No self-loops, no parallel edges, probabilities in [0, 1].
class InfluenceGraph {
 public:
  // probabilities[i][j] is the topic-(i+1) probability of edges[j].
  InfluenceGraph(int node_count, std::vector<Edge> edges,
                 std::vector<std::vector<double>> probabilities);

  int node_count() const { return node_count_; }
  int topic_count() const { return static_cast<int>(probabilities_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  double Probability(int topic, int edge) const {
    return probabilities_[topic - 1][edge];
  }
  // Edge indices leaving node u.
  std::span<const int> OutEdges(int u) const {
    return {out_edges_.data() + out_offsets_[u],
            out_edges_.data() + out_offsets_[u + 1]};
  }

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<double>> probabilities_;
  std::vector<int> out_offsets_;
  std::vector<int> out_edges_;
};

// Edge-weight distribution for one topic. Normal and exponential draws are
// redrawn until they land in [0, 1].
struct WeightScheme {
  enum class Kind { kUniform, kNormal, kExponential };
  Kind kind = Kind::kUniform;
  double a = 0.0;  // uniform low | normal mean | exponential rate
  double b = 0.0;  // uniform high | normal stddev | unused

  static WeightScheme Uniform(double low, double high);
  static WeightScheme Normal(double mean, double stddev);
  static WeightScheme Exponential(double rate);

  // `uniform(a,b)`, `normal(mu,sigma)`, `exponential(rate)`.
  static WeightScheme Parse(std::string_view text);
  std::string ToString() const;
};

// Semicolon separated list of schemes.
std::vector<WeightScheme> ParseWeightSchemes(std::string_view text);

// The three topic distributions of the influence experiment: Uniform(0,0.2),
// Normal(0.1,0.05) and Exponential(rate 10), the latter two truncated to
// [0, 1].
std::vector<WeightScheme> DefaultWeightSchemes();

// One probability vector per scheme, each with `edge_count` i.i.d. draws.
std::vector<std::vector<double>> GenerateWeights(
    int edge_count, std::span<const WeightScheme> schemes, Rng& rng);

// One run of the k-topic independent cascade from U_i = supp_i(seeds) for
// every topic; returns the size of the union of activated sets.
int SimulateKIc(const InfluenceGraph& graph, const Assignment& seeds,
                Rng& rng);

double EstimateSigma(const InfluenceGraph& graph, const Assignment& seeds,
                     int n_sims, Rng& rng);

// Edge list: one `u v p_1 ... p_k` line per edge (0-indexed nodes), or plain
// `u v` lines when `schemes` is given, in which case probabilities are drawn
// from them. An optional `nodes <count>` line fixes the node count;
// otherwise it is the largest id + 1. '#' starts a comment.
InfluenceGraph ReadInfluenceGraph(
    std::istream& in,
    std::optional<std::pair<std::vector<WeightScheme>, uint64_t>> schemes =
        std::nullopt);
InfluenceGraph ReadInfluenceGraphFile(
    const std::string& path,
    std::optional<std::pair<std::vector<WeightScheme>, uint64_t>> schemes =
        std::nullopt);
void WriteInfluenceGraph(std::ostream& out, const InfluenceGraph& graph);

// Random directed graph with heterogeneous out-degrees: each node gets a
// heavy-tailed degree drawn from a discretized Pareto and that many distinct
// random targets.
std::vector<Edge> GenerateSyntheticEdges(int node_count, double mean_degree,
                                         Rng& rng);

}  // namespace ksub

#endif  // KSUB_INFLUENCE_H_
