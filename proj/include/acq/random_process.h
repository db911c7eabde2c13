// Copyright 2026 The acqgraph Authors
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

#ifndef ACQ_RANDOM_PROCESS_H_
#define ACQ_RANDOM_PROCESS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "acq/graph.h"
#include "acq/random.h"

namespace acq {

// Number of unordered pairs n(n-1)/2.
std::uint64_t PairCount(std::size_t n);

// Bijection between [0, n(n-1)/2) and pairs u < v, ordered by v then u.
Edge PairFromIndex(std::uint64_t index);
std::uint64_t IndexFromPair(Vertex u, Vertex v);

// A uniformly random ordering e_1, ..., e_N of the edges of K_n.
//
// The permutation is produced by Fisher-Yates, but lazily: position i is
// fixed only when it is first requested, and untouched positions are kept
// implicit in a sparse swap table. Any prefix is therefore distributed
// exactly as the prefix of a fully shuffled array (and is identical to it for
// the same seed), while a trial that stops at the connectivity hitting time
// costs O(M) memory instead of O(n^2).
//
// Extending the prefix mutates internal state, so a stream is owned by one
// trial at a time.
class EdgeStream {
 public:
  EdgeStream(std::size_t n, std::uint64_t seed);

  std::size_t num_vertices() const { return n_; }
  std::uint64_t size() const { return total_; }
  std::uint64_t seed() const { return seed_; }

  // e_{i+1} in one-based process notation.
  Edge edge(std::uint64_t i);

  // The first m edges. m may not exceed size().
  std::span<const Edge> Prefix(std::uint64_t m);

  // Prefix graph G(n, m).
  Graph PrefixGraph(std::uint64_t m);

  std::uint64_t materialized() const { return prefix_.size(); }

 private:
  void ExtendTo(std::uint64_t m);

  std::size_t n_;
  std::uint64_t total_;
  std::uint64_t seed_;
  Rng rng_;
  std::unordered_map<std::uint64_t, std::uint64_t> displaced_;
  std::vector<Edge> prefix_;
};

// Throws GraphError when n is zero or exceeds the Vertex range.
EdgeStream SampleEdgeStream(std::size_t n, std::uint64_t seed);

// Draws K ~ Binomial(N, p) by geometric skipping over the N Bernoulli trials
// (O(min(K, N - K)) work). The first K stream edges are then distributed as
// G(n, p), which realizes the coupling G(n, p) within the process.
std::uint64_t GnpPrefixLength(const EdgeStream& stream, double p,
                              std::uint64_t seed);
std::uint64_t SampleBinomial(std::uint64_t trials, double p, Rng& rng);

// M = min{ m : G(n, m) is connected }. Zero for n = 1.
std::uint64_t HittingTimeConnectivity(EdgeStream& stream);

// Slowly growing omega(n) used for the window p = (ln n -/+ omega) / n.
struct OmegaSpec {
  enum class Kind { kLnLn, kConstant };
  Kind kind = Kind::kLnLn;
  double value = 0.0;

  double Evaluate(std::size_t n) const;
  std::string ToString() const;
  // "lnln" or a decimal constant.
  static OmegaSpec Parse(const std::string& text);
};

double ClampProbability(double p);
// (ln n - omega) / n and (ln n + omega) / n, clamped to [0, 1].
double PMinus(std::size_t n, double omega);
double PPlus(std::size_t n, double omega);
// (ln n + c) / n, clamped to [0, 1].
double ThresholdProbability(std::size_t n, double c);

struct DegreeStats {
  std::size_t max_degree = 0;
  std::map<std::size_t, std::size_t> counts_by_degree;

  std::size_t count(std::size_t k) const {
    auto it = counts_by_degree.find(k);
    return it == counts_by_degree.end() ? 0 : it->second;
  }
};

DegreeStats ComputeDegreeStats(const Graph& g);

struct DegreeCountCheck {
  std::size_t k = 0;
  std::size_t count = 0;
  double bound = 0.0;  // (ln n)^(k+1)
  bool ok = false;
};

struct DegreeLemmaReport {
  std::size_t max_degree = 0;
  double max_degree_bound = 0.0;  // 4 ln n
  bool max_degree_ok = false;
  std::vector<DegreeCountCheck> degree_counts;

  bool all_ok() const;
};

DegreeLemmaReport CheckDegreeLemmas(const DegreeStats& stats, std::size_t n,
                                    std::span<const std::size_t> ks = {});

}  // namespace acq

#endif  // ACQ_RANDOM_PROCESS_H_
