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

#include "acq/random_process.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace acq {

std::uint64_t Rng::UniformIndex(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("UniformIndex: empty range");
  __uint128_t product = static_cast<__uint128_t>(NextU64()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      product = static_cast<__uint128_t>(NextU64()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t PairCount(std::size_t n) {
  const auto m = static_cast<std::uint64_t>(n);
  return m < 2 ? 0 : m * (m - 1) / 2;
}

Edge PairFromIndex(std::uint64_t index) {
  // Largest v with v(v-1)/2 <= index.
  auto v = static_cast<std::uint64_t>(
      (1.0L + std::sqrt(1.0L + 8.0L * static_cast<long double>(index))) / 2.0L);
  while (v * (v - 1) / 2 > index) --v;
  while ((v + 1) * v / 2 <= index) ++v;
  const std::uint64_t u = index - v * (v - 1) / 2;
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

std::uint64_t IndexFromPair(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  const auto hi = static_cast<std::uint64_t>(v);
  return hi * (hi - 1) / 2 + static_cast<std::uint64_t>(u);
}

EdgeStream::EdgeStream(std::size_t n, std::uint64_t seed)
    : n_(n), total_(PairCount(n)), seed_(seed), rng_(seed) {}

void EdgeStream::ExtendTo(std::uint64_t m) {
  if (m > total_) {
    throw std::out_of_range("edge stream prefix " + std::to_string(m) +
                            " exceeds N = " + std::to_string(total_));
  }
  auto slot = [this](std::uint64_t i) {
    auto it = displaced_.find(i);
    return it == displaced_.end() ? i : it->second;
  };
  if (m > prefix_.capacity()) {
    prefix_.reserve(
        std::max(static_cast<std::size_t>(m), 2 * prefix_.capacity()));
  }
  for (std::uint64_t i = prefix_.size(); i < m; ++i) {
    const std::uint64_t j = i + rng_.UniformIndex(total_ - i);
    const std::uint64_t at_i = slot(i);
    const std::uint64_t at_j = slot(j);
    if (j != i) displaced_[j] = at_i;
    displaced_.erase(i);
    prefix_.push_back(PairFromIndex(at_j));
  }
}

Edge EdgeStream::edge(std::uint64_t i) {
  ExtendTo(i + 1);
  return prefix_[static_cast<std::size_t>(i)];
}

std::span<const Edge> EdgeStream::Prefix(std::uint64_t m) {
  ExtendTo(m);
  return std::span<const Edge>(prefix_.data(), static_cast<std::size_t>(m));
}

Graph EdgeStream::PrefixGraph(std::uint64_t m) {
  return Graph::Build(n_, Prefix(m));
}

EdgeStream SampleEdgeStream(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw GraphError("edge stream needs at least one vertex");
  if (n > static_cast<std::size_t>(std::numeric_limits<Vertex>::max())) {
    throw GraphError("n = " + std::to_string(n) +
                     " overflows the vertex/edge index range");
  }
  return EdgeStream(n, seed);
}

std::uint64_t SampleBinomial(std::uint64_t trials, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("probability outside [0, 1]");
  }
  if (p == 0.0 || trials == 0) return 0;
  if (p == 1.0) return trials;
  if (p > 0.5) return trials - SampleBinomial(trials, 1.0 - p, rng);
  // Successes are separated by Geometric(p) gaps; count how many fit.
  const double log_q = std::log1p(-p);
  std::uint64_t successes = 0;
  std::uint64_t position = 0;  // number of trials consumed
  while (true) {
    const double u = 1.0 - rng.UniformReal();  // (0, 1]
    const double gap = std::floor(std::log(u) / log_q);
    if (gap >= static_cast<double>(trials - position)) break;
    position += static_cast<std::uint64_t>(gap) + 1;
    ++successes;
    if (position >= trials) break;
  }
  return successes;
}

std::uint64_t GnpPrefixLength(const EdgeStream& stream, double p,
                              std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, 0x676e70ULL));
  return SampleBinomial(stream.size(), p, rng);
}

std::uint64_t HittingTimeConnectivity(EdgeStream& stream) {
  const std::size_t n = stream.num_vertices();
  if (n <= 1) return 0;
  DisjointSetUnion dsu(n);
  std::uint64_t m = 0;
  while (dsu.component_count() > 1) {
    auto [u, v] = stream.edge(m);
    ++m;
    dsu.Union(u, v);
  }
  return m;
}

double OmegaSpec::Evaluate(std::size_t n) const {
  if (kind == Kind::kConstant) return value;
  const double ln = std::log(static_cast<double>(n));
  return ln > 1.0 ? std::log(ln) : 0.0;
}

std::string OmegaSpec::ToString() const {
  if (kind == Kind::kLnLn) return "lnln";
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

OmegaSpec OmegaSpec::Parse(const std::string& text) {
  if (text == "lnln" || text == "ln_ln" || text == "loglog") return {};
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !std::isfinite(v)) {
    throw std::invalid_argument("omega must be \"lnln\" or a number, got \"" +
                                text + "\"");
  }
  return {Kind::kConstant, v};
}

double ClampProbability(double p) { return std::clamp(p, 0.0, 1.0); }

double PMinus(std::size_t n, double omega) {
  const double nn = static_cast<double>(n);
  return ClampProbability((std::log(nn) - omega) / nn);
}

double PPlus(std::size_t n, double omega) {
  const double nn = static_cast<double>(n);
  return ClampProbability((std::log(nn) + omega) / nn);
}

double ThresholdProbability(std::size_t n, double c) {
  const double nn = static_cast<double>(n);
  return ClampProbability((std::log(nn) + c) / nn);
}

DegreeStats ComputeDegreeStats(const Graph& g) {
  DegreeStats stats;
  for (Vertex v = 0; static_cast<std::size_t>(v) < g.num_vertices(); ++v) {
    const std::size_t d = g.degree(v);
    stats.max_degree = std::max(stats.max_degree, d);
    ++stats.counts_by_degree[d];
  }
  return stats;
}

bool DegreeLemmaReport::all_ok() const {
  return max_degree_ok &&
         std::all_of(degree_counts.begin(), degree_counts.end(),
                     [](const DegreeCountCheck& c) { return c.ok; });
}

DegreeLemmaReport CheckDegreeLemmas(const DegreeStats& stats, std::size_t n,
                                    std::span<const std::size_t> ks) {
  static constexpr std::size_t kDefaultKs[] = {0, 1, 2};
  if (ks.empty()) ks = kDefaultKs;
  const double ln = std::log(static_cast<double>(n));
  DegreeLemmaReport report;
  report.max_degree = stats.max_degree;
  report.max_degree_bound = 4.0 * ln;
  report.max_degree_ok =
      static_cast<double>(stats.max_degree) <= report.max_degree_bound;
  for (std::size_t k : ks) {
    DegreeCountCheck check;
    check.k = k;
    check.count = stats.count(k);
    check.bound = std::pow(ln, static_cast<double>(k + 1));
    check.ok = static_cast<double>(check.count) <= check.bound;
    report.degree_counts.push_back(check);
  }
  return report;
}

}  // namespace acq
