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

#include "acq/exact_solver.h"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace acq {
namespace {

void CheckVariant(MoveKind variant) {
  if (variant == MoveKind::kFractional) {
    throw std::invalid_argument(
        "fractional acquisition has a continuous state space; only unit and "
        "total variants are searchable");
  }
}

class PackedState {
 public:
  explicit PackedState(std::size_t n)
      : n_(n),
        bits_(static_cast<unsigned>(std::bit_width(n))),
        mask_((std::uint64_t{1} << bits_) - 1) {}

  std::size_t n() const { return n_; }

  std::uint64_t Get(std::uint64_t key, std::size_t v) const {
    return (key >> (v * bits_)) & mask_;
  }

  std::uint64_t Set(std::uint64_t key, std::size_t v, std::uint64_t w) const {
    const unsigned shift = static_cast<unsigned>(v * bits_);
    return (key & ~(mask_ << shift)) | (w << shift);
  }

  std::uint64_t AllOnes() const {
    std::uint64_t key = 0;
    for (std::size_t v = 0; v < n_; ++v) key = Set(key, v, 1);
    return key;
  }

  bool fits() const { return n_ * bits_ <= 64; }

 private:
  std::size_t n_;
  unsigned bits_;
  std::uint64_t mask_;
};

struct Predecessor {
  std::uint64_t previous;
  Vertex from;
  Vertex to;
};

}  // namespace

SolveResult AcquisitionNumberExact(const Graph& g, MoveKind variant,
                                   const SolverOptions& options) {
  CheckVariant(variant);
  const std::size_t n = g.num_vertices();
  if (n == 0)
    throw std::invalid_argument("exact solver needs a nonempty graph");
  const std::size_t cap =
      variant == MoveKind::kUnit ? options.unit_cap : options.total_cap;
  const PackedState packing(n);
  if (n > cap || !packing.fits()) {
    throw SolverCapError(
        "n = " + std::to_string(n) + " exceeds the exact-solver cap of " +
        std::to_string(cap) + " for the " + std::string(MoveKindName(variant)) +
        " variant; use RandomProtocolUpperBound instead");
  }

  const auto& edges = g.edges();
  const std::uint64_t start = packing.AllOnes();
  std::unordered_map<std::uint64_t, Predecessor> seen;
  seen.emplace(start, Predecessor{start, -1, -1});
  std::deque<std::uint64_t> frontier{start};

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::uint64_t best_key = start;
  std::size_t explored = 0;
  std::vector<std::uint64_t> w(n);

  while (!frontier.empty()) {
    const std::uint64_t key = frontier.front();
    frontier.pop_front();
    ++explored;
    for (std::size_t v = 0; v < n; ++v) w[v] = packing.Get(key, v);

    bool any_move = false;
    auto try_move = [&](Vertex from, Vertex to) {
      const std::uint64_t ws = w[from];
      const std::uint64_t wr = w[to];
      if (ws == 0 || wr < ws) return;
      any_move = true;
      const std::uint64_t amount = variant == MoveKind::kUnit ? 1 : ws;
      std::uint64_t next = packing.Set(key, from, ws - amount);
      next = packing.Set(next, to, wr + amount);
      if (seen.emplace(next, Predecessor{key, from, to}).second) {
        frontier.push_back(next);
      }
    };
    for (auto [u, v] : edges) {
      try_move(u, v);
      try_move(v, u);
    }
    if (!any_move) {
      const auto support = static_cast<std::size_t>(
          std::count_if(w.begin(), w.end(), [](auto x) { return x > 0; }));
      if (support < best) {
        best = support;
        best_key = key;
        if (best == 1) break;
      }
    }
  }

  SolveResult result;
  result.value = best;
  result.explored = explored;
  result.variant = variant;
  for (std::uint64_t key = best_key; key != start;) {
    const Predecessor& p = seen.at(key);
    const auto amount = static_cast<std::int64_t>(
        variant == MoveKind::kUnit ? 1 : packing.Get(p.previous, p.from));
    result.witness.push_back({variant, p.from, p.to, amount});
    key = p.previous;
  }
  std::reverse(result.witness.begin(), result.witness.end());
  return result;
}

IntTrace RandomMaximalProtocol(const Graph& g, MoveKind variant, Rng& rng) {
  CheckVariant(variant);
  IntConfig c = InitialConfig<std::int64_t>(g);
  IntTrace trace;
  std::vector<IntMove> legal;
  while (true) {
    legal.clear();
    for (auto [u, v] : g.edges()) {
      for (auto [from, to] : {Edge{u, v}, Edge{v, u}}) {
        const std::int64_t ws = c[from];
        if (ws == 0 || c[to] < ws) continue;
        legal.push_back(
            {variant, from, to, variant == MoveKind::kUnit ? 1 : ws});
      }
    }
    if (legal.empty()) break;
    const IntMove& mv = legal[rng.UniformIndex(legal.size())];
    ApplyMoveInPlace(g, c, mv);
    trace.push_back(mv);
  }
  return trace;
}

std::size_t RandomProtocolUpperBound(const Graph& g, MoveKind variant,
                                     std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  Rng rng(seed);
  std::size_t best = std::numeric_limits<std::size_t>::max();
  const IntConfig start = InitialConfig<std::int64_t>(g);
  for (std::size_t t = 0; t < trials && best > 1; ++t) {
    const IntTrace trace = RandomMaximalProtocol(g, variant, rng);
    const IntConfig end = Replay<std::int64_t>(g, start, trace);
    best = std::min(best, ResidualSupport(end).size());
  }
  return best;
}

}  // namespace acq
