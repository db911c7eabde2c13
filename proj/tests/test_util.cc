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

#include "test_util.h"

#include <algorithm>
#include <map>
#include <numeric>

namespace acq::testing {

Graph RandomGraph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (keep(rng)) {
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
    }
  }
  return Graph::Build(n, edges);
}

std::vector<Vertex> RandomTree(std::size_t n, Vertex root,
                               std::mt19937_64& rng) {
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::iter_swap(order.begin(), std::find(order.begin(), order.end(), root));
  std::vector<Vertex> parent(n, kNoVertex);
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    parent[order[i]] = order[pick(rng)];
  }
  return parent;
}

std::vector<int> ReferenceComponents(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges()) adjacent[u][v] = adjacent[v][u] = true;
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (adjacent[u][v] && label[v] < 0) {
          label[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

std::vector<IntMove> ReferenceLegalMoves(const Graph& g,
                                         const std::vector<std::int64_t>& w,
                                         MoveKind kind) {
  std::vector<IntMove> moves;
  for (auto [a, b] : g.edges()) {
    for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
      const IntMove mv{kind, u, v, kind == MoveKind::kTotal ? w[u] : 1};
      if (ReferenceLegal(g, w, mv)) moves.push_back(mv);
    }
  }
  return moves;
}

std::size_t ReferenceMatchingSize(const BipartiteGraph& g) {
  std::vector<int> owner(g.right, -1);
  std::size_t size = 0;
  for (std::size_t l = 0; l < g.left; ++l) {
    std::vector<bool> seen(g.right, false);
    auto augment = [&](auto&& self, int u) -> bool {
      for (int r : g.adjacency[u]) {
        if (seen[r]) continue;
        seen[r] = true;
        if (owner[r] < 0 || self(self, owner[r])) {
          owner[r] = u;
          return true;
        }
      }
      return false;
    };
    size += augment(augment, static_cast<int>(l));
  }
  return size;
}

BipartiteGraph RandomBipartite(std::size_t left, std::size_t right, double p,
                               std::mt19937_64& rng) {
  BipartiteGraph g(left, right);
  std::bernoulli_distribution keep(p);
  for (std::size_t l = 0; l < left; ++l) {
    for (std::size_t r = 0; r < right; ++r) {
      if (keep(rng)) g.AddEdge(static_cast<int>(l), static_cast<int>(r));
    }
  }
  return g;
}

std::vector<std::int64_t> RandomMonotoneWeights(
    const std::vector<Vertex>& parent, Vertex root, std::mt19937_64& rng) {
  const std::size_t n = parent.size();
  std::vector<std::vector<Vertex>> kids(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (parent[v] != kNoVertex)
      kids[parent[v]].push_back(static_cast<Vertex>(v));
  }
  std::vector<Vertex> order{root};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex c : kids[order[i]]) order.push_back(c);
  }
  std::vector<std::int64_t> w(n, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::int64_t heaviest = 0;
    for (Vertex c : kids[*it]) heaviest = std::max(heaviest, w[c]);
    w[*it] = heaviest + 1 + static_cast<std::int64_t>(rng() % 3);
  }
  return w;
}

Graph TreeGraph(const std::vector<Vertex>& parent) {
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] != kNoVertex) {
      edges.emplace_back(static_cast<Vertex>(v), parent[v]);
    }
  }
  return Graph::Build(parent.size(), edges);
}

namespace {

struct Search {
  const Graph& g;
  bool unit;
  std::map<std::vector<int>, std::size_t> memo;

  std::size_t Best(std::vector<int>& w) {
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    std::size_t best = 0;
    bool moved = false;
    for (auto [a, b] : g.edges()) {
      for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
        if (w[u] == 0 || w[v] < w[u]) continue;
        moved = true;
        const int amount = unit ? 1 : w[u];
        w[u] -= amount;
        w[v] += amount;
        const std::size_t value = Best(w);
        w[u] += amount;
        w[v] -= amount;
        if (best == 0 || value < best) best = value;
      }
    }
    if (!moved) {
      best = static_cast<std::size_t>(
          std::count_if(w.begin(), w.end(), [](int x) { return x > 0; }));
    }
    memo.emplace(w, best);
    return best;
  }
};

}  // namespace

std::size_t ReferenceAcquisitionNumber(const Graph& g, bool unit) {
  Search search{g, unit, {}};
  std::vector<int> w(g.num_vertices(), 1);
  return search.Best(w);
}

}  // namespace acq::testing
