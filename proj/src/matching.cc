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

#include "acq/matching.h"

#include <limits>
#include <queue>

namespace acq {
namespace {

constexpr int kInf = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  explicit HopcroftKarp(const BipartiteGraph& g)
      : g_(g),
        match_left_(g.left, Matching::kUnmatched),
        match_right_(g.right, Matching::kUnmatched),
        layer_(g.left),
        next_edge_(g.left) {}

  Matching Run() {
    std::size_t size = 0;
    while (BuildLayers()) {
      for (std::size_t u = 0; u < g_.left; ++u) next_edge_[u] = 0;
      for (std::size_t u = 0; u < g_.left; ++u) {
        if (match_left_[u] == Matching::kUnmatched &&
            Augment(static_cast<int>(u))) {
          ++size;
        }
      }
    }
    return Matching{std::move(match_left_), std::move(match_right_), size};
  }

 private:
  // BFS from free left vertices; true iff some free right vertex is reached.
  bool BuildLayers() {
    std::queue<int> q;
    for (std::size_t u = 0; u < g_.left; ++u) {
      if (match_left_[u] == Matching::kUnmatched) {
        layer_[u] = 0;
        q.push(static_cast<int>(u));
      } else {
        layer_[u] = kInf;
      }
    }
    bool reached_free = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int r : g_.adjacency[u]) {
        const int w = match_right_[r];
        if (w == Matching::kUnmatched) {
          reached_free = true;
        } else if (layer_[w] == kInf) {
          layer_[w] = layer_[u] + 1;
          q.push(w);
        }
      }
    }
    return reached_free;
  }

  // Iterative DFS along the layered graph.
  bool Augment(int root) {
    std::vector<int> stack{root};
    while (!stack.empty()) {
      const int u = stack.back();
      const auto& adj = g_.adjacency[u];
      bool advanced = false;
      while (next_edge_[u] < adj.size()) {
        const int r = adj[next_edge_[u]];
        const int w = match_right_[r];
        if (w == Matching::kUnmatched) {
          // Flip the alternating path recorded on the stack.
          int right = r;
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            const int left = *it;
            const int previous = match_left_[left];
            match_left_[left] = right;
            match_right_[right] = left;
            right = previous;
          }
          return true;
        }
        if (layer_[w] == layer_[u] + 1) {
          stack.push_back(w);
          advanced = true;
          break;
        }
        ++next_edge_[u];
      }
      if (!advanced) {
        layer_[u] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++next_edge_[stack.back()];
      }
    }
    return false;
  }

  const BipartiteGraph& g_;
  std::vector<int> match_left_;
  std::vector<int> match_right_;
  std::vector<int> layer_;
  std::vector<std::size_t> next_edge_;
};

}  // namespace

Matching MaximumBipartiteMatching(const BipartiteGraph& g) {
  return HopcroftKarp(g).Run();
}

}  // namespace acq
