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

#ifndef ACQ_MATCHING_H_
#define ACQ_MATCHING_H_

#include <cstddef>
#include <vector>

namespace acq {

struct BipartiteGraph {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<std::vector<int>> adjacency;  // left vertex -> right vertices

  explicit BipartiteGraph(std::size_t l = 0, std::size_t r = 0)
      : left(l), right(r), adjacency(l) {}
  void AddEdge(int l, int r) { adjacency[l].push_back(r); }
};

struct Matching {
  static constexpr int kUnmatched = -1;
  std::vector<int> left_to_right;
  std::vector<int> right_to_left;
  std::size_t size = 0;
};

// Maximum-cardinality matching via Hopcroft-Karp, O(E sqrt(V)). The result
// is deterministic for a given adjacency order.
Matching MaximumBipartiteMatching(const BipartiteGraph& g);

}  // namespace acq

#endif  // ACQ_MATCHING_H_
