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

#ifndef ACQ_GRAPH_H_
#define ACQ_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace acq {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

// Absent vertex, e.g. the parent of a root.
inline constexpr Vertex kNoVertex = -1;

// Thrown for malformed inputs: out-of-range vertices, self-loops, bad files.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Immutable simple undirected graph on vertices 0..n-1. Adjacency lists are
// sorted by neighbor index so that every downstream tie-break is
// reproducible.
class Graph {
 public:
  Graph() = default;

  // Deduplicates edges and orients each as (min, max). Throws GraphError on
  // out-of-range endpoints or self-loops.
  static Graph Build(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const { return adjacency_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Vertex> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool HasEdge(Vertex u, Vertex v) const;

  // Edges sorted lexicographically, each with first < second.
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
};

inline Graph BuildGraph(std::size_t n, std::span<const Edge> edges) {
  return Graph::Build(n, edges);
}

// Disjoint-set union with union by size (the smaller tree is always hung
// under the larger root) and path halving.
class DisjointSetUnion {
 public:
  explicit DisjointSetUnion(std::size_t n);

  Vertex Find(Vertex v);
  // Returns true iff the two elements were in different sets.
  bool Union(Vertex a, Vertex b);

  std::size_t component_count() const { return components_; }
  std::size_t size_of(Vertex v) { return size_[Find(v)]; }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

// Maximal connected vertex sets. Each part is sorted; parts are ordered by
// their smallest vertex.
std::vector<std::vector<Vertex>> ConnectedComponents(const Graph& g);

bool IsConnected(const Graph& g);

// Common families, used by tests and the CLI.
Graph CycleGraph(std::size_t n);
Graph PathGraph(std::size_t n);
Graph StarGraph(std::size_t leaves);
Graph CompleteGraph(std::size_t n);

// Edge-list text format: header line "n m", then m lines "u v".
Graph ReadEdgeList(std::istream& in);
Graph ReadEdgeListFile(const std::string& path);
void WriteEdgeList(const Graph& g, std::ostream& out);

void WriteDot(const Graph& g, std::ostream& out);

}  // namespace acq

#endif  // ACQ_GRAPH_H_
