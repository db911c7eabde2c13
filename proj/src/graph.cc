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

#include "acq/graph.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace acq {

Graph Graph::Build(std::size_t n, std::span<const Edge> edges) {
  Graph g;
  g.adjacency_.resize(n);
  g.edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n ||
        static_cast<std::size_t>(v) >= n) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") has an endpoint outside [0," + std::to_string(n) +
                       ")");
    }
    if (u == v) {
      throw GraphError("self-loop at vertex " + std::to_string(u));
    }
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
  for (auto [u, v] : g.edges_) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());
  return g;
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  return adjacency_.at(static_cast<std::size_t>(v));
}

bool Graph::HasEdge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= num_vertices() ||
      static_cast<std::size_t>(v) >= num_vertices()) {
    return false;
  }
  if (adjacency_[u].size() > adjacency_[v].size()) std::swap(u, v);
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

DisjointSetUnion::DisjointSetUnion(std::size_t n)
    : parent_(n), size_(n, 1), components_(n) {
  std::iota(parent_.begin(), parent_.end(), Vertex{0});
}

Vertex DisjointSetUnion::Find(Vertex v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

bool DisjointSetUnion::Union(Vertex a, Vertex b) {
  a = Find(a);
  b = Find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  --components_;
  return true;
}

std::vector<std::vector<Vertex>> ConnectedComponents(const Graph& g) {
  const std::size_t n = g.num_vertices();
  DisjointSetUnion dsu(n);
  for (auto [u, v] : g.edges()) dsu.Union(u, v);
  std::vector<int> slot(n, -1);
  std::vector<std::vector<Vertex>> parts;
  for (Vertex v = 0; static_cast<std::size_t>(v) < n; ++v) {
    const Vertex r = dsu.Find(v);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(parts.size());
      parts.emplace_back();
    }
    parts[slot[r]].push_back(v);
  }
  return parts;
}

bool IsConnected(const Graph& g) {
  if (g.num_vertices() == 0) return false;
  DisjointSetUnion dsu(g.num_vertices());
  for (auto [u, v] : g.edges()) {
    dsu.Union(u, v);
    if (dsu.component_count() == 1) return true;
  }
  return dsu.component_count() == 1;
}

Graph CycleGraph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n && n >= 3; ++i) {
    edges.emplace_back(static_cast<Vertex>(i),
                       static_cast<Vertex>((i + 1) % n));
  }
  return Graph::Build(n, edges);
}

Graph PathGraph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(i + 1));
  }
  return Graph::Build(n, edges);
}

Graph StarGraph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) {
    edges.emplace_back(0, static_cast<Vertex>(i));
  }
  return Graph::Build(leaves + 1, edges);
}

Graph CompleteGraph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
  }
  return Graph::Build(n, edges);
}

Graph ReadEdgeList(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw GraphError("edge list: missing \"n m\" header");
  long long n = -1, m = -1;
  {
    std::istringstream header(line);
    if (!(header >> n >> m) || n < 0 || m < 0) {
      throw GraphError("edge list: malformed header \"" + line + "\"");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) {
      throw GraphError("edge list: expected " + std::to_string(m) +
                       " edges, found " + std::to_string(i));
    }
    std::istringstream row(line);
    long long u, v;
    if (!(row >> u >> v)) {
      throw GraphError("edge list: malformed edge line \"" + line + "\"");
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::Build(static_cast<std::size_t>(n), edges);
}

Graph ReadEdgeListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path);
  return ReadEdgeList(in);
}

void WriteEdgeList(const Graph& g, std::ostream& out) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void WriteDot(const Graph& g, std::ostream& out) {
  out << "graph G {\n";
  for (std::size_t v = 0; v < g.num_vertices(); ++v) out << "  " << v << ";\n";
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
}

}  // namespace acq
