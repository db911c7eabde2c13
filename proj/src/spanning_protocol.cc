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

#include "acq/spanning_protocol.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "json.hpp"

namespace acq {

std::string_view ProtocolModeName(ProtocolMode mode) {
  return mode == ProtocolMode::kPaperFaithful ? "paper" : "practical";
}

ProtocolMode ParseProtocolMode(std::string_view text) {
  if (text == "paper" || text == "paper_faithful") {
    return ProtocolMode::kPaperFaithful;
  }
  if (text == "practical") return ProtocolMode::kPractical;
  throw std::invalid_argument("unknown mode \"" + std::string(text) +
                              "\" (expected paper or practical)");
}

ProtocolParams ProtocolParams::PaperFaithful(std::size_t n) {
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  ProtocolParams p;
  p.mode = ProtocolMode::kPaperFaithful;
  p.delta = 0.06;
  p.good_children_threshold = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(p.delta / 2 * ln)));
  p.whisker_quota = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(p.delta / 4 * ln)));
  p.high_degree_threshold =
      static_cast<std::size_t>(std::ceil((1 - p.delta) / 1.01 * ln));
  p.low_degree_threshold = static_cast<std::size_t>(std::ceil(10 / p.delta));
  p.max_retries = 0;
  return p;
}

ProtocolParams ProtocolParams::Practical(std::size_t n) {
  const double ln = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
  ProtocolParams p;
  p.mode = ProtocolMode::kPractical;
  p.delta = 0.06;
  p.good_children_threshold =
      std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(0.3 * ln)));
  p.whisker_quota = (p.good_children_threshold + 1) / 2;
  p.high_degree_threshold = static_cast<std::size_t>(std::floor(0.75 * ln));
  p.low_degree_threshold = 0;
  p.max_retries = 5;
  return p;
}

ProtocolParams ProtocolParams::ForMode(ProtocolMode mode, std::size_t n) {
  return mode == ProtocolMode::kPaperFaithful ? PaperFaithful(n) : Practical(n);
}

void ProtocolParams::Validate() const {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (whisker_quota > good_children_threshold) {
    throw std::invalid_argument(
        "whisker quota may not exceed the good-children threshold");
  }
}

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kUnassigned:
      return "unassigned";
    case Role::kRoot:
      return "root";
    case Role::kGood:
      return "good";
    case Role::kBad:
      return "bad";
    case Role::kGoodWhisker:
      return "good_whisker";
    case Role::kBadWhisker:
      return "bad_whisker";
    case Role::kAttachedLow:
      return "attached_low";
    case Role::kAttachedR:
      return "attached_R";
    case Role::kDangerous:
      return "dangerous";
    case Role::kDangerousParent:
      return "dangerous_parent";
    case Role::kIsolatedChild:
      return "isolated_child";
    case Role::kRepaired:
      return "repaired";
  }
  return "unknown";
}

std::string_view DegreeClassName(DegreeClass c) {
  switch (c) {
    case DegreeClass::kNone:
      return "none";
    case DegreeClass::kHigh:
      return "high";
    case DegreeClass::kMedium:
      return "medium";
    case DegreeClass::kLow:
      return "low";
  }
  return "unknown";
}

std::vector<std::vector<Vertex>> LabeledTree::Children() const {
  std::vector<std::vector<Vertex>> children(parent.size());
  for (std::size_t v = 0; v < parent.size(); ++v) {
    if (parent[v] != kNoVertex)
      children[parent[v]].push_back(static_cast<Vertex>(v));
  }
  return children;
}

bool LabeledTree::IsGoodLike(Vertex v) const {
  return role[v] == Role::kGood || (role[v] == Role::kRoot && root_good);
}

bool LabeledTree::IsBadLike(Vertex v) const {
  return role[v] == Role::kBad || (role[v] == Role::kRoot && !root_good);
}

bool ConstructionState::Fail(std::string reason) {
  diagnostics.failure_reason = std::move(reason);
  return false;
}

namespace {

std::string V(Vertex v) { return std::to_string(v); }

void FillPartitionDiagnostics(ConstructionState& state) {
  auto& d = state.diagnostics;
  const auto& tree = state.tree;
  d.tree_size = static_cast<std::size_t>(
      std::count(state.in_tree.begin(), state.in_tree.end(), true));
  d.remainder_size = state.in_tree.size() - d.tree_size;
  d.good_vertices = d.bad_vertices = d.good_whiskers = d.bad_whiskers = 0;
  d.tree_height = 0;
  for (std::size_t v = 0; v < tree.size(); ++v) {
    const auto x = static_cast<Vertex>(v);
    if (!state.in_tree[v]) continue;
    d.tree_height = std::max(d.tree_height, tree.depth[v]);
    if (tree.IsGoodLike(x)) ++d.good_vertices;
    if (tree.IsBadLike(x)) ++d.bad_vertices;
    if (tree.role[v] == Role::kGoodWhisker) ++d.good_whiskers;
    if (tree.role[v] == Role::kBadWhisker) ++d.bad_whiskers;
  }
  std::vector<std::size_t> bad_children(tree.size(), 0);
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (tree.role[v] == Role::kBad) ++bad_children[tree.parent[v]];
  }
  d.max_bad_children =
      bad_children.empty()
          ? 0
          : *std::max_element(bad_children.begin(), bad_children.end());
  const auto bound =
      static_cast<std::size_t>(std::ceil(10.0 / state.params.delta));
  d.bad_children_bound = d.max_bad_children < bound;
}

}  // namespace

bool BuildBfsTree(const Graph& base, const ProtocolParams& params, Vertex root,
                  ConstructionState& state) {
  params.Validate();
  const std::size_t n = base.num_vertices();
  state.base = &base;
  state.params = params;
  state.diagnostics = PhaseDiagnostics{};
  state.diagnostics.root = root;
  state.diagnostics.phase_reached = "bfs";
  LabeledTree& tree = state.tree;
  tree = LabeledTree{};
  tree.root = root;
  tree.parent.assign(n, kNoVertex);
  tree.depth.assign(n, -1);
  tree.level.assign(n, 0);
  tree.role.assign(n, Role::kUnassigned);
  tree.lucky.assign(n, false);
  state.in_tree.assign(n, false);
  state.degree_class.assign(n, DegreeClass::kNone);
  state.attached_low.assign(n, 0);
  state.isolated.clear();

  tree.role[root] = Role::kRoot;
  tree.depth[root] = 0;
  state.in_tree[root] = true;
  std::size_t undiscovered = n - 1;
  const double stop_below =
      params.stop_rule ? params.delta * static_cast<double>(n) : 0.0;
  auto should_stop = [&] {
    return undiscovered == 0 || static_cast<double>(undiscovered) < stop_below;
  };

  std::deque<Vertex> queue{root};
  std::vector<Vertex> children;
  bool ok = true;
  while (!should_stop()) {
    if (queue.empty()) {
      state.diagnostics.queue_never_empty = false;
      // Practical mode keeps the partial tree; the repair pass places the
      // undiscovered vertices.
      if (params.mode == ProtocolMode::kPaperFaithful) {
        ok =
            state.Fail("premature stop: BFS queue emptied with " +
                       std::to_string(undiscovered) + " vertices undiscovered");
      }
      break;
    }
    const Vertex v = queue.front();
    queue.pop_front();
    children.clear();
    for (Vertex u : base.neighbors(v)) {
      if (!state.in_tree[u]) children.push_back(u);
    }
    for (Vertex u : children) {
      state.in_tree[u] = true;
      tree.parent[u] = v;
      tree.depth[u] = tree.depth[v] + 1;
    }
    undiscovered -= children.size();
    if (children.size() >= params.good_children_threshold) {
      if (v == root) {
        tree.root_good = true;
      } else {
        tree.role[v] = Role::kGood;
      }
      for (std::size_t i = 0; i < children.size(); ++i) {
        if (i < params.whisker_quota) {
          tree.role[children[i]] = Role::kGoodWhisker;
        } else {
          queue.push_back(children[i]);
        }
      }
    } else {
      if (v != root) tree.role[v] = Role::kBad;
      for (Vertex u : children) tree.role[u] = Role::kBadWhisker;
    }
  }
  for (Vertex u : queue) tree.role[u] = Role::kGoodWhisker;
  state.diagnostics.root_good = tree.root_good;
  FillPartitionDiagnostics(state);
  return ok;
}

bool ClassifyRemainder(ConstructionState& state) {
  const Graph& g = *state.base;
  LabeledTree& tree = state.tree;
  auto& d = state.diagnostics;
  d.phase_reached = "classify";
  const std::size_t n = g.num_vertices();
  const auto& params = state.params;

  for (std::size_t v = 0; v < n; ++v) {
    if (state.in_tree[v]) continue;
    std::size_t deg_t = 0;
    for (Vertex u : g.neighbors(static_cast<Vertex>(v)))
      deg_t += state.in_tree[u];
    DegreeClass c = DegreeClass::kMedium;
    if (deg_t <= params.low_degree_threshold) {
      c = DegreeClass::kLow;
      ++d.low_degree;
    } else if (deg_t >= params.high_degree_threshold) {
      c = DegreeClass::kHigh;
      ++d.high_degree;
    } else {
      ++d.medium_degree;
    }
    state.degree_class[v] = c;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<Vertex>(i);
    if (state.degree_class[i] != DegreeClass::kLow) continue;
    Vertex high_neighbor = kNoVertex;
    for (Vertex u : g.neighbors(v)) {
      if (!state.in_tree[u] && state.degree_class[u] == DegreeClass::kHigh) {
        high_neighbor = u;
        break;
      }
    }
    if (high_neighbor != kNoVertex) {
      tree.parent[v] = high_neighbor;
      tree.role[v] = Role::kDangerous;
      tree.role[high_neighbor] = Role::kDangerousParent;
      ++d.low_dangerous;
      continue;
    }
    bool saw_whisker = false;
    Vertex host = kNoVertex;
    for (Vertex u : g.neighbors(v)) {
      if (tree.role[u] != Role::kGoodWhisker) continue;
      saw_whisker = true;
      if (state.attached_low[tree.parent[u]] == 0) {
        host = u;
        break;
      }
    }
    if (host != kNoVertex) {
      tree.parent[v] = host;
      tree.role[v] = Role::kAttachedLow;
      ++state.attached_low[tree.parent[host]];
      ++d.low_attached;
      continue;
    }
    if (g.degree(v) == 0) {
      state.isolated.push_back(v);
      ++d.low_isolated;
      continue;
    }
    if (params.mode == ProtocolMode::kPractical) {
      Vertex medium_neighbor = kNoVertex;
      for (Vertex u : g.neighbors(v)) {
        if (!state.in_tree[u] &&
            state.degree_class[u] == DegreeClass::kMedium) {
          medium_neighbor = u;
          break;
        }
      }
      if (medium_neighbor != kNoVertex) {
        tree.parent[v] = medium_neighbor;
        tree.role[v] = Role::kDangerous;
        tree.role[medium_neighbor] = Role::kDangerousParent;
        ++d.low_dangerous;
        continue;
      }
    }
    d.parent_kinds = false;
    if (params.mode == ProtocolMode::kPractical) {
      ++d.deferred;
      continue;
    }
    return state.Fail(
        saw_whisker
            ? "low-degree parent rule: every good-whisker neighbor of "
              "low-degree "
              "vertex " +
                  V(v) +
                  " belongs to a good vertex that already has "
                  "an attached low-degree vertex"
            : "low-degree parent rule: low-degree vertex " + V(v) +
                  " has no high-degree neighbor in R and no good-whisker "
                  "neighbor in T");
  }
  d.isolated = state.isolated.size();
  return true;
}

bool AssignIsolatedParents(EdgeStream& stream, std::uint64_t k, std::uint64_t m,
                           ConstructionState& state) {
  LabeledTree& tree = state.tree;
  auto& d = state.diagnostics;
  d.phase_reached = "isolated";
  d.isolated = state.isolated.size();
  if (state.isolated.empty()) return true;
  std::vector<bool> still(tree.size(), false);
  for (Vertex v : state.isolated) still[v] = true;
  std::size_t remaining = state.isolated.size();

  // 0: good whisker, 1: high-degree R vertex, 2: medium-degree R vertex
  // (practical), 3: good vertex (practical), 4: bad vertex (practical);
  // -1: not allowed.
  const bool practical = state.params.mode == ProtocolMode::kPractical;
  auto rank = [&](Vertex x) -> int {
    if (still[x]) return -1;
    if (tree.role[x] == Role::kGoodWhisker) return 0;
    if (!state.in_tree[x] && (tree.role[x] == Role::kUnassigned ||
                              tree.role[x] == Role::kDangerousParent)) {
      if (state.degree_class[x] == DegreeClass::kHigh) return 1;
      if (practical && state.degree_class[x] == DegreeClass::kMedium) return 2;
    }
    if (practical && tree.IsGoodLike(x)) return 3;
    if (practical && tree.IsBadLike(x)) return 4;
    return -1;
  };
  auto describe = [&](Vertex x) {
    if (still[x]) return std::string("isolated vertex");
    return state.in_tree[x]
               ? std::string(RoleName(tree.role[x]))
               : std::string(DegreeClassName(state.degree_class[x])) +
                     "-degree vertex of R";
  };
  auto adopt = [&](Vertex v, Vertex x) {
    still[v] = false;
    --remaining;
    tree.parent[v] = x;
    if (rank(x) == 1 || rank(x) == 2) {
      tree.role[v] = Role::kDangerous;
      tree.role[x] = Role::kDangerousParent;
      ++d.isolated_to_high;
    } else {
      tree.role[v] = Role::kIsolatedChild;
      ++d.isolated_to_whisker;
    }
  };
  auto reject = [&](Vertex v, Vertex x) {
    d.isolated_parent_kinds = false;
    if (still[x]) {
      return state.Fail("isolated-isolated edge (" + V(std::min(v, x)) + "," +
                        V(std::max(v, x)) + ") in the process scan");
    }
    return state.Fail("isolated parent rule: parent " + V(x) +
                      " of isolated vertex " + V(v) + " is a " + describe(x));
  };

  if (!practical) {
    // The first edge touching v decides its parent.
    for (std::uint64_t i = k; i < m && remaining > 0; ++i) {
      const auto [a, b] = stream.edge(i);
      for (auto [v, x] : {std::pair{a, b}, std::pair{b, a}}) {
        if (!still[v]) continue;
        if (rank(x) < 0) return reject(v, x);
        adopt(v, x);
        break;
      }
    }
  } else {
    // Every edge of the window touching v is a candidate; the best kind wins,
    // earliest edge first among equals.
    std::vector<Vertex> best(tree.size(), kNoVertex);
    std::vector<Vertex> first(tree.size(), kNoVertex);
    for (std::uint64_t i = k; i < m; ++i) {
      const auto [a, b] = stream.edge(i);
      for (auto [v, x] : {std::pair{a, b}, std::pair{b, a}}) {
        if (!still[v]) continue;
        if (first[v] == kNoVertex) first[v] = x;
        const int r = rank(x);
        if (r >= 0 && (best[v] == kNoVertex || r < rank(best[v]))) best[v] = x;
      }
    }
    for (Vertex v : state.isolated) {
      if (best[v] != kNoVertex) {
        adopt(v, best[v]);
      } else if (first[v] != kNoVertex) {
        d.isolated_parent_kinds = false;
        ++d.deferred;
        still[v] = false;
        --remaining;
      }
    }
  }
  if (remaining > 0) {
    d.isolated_parent_kinds = false;
    return state.Fail(std::to_string(remaining) +
                      " isolated vertices received no edge by time M");
  }
  state.isolated.clear();
  return true;
}

std::vector<Vertex> MatchableRemainder(const ConstructionState& state) {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < state.in_tree.size(); ++v) {
    const auto c = state.degree_class[v];
    if (!state.in_tree[v] &&
        (c == DegreeClass::kHigh || c == DegreeClass::kMedium) &&
        state.tree.role[v] != Role::kDangerousParent) {
      out.push_back(static_cast<Vertex>(v));
    }
  }
  return out;
}

std::vector<Bucket> BuildBuckets(const ConstructionState& state) {
  const LabeledTree& tree = state.tree;
  const std::size_t n = tree.size();
  std::vector<bool> has_child(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (tree.parent[v] != kNoVertex) has_child[tree.parent[v]] = true;
  }
  std::vector<std::vector<Vertex>> free_whiskers(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (tree.role[v] == Role::kGoodWhisker && !has_child[v]) {
      free_whiskers[tree.parent[v]].push_back(static_cast<Vertex>(v));
    }
  }
  std::vector<Bucket> buckets;
  std::vector<Vertex> leftovers;
  for (const auto& list : free_whiskers) {
    std::size_t i = 0;
    for (; i + 1 < list.size(); i += 2)
      buckets.push_back({{list[i], list[i + 1]}});
    if (i < list.size()) leftovers.push_back(list[i]);
  }
  std::size_t i = 0;
  for (; i + 1 < leftovers.size(); i += 2) {
    buckets.push_back({{leftovers[i], leftovers[i + 1]}});
  }
  if (i < leftovers.size()) buckets.push_back({{leftovers[i], kNoVertex}});
  return buckets;
}

BucketMatching MatchToBuckets(const Graph& g, std::span<const Vertex> r_set,
                              std::span<const Bucket> buckets) {
  std::unordered_map<Vertex, int> bucket_of;
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    for (Vertex w : buckets[b].whiskers) {
      if (w != kNoVertex) bucket_of.emplace(w, static_cast<int>(b));
    }
  }
  BipartiteGraph bg(r_set.size(), buckets.size());
  for (std::size_t i = 0; i < r_set.size(); ++i) {
    auto& adj = bg.adjacency[i];
    for (Vertex u : g.neighbors(r_set[i])) {
      auto it = bucket_of.find(u);
      if (it != bucket_of.end()) adj.push_back(it->second);
    }
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  BucketMatching result;
  result.matching = MaximumBipartiteMatching(bg);
  result.saturates = result.matching.size == r_set.size();
  result.attach_to.assign(r_set.size(), kNoVertex);
  for (std::size_t i = 0; i < r_set.size(); ++i) {
    const int b = result.matching.left_to_right[i];
    if (b == Matching::kUnmatched) continue;
    for (Vertex w : buckets[b].whiskers) {
      if (w == kNoVertex || !g.HasEdge(r_set[i], w)) continue;
      if (result.attach_to[i] == kNoVertex || w < result.attach_to[i]) {
        result.attach_to[i] = w;
      }
    }
  }
  return result;
}

bool ConnectRemainder(ConstructionState& state) {
  const Graph& g = *state.base;
  LabeledTree& tree = state.tree;
  auto& d = state.diagnostics;
  d.phase_reached = "match";
  std::vector<Vertex> r_set = MatchableRemainder(state);
  d.r_set_size = r_set.size();
  for (Vertex v : r_set) {
    std::size_t whiskers = 0;
    for (Vertex u : g.neighbors(v))
      whiskers += tree.role[u] == Role::kGoodWhisker;
    if (whiskers < 2) ++d.fewer_than_two_whisker_neighbors;
  }
  d.two_good_whisker_neighbors = d.fewer_than_two_whisker_neighbors == 0;

  const std::vector<Bucket> buckets = BuildBuckets(state);
  d.buckets = buckets.size();
  BucketMatching bm = MatchToBuckets(g, r_set, buckets);
  d.matched = bm.matching.size;
  d.hall_matching_saturates = bm.saturates;
  while (!bm.saturates) {
    std::size_t rerouted = 0;
    if (state.params.mode == ProtocolMode::kPractical) {
      // Unmatched vertices hang below a neighbor in R instead, which then
      // becomes a dangerous parent and leaves the matching.
      for (std::size_t i = 0; i < r_set.size(); ++i) {
        if (bm.matching.left_to_right[i] != Matching::kUnmatched) continue;
        const Vertex v = r_set[i];
        if (tree.role[v] != Role::kUnassigned) continue;
        Vertex parent = kNoVertex;
        for (Vertex u : g.neighbors(v)) {
          if (state.in_tree[u] || state.degree_class[u] == DegreeClass::kLow) {
            continue;
          }
          if (tree.role[u] == Role::kDangerousParent) {
            parent = u;
            break;
          }
          if (tree.role[u] == Role::kUnassigned && parent == kNoVertex)
            parent = u;
        }
        if (parent == kNoVertex) continue;
        tree.parent[v] = parent;
        tree.role[v] = Role::kDangerous;
        tree.role[parent] = Role::kDangerousParent;
        ++rerouted;
      }
    }
    if (rerouted == 0 && state.params.mode == ProtocolMode::kPractical) {
      std::vector<Vertex> matched_only;
      BucketMatching kept;
      for (std::size_t i = 0; i < r_set.size(); ++i) {
        if (bm.matching.left_to_right[i] == Matching::kUnmatched) {
          ++d.deferred;
        } else {
          matched_only.push_back(r_set[i]);
          kept.attach_to.push_back(bm.attach_to[i]);
        }
      }
      r_set = std::move(matched_only);
      bm.attach_to = std::move(kept.attach_to);
      break;
    }
    if (rerouted == 0) {
      return state.Fail("Hall condition failed: matched " +
                        std::to_string(bm.matching.size) + " of " +
                        std::to_string(r_set.size()) + " vertices of R to " +
                        std::to_string(buckets.size()) + " buckets");
    }
    d.rerouted_to_dangerous += rerouted;
    std::erase_if(r_set,
                  [&](Vertex v) { return tree.role[v] != Role::kUnassigned; });
    bm = MatchToBuckets(g, r_set, buckets);
  }
  for (std::size_t i = 0; i < r_set.size(); ++i) {
    tree.parent[r_set[i]] = bm.attach_to[i];
    tree.role[r_set[i]] = Role::kAttachedR;
    tree.lucky[bm.attach_to[i]] = true;
  }
  d.lucky_whiskers = r_set.size();
  return true;
}

namespace {

// Depths from the root over parent links; false if some vertex is not
// reachable (missing parent or a cycle).
bool ComputeDepths(LabeledTree& tree,
                   const std::vector<std::vector<Vertex>>& children) {
  std::fill(tree.depth.begin(), tree.depth.end(), -1);
  std::deque<Vertex> queue{tree.root};
  tree.depth[tree.root] = 0;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex c : children[v]) {
      if (tree.depth[c] >= 0) return false;
      tree.depth[c] = tree.depth[v] + 1;
      ++reached;
      queue.push_back(c);
    }
  }
  return reached == tree.size();
}

bool IsLeaf(const std::vector<std::vector<Vertex>>& children, Vertex v) {
  return children[v].empty();
}

// Weight a vertex must reach to outweigh all of its children when it may
// pull from a child only once it is at least as heavy as that child's own
// gathering target; an unlocked child then yields its whole subtree. `kids`
// is sorted by ascending target. Returns 0 when the vertex gets stuck.
std::int64_t GatherTarget(std::span<const Vertex> kids,
                          const std::vector<std::int64_t>& target,
                          const std::vector<std::int64_t>& size) {
  if (kids.empty()) return 1;
  const std::int64_t heaviest = target[kids.back()];
  std::int64_t w = 1;
  std::int64_t pool = 0;
  std::size_t unlocked = 0;
  while (w <= heaviest) {
    while (unlocked < kids.size() && target[kids[unlocked]] <= w) {
      pool += size[kids[unlocked++]];
    }
    if (pool == 0) return 0;
    const std::int64_t next =
        unlocked < kids.size() ? target[kids[unlocked]] : heaviest + 1;
    const std::int64_t take =
        std::min(pool, std::max<std::int64_t>(next - w, 1));
    w += take;
    pool -= take;
  }
  return w;
}

}  // namespace

bool AttachDangerousParents(ConstructionState& state) {
  const Graph& g = *state.base;
  LabeledTree& tree = state.tree;
  auto& d = state.diagnostics;
  d.phase_reached = "dangerous";
  const std::size_t n = tree.size();
  std::vector<int> hosted(n, 0);
  std::vector<bool> hosts_leaf(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Vertex p = tree.parent[i];
    if (p != kNoVertex && tree.role[i] != Role::kDangerousParent) {
      hosts_leaf[p] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (tree.role[i] == Role::kDangerous) ++d.dangerous_vertices;
    if (tree.role[i] != Role::kDangerousParent) continue;
    const auto v = static_cast<Vertex>(i);
    ++d.dangerous_parents;
    Vertex best = kNoVertex;
    for (Vertex u : g.neighbors(v)) {
      if (!tree.lucky[u]) continue;
      if (best == kNoVertex || hosted[u] < hosted[best]) best = u;
    }
    if (best == kNoVertex && state.params.mode == ProtocolMode::kPractical) {
      // Any good whisker that pulls a leaf child in stage 3 reaches weight 2
      // and can host the parent just like a lucky one.
      for (Vertex u : g.neighbors(v)) {
        if (tree.role[u] != Role::kGoodWhisker || !hosts_leaf[u]) continue;
        if (best == kNoVertex || hosted[u] < hosted[best]) best = u;
      }
    }
    if (best == kNoVertex) {
      d.dangerous_parents_attached = false;
      if (state.params.mode == ProtocolMode::kPractical) {
        ++d.deferred;
        continue;
      }
      return state.Fail("dangerous parent rule: dangerous parent " + V(v) +
                        " has no lucky-whisker neighbor");
    }
    if (hosted[best] > 0) ++d.dangerous_parents_shared;
    ++hosted[best];
    tree.parent[v] = best;
  }
  return true;
}

namespace {

// A growing rooted tree that keeps, for every vertex, its subtree size and
// gathering target, and rejects any change after which some vertex gets
// stuck. Changes are journaled so that a rejected one can be undone.
class GatherGrowth {
 public:
  GatherGrowth(std::size_t n, Vertex root)
      : parent_(n, kNoVertex),
        children_(n),
        depth_(n, 0),
        size_(n, 1),
        target_(n, 1),
        placed_(n, false),
        root_(root) {
    placed_[root] = true;
  }

  bool placed(Vertex v) const { return placed_[v]; }
  bool is_leaf(Vertex v) const { return v != root_ && children_[v].empty(); }
  const std::vector<Vertex>& children(Vertex v) const { return children_[v]; }
  const std::vector<Vertex>& parents() const { return parent_; }
  Vertex root() const { return root_; }
  int depth(Vertex v) const { return depth_[v]; }

  std::size_t Mark() const { return journal_.size(); }

  void Rollback(std::size_t mark) {
    while (journal_.size() > mark) {
      Entry& e = journal_.back();
      switch (e.kind) {
        case Entry::kSize:
          size_[e.v] = e.value;
          break;
        case Entry::kTarget:
          target_[e.v] = e.value;
          break;
        case Entry::kDepth:
          depth_[e.v] = static_cast<int>(e.value);
          break;
        case Entry::kChildren:
          children_[e.v] = std::move(e.kids);
          break;
        case Entry::kParent:
          parent_[e.v] = static_cast<Vertex>(e.value);
          placed_[e.v] = e.was_placed;
          break;
      }
      journal_.pop_back();
    }
  }

  // Hangs `group` (unplaced vertices) as leaves below x. Returns the first
  // vertex that gets stuck, or kNoVertex; the caller rolls back on failure.
  Vertex Attach(Vertex x, std::span<const Vertex> group) {
    SaveChildren(x);
    for (Vertex u : group) {
      SetParent(u, x);
      children_[x].push_back(u);
      depth_[u] = depth_[x] + 1;
    }
    AddSize(x, static_cast<std::int64_t>(group.size()));
    return Refresh(x, kNoVertex);
  }

  // Re-evaluates every placed vertex.
  Vertex CheckAll() {
    all_.clear();
    for (std::size_t v = 0; v < placed_.size(); ++v) {
      if (placed_[v]) all_.push_back(static_cast<Vertex>(v));
    }
    return Evaluate(all_);
  }

  // True if a lies in the subtree of z.
  bool InSubtree(Vertex a, Vertex z) const {
    for (; a != kNoVertex; a = parent_[a]) {
      if (a == z) return true;
    }
    return false;
  }

  // Moves the subtree of z below y, which must lie outside it.
  Vertex MoveSubtree(Vertex z, Vertex y) {
    const Vertex p = parent_[z];
    SaveChildren(p);
    auto& siblings = children_[p];
    siblings.erase(std::find(siblings.begin(), siblings.end(), z));
    AddSize(p, -size_[z]);
    SaveChildren(y);
    children_[y].push_back(z);
    SetParent(z, y);
    AddSize(y, size_[z]);
    stack_.assign(1, z);
    while (!stack_.empty()) {
      const Vertex x = stack_.back();
      stack_.pop_back();
      journal_.push_back({Entry::kDepth, x, depth_[x], false, {}});
      depth_[x] = depth_[parent_[x]] + 1;
      stack_.insert(stack_.end(), children_[x].begin(), children_[x].end());
    }
    return Refresh(p, y);
  }

 private:
  struct Entry {
    enum Kind { kSize, kTarget, kDepth, kChildren, kParent } kind;
    Vertex v;
    std::int64_t value = 0;
    bool was_placed = false;
    std::vector<Vertex> kids;
  };

  void SaveChildren(Vertex v) {
    journal_.push_back({Entry::kChildren, v, 0, false, children_[v]});
  }
  void SetParent(Vertex u, Vertex p) {
    journal_.push_back({Entry::kParent, u, parent_[u], placed_[u], {}});
    parent_[u] = p;
    placed_[u] = true;
  }
  void AddSize(Vertex x, std::int64_t delta) {
    for (Vertex y = x; y != kNoVertex; y = parent_[y]) {
      journal_.push_back({Entry::kSize, y, size_[y], false, {}});
      size_[y] += delta;
    }
  }

  // Re-evaluates the targets on the paths from a and b to the root, deepest
  // first.
  Vertex Refresh(Vertex a, Vertex b) {
    path_.clear();
    for (Vertex y = a; y != kNoVertex; y = parent_[y]) path_.push_back(y);
    for (Vertex y = b; y != kNoVertex; y = parent_[y]) path_.push_back(y);
    return Evaluate(path_);
  }

  // Re-evaluates the given vertices deepest first. A stuck vertex gets an
  // unreachable target so that the evaluation can go on; returns the first.
  Vertex Evaluate(std::vector<Vertex>& vertices) {
    std::sort(vertices.begin(), vertices.end(), [&](Vertex u, Vertex v) {
      return depth_[u] != depth_[v] ? depth_[u] > depth_[v] : u < v;
    });
    vertices.erase(std::unique(vertices.begin(), vertices.end()),
                   vertices.end());
    Vertex stuck = kNoVertex;
    for (Vertex y : vertices) {
      kids_ = children_[y];
      std::stable_sort(kids_.begin(), kids_.end(), [&](Vertex u, Vertex v) {
        return target_[u] < target_[v];
      });
      std::int64_t t = GatherTarget(kids_, target_, size_);
      if (t == 0) {
        if (stuck == kNoVertex) stuck = y;
        t = kUnreachable;
      }
      if (t != target_[y]) {
        journal_.push_back({Entry::kTarget, y, target_[y], false, {}});
        target_[y] = t;
      }
    }
    return stuck;
  }

  static constexpr std::int64_t kUnreachable =
      std::numeric_limits<std::int64_t>::max() / 4;

  std::vector<Vertex> parent_;
  std::vector<std::vector<Vertex>> children_;
  std::vector<int> depth_;
  std::vector<std::int64_t> size_;
  std::vector<std::int64_t> target_;
  std::vector<bool> placed_;
  Vertex root_;
  std::vector<Entry> journal_;
  std::vector<Vertex> path_;
  std::vector<Vertex> kids_;
  std::vector<Vertex> stack_;
  std::vector<Vertex> all_;
};

// Attaches group below x. If some vertex f gets stuck, tries in turn: giving
// f a leaf taken from one of its neighbors, moving x with its new leaves to
// another neighbor, and moving the branch of f that holds x elsewhere.
bool AttachWithRepair(const Graph& g, GatherGrowth& tree, Vertex x,
                      std::span<const Vertex> group) {
  const std::size_t mark = tree.Mark();
  const Vertex stuck = tree.Attach(x, group);
  if (stuck == kNoVertex) return true;
  tree.Rollback(mark);
  std::vector<Vertex> evicted;
  for (Vertex z : g.neighbors(stuck)) {
    if (z == x || z == tree.root() || !tree.placed(z) ||
        tree.parents()[z] == stuck || tree.InSubtree(stuck, z)) {
      continue;
    }
    // An internal donor first hands its children to other neighbors.
    evicted = tree.children(z);
    bool rehung = true;
    for (Vertex c : evicted) {
      Vertex host = kNoVertex;
      for (Vertex y : g.neighbors(c)) {
        if (y == z || !tree.placed(y) || tree.InSubtree(y, c)) continue;
        if (host == kNoVertex || (tree.is_leaf(host) && !tree.is_leaf(y))) {
          host = y;
        }
      }
      if (host == kNoVertex) {
        rehung = false;
        break;
      }
      tree.MoveSubtree(c, host);
    }
    if (rehung) {
      tree.MoveSubtree(z, stuck);
      tree.Attach(x, group);
      if (tree.CheckAll() == kNoVertex) return true;
    }
    tree.Rollback(mark);
  }
  if (x == tree.root()) return false;
  Vertex branch = x;
  while (tree.parents()[branch] != stuck &&
         tree.parents()[branch] != kNoVertex) {
    branch = tree.parents()[branch];
  }
  std::vector<Vertex> movable{x};
  if (branch != x && branch != tree.root()) movable.push_back(branch);
  for (Vertex moved : movable) {
    for (Vertex y : g.neighbors(moved)) {
      if (!tree.placed(y) || y == tree.parents()[moved] ||
          tree.InSubtree(y, moved)) {
        continue;
      }
      tree.Attach(x, group);
      tree.MoveSubtree(moved, y);
      if (tree.CheckAll() == kNoVertex) return true;
      tree.Rollback(mark);
    }
  }
  return false;
}

}  // namespace

bool RegrowForEmission(const Graph& g, ConstructionState& state) {
  LabeledTree& tree = state.tree;
  auto& d = state.diagnostics;
  d.phase_reached = "regrow";
  const std::size_t n = tree.size();
  GatherGrowth grown(n, tree.root);
  std::size_t unplaced = n - 1;
  auto unplaced_neighbors = [&](Vertex x) {
    std::size_t count = 0;
    for (Vertex u : g.neighbors(x)) count += !grown.placed(u);
    return count;
  };
  // Most unplaced neighbors first, one point off per level of depth, then
  // lowest index.
  using Key = std::tuple<std::int64_t, std::size_t, Vertex>;
  auto key = [&](Vertex x, std::size_t count) {
    return Key(static_cast<std::int64_t>(count) - grown.depth(x), count,
               static_cast<Vertex>(n - 1 - x));
  };

  // A tree vertex takes all of its unplaced neighbors as leaves at once, so
  // internal vertices stay few and keep many leaves.
  std::vector<Vertex> group;
  for (bool progress = true; unplaced > 0 && progress;) {
    progress = false;
    std::priority_queue<Key> heap;
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = static_cast<Vertex>(i);
      if (!grown.placed(x)) continue;
      if (const std::size_t c = unplaced_neighbors(x); c > 0) {
        heap.push(key(x, c));
      }
    }
    while (!heap.empty()) {
      const auto [priority, count, inverse] = heap.top();
      heap.pop();
      const auto x = static_cast<Vertex>(n - 1 - inverse);
      const std::size_t now = unplaced_neighbors(x);
      if (now == 0) continue;
      if (now != count) {
        heap.push(key(x, now));
        continue;
      }
      group.clear();
      for (Vertex u : g.neighbors(x)) {
        if (!grown.placed(u)) group.push_back(u);
      }
      if (!AttachWithRepair(g, grown, x, group)) continue;
      unplaced -= group.size();
      progress = true;
      for (Vertex u : group) {
        if (const std::size_t c = unplaced_neighbors(u); c > 0) {
          heap.push(key(u, c));
        }
      }
    }
  }
  if (unplaced > 0) {
    d.leaf_reservoir = false;
    return state.Fail("leaf reservoir exhausted: " + std::to_string(unplaced) +
                      " vertices cannot be hung without blocking the "
                      "gathering");
  }
  const auto& parent = grown.parents();
  for (std::size_t i = 0; i < n; ++i) {
    if (parent[i] == tree.parent[i]) continue;
    ++d.repaired;
    if (tree.role[i] == Role::kUnassigned) tree.role[i] = Role::kRepaired;
  }
  tree.parent = parent;
  return true;
}

bool FinalizeTree(ConstructionState& state) {
  LabeledTree& tree = state.tree;
  auto& d = state.diagnostics;
  const std::size_t n = tree.size();
  d.phase_reached = "audit";
  const auto children = tree.Children();
  d.spanning = ComputeDepths(tree, children);
  if (!d.spanning) {
    return state.Fail("parent links do not form a spanning tree");
  }
  int max_t_depth = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (state.in_tree[v]) max_t_depth = std::max(max_t_depth, tree.depth[v]);
  }
  std::vector<Vertex> by_depth(n);
  std::iota(by_depth.begin(), by_depth.end(), Vertex{0});
  std::stable_sort(by_depth.begin(), by_depth.end(), [&](Vertex a, Vertex b) {
    return tree.depth[a] < tree.depth[b];
  });
  for (Vertex v : by_depth) {
    if (state.in_tree[v]) {
      tree.level[v] = 3 + max_t_depth - tree.depth[v];
    } else {
      tree.level[v] = std::max(1, tree.level[tree.parent[v]] - 1);
    }
  }

  // Structural audit: root on top, good vertices on levels >= 4, bad vertices
  // are leaves or have only leaf children, every R vertex within distance 2
  // of a good whisker.
  bool ok = true;
  const int top = *std::max_element(tree.level.begin(), tree.level.end());
  ok = ok && tree.level[tree.root] == top;
  for (std::size_t i = 0; i < n && ok; ++i) {
    const auto v = static_cast<Vertex>(i);
    if (tree.role[i] == Role::kRepaired) ok = false;
    if (tree.IsGoodLike(v) && !children[v].empty()) ok = tree.level[v] >= 4;
    if (ok && tree.IsBadLike(v)) {
      for (Vertex c : children[v]) ok = ok && IsLeaf(children, c);
    }
    if (ok && !state.in_tree[i]) {
      const Vertex p = tree.parent[v];
      const bool near = tree.role[p] == Role::kGoodWhisker ||
                        (tree.parent[p] != kNoVertex &&
                         tree.role[tree.parent[p]] == Role::kGoodWhisker);
      ok = near;
    }
  }
  d.structure_ok = ok;
  return true;
}

IntTrace PumpToRoot(const Graph& g, Vertex root, std::span<const Vertex> parent,
                    IntConfig& config) {
  const std::size_t n = parent.size();
  std::vector<int> depth(n, -1);
  depth[root] = 0;
  std::vector<Vertex> path;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = static_cast<Vertex>(i);
    path.clear();
    while (depth[v] < 0) {
      path.push_back(v);
      v = parent[v];
      if (v == kNoVertex || path.size() > n) {
        throw std::invalid_argument("parent links do not reach the root");
      }
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      depth[*it] = depth[parent[*it]] + 1;
    }
  }
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return depth[a] > depth[b]; });
  IntTrace trace;
  for (Vertex x : order) {
    if (x == root) continue;
    while (config[x] > 0) {
      for (Vertex cur = x; cur != root; cur = parent[cur]) {
        const IntMove mv{MoveKind::kUnit, cur, parent[cur], 1};
        ApplyMoveInPlace(g, config, mv);
        trace.push_back(mv);
      }
    }
  }
  return trace;
}

namespace {

// Applies and records unit moves; an illegal move here is a bug.
struct Emitter {
  const Graph& g;
  IntConfig config;
  IntTrace& trace;

  void Move(Vertex from, Vertex to) {
    const IntMove mv{MoveKind::kUnit, from, to, 1};
    try {
      ApplyMoveInPlace(g, config, mv);
    } catch (const IllegalMoveError& e) {
      throw std::logic_error("internal error: emitted " +
                             std::string(e.what()) + " on " + V(from) + "->" +
                             V(to));
    }
    trace.push_back(mv);
  }
};

// Stages 1-4 with the fixed schedule: good vertices on level k pull k - 1
// leaves, bad vertices and good whiskers pull one leaf, dangerous parents
// relay one unit to their whisker.
bool EmitFixedStages(const LabeledTree& tree,
                     const std::vector<std::vector<Vertex>>& children,
                     Emitter& em, EmissionResult& result) {
  const std::size_t n = tree.size();
  auto leaf_children = [&](Vertex v) {
    std::vector<Vertex> leaves;
    for (Vertex c : children[v]) {
      if (children[c].empty()) leaves.push_back(c);
    }
    return leaves;
  };

  std::vector<Vertex> good;
  for (std::size_t i = 0; i < n; ++i) {
    if (tree.IsGoodLike(static_cast<Vertex>(i)))
      good.push_back(static_cast<Vertex>(i));
  }
  std::stable_sort(good.begin(), good.end(), [&](Vertex a, Vertex b) {
    return tree.depth[a] > tree.depth[b];
  });
  std::vector<std::int64_t> pulls_needed(n, 0);
  for (Vertex v : good) {
    if (children[v].empty()) continue;
    const auto leaves = leaf_children(v);
    const std::int64_t need = tree.level[v] - 1;
    if (need > static_cast<std::int64_t>(leaves.size())) {
      result.leaf_reservoir = false;
      result.failure = "leaf reservoir exhausted: vertex " + V(v) +
                       " on level " + std::to_string(tree.level[v]) +
                       " needs " + std::to_string(need) +
                       " leaf children, has " + std::to_string(leaves.size());
      return false;
    }
    pulls_needed[v] = need;
  }

  // Stage 1: good vertices.
  std::vector<Vertex> good_by_index = good;
  std::sort(good_by_index.begin(), good_by_index.end());
  for (Vertex v : good_by_index) {
    const auto leaves = leaf_children(v);
    for (std::int64_t j = 0; j < pulls_needed[v]; ++j) {
      em.Move(leaves[j], v);
    }
  }
  // Stage 2: bad vertices with a leaf child.
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<Vertex>(i);
    if (!tree.IsBadLike(v)) continue;
    const auto leaves = leaf_children(v);
    if (!leaves.empty()) em.Move(leaves.front(), v);
  }
  // Stage 3: good whiskers with a leaf child.
  for (std::size_t i = 0; i < n; ++i) {
    if (tree.role[i] != Role::kGoodWhisker) continue;
    const auto leaves = leaf_children(static_cast<Vertex>(i));
    if (!leaves.empty()) em.Move(leaves.front(), static_cast<Vertex>(i));
  }
  // Stage 4: dangerous parents.
  for (std::size_t i = 0; i < n; ++i) {
    if (tree.role[i] != Role::kDangerousParent) continue;
    const auto v = static_cast<Vertex>(i);
    std::vector<Vertex> dangerous;
    for (Vertex c : children[v]) {
      if (tree.role[c] == Role::kDangerous && children[c].empty()) {
        dangerous.push_back(c);
      }
    }
    if (dangerous.empty()) continue;
    em.Move(dangerous[0], v);
    em.Move(v, tree.parent[v]);
    if (dangerous.size() >= 2) em.Move(dangerous[1], v);
  }

  return true;
}

// Practical schedule. Children are brought to their own target weights
// first. A vertex of current weight w may pull a unit from any child whose
// weight is at most w; the child then restores strictness below it by
// pulling from an equal-weight child of its own, and so on down. So once a
// child is unlocked its whole subtree is available, and the planner unlocks
// children in increasing order of target weight until the vertex outweighs
// every child. In the all-leaf case this is exactly the one-leaf pull.
class ExtractionPlanner {
 public:
  ExtractionPlanner(const LabeledTree& tree,
                    const std::vector<std::vector<Vertex>>& children)
      : tree_(tree), children_(children), n_(tree.size()) {}

  // Returns the first infeasible vertex, or kNoVertex.
  Vertex Plan() {
    size_.assign(n_, 1);
    target_.assign(n_, 1);
    sorted_.assign(n_, {});
    std::vector<Vertex> order(n_);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return tree_.depth[a] > tree_.depth[b];
    });
    for (Vertex v : order) {
      auto& kids = sorted_[v];
      kids = children_[v];
      if (kids.empty()) continue;
      for (Vertex c : kids) size_[v] += size_[c];
      std::stable_sort(kids.begin(), kids.end(), [&](Vertex a, Vertex b) {
        return target_[a] < target_[b];
      });
      target_[v] = GatherTarget(kids, target_, size_);
      if (target_[v] == 0) return v;
    }
    return kNoVertex;
  }

  void Emit(Emitter& em) const {
    std::vector<Vertex> order(n_);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return tree_.depth[a] > tree_.depth[b];
    });
    for (Vertex v : order) {
      std::size_t next = 0;
      const auto& kids = sorted_[v];
      while (em.config[v] < target_[v]) {
        // The lightest-target child that still holds weight and is unlocked.
        while (next < kids.size() && em.config[kids[next]] == 0) ++next;
        const Vertex c = kids.at(next);
        PullWithCascade(v, c, em);
      }
    }
  }

 private:
  void PullWithCascade(Vertex v, Vertex c, Emitter& em) const {
    em.Move(c, v);
    for (Vertex x = c; x != kNoVertex;) {
      Vertex tied = kNoVertex;
      for (Vertex y : children_[x]) {
        if (em.config[y] > 0 && em.config[y] == em.config[x]) {
          tied = y;
          break;
        }
      }
      if (tied != kNoVertex) em.Move(tied, x);
      x = tied;
    }
  }

  const LabeledTree& tree_;
  const std::vector<std::vector<Vertex>>& children_;
  std::size_t n_;
  std::vector<std::int64_t> size_;
  std::vector<std::int64_t> target_;
  std::vector<std::vector<Vertex>> sorted_;
};

}  // namespace

EmissionResult EmitGatheringProtocol(const Graph& g, const LabeledTree& tree,
                                     ProtocolMode mode) {
  EmissionResult result;
  const std::size_t n = tree.size();
  const auto children = tree.Children();
  Emitter em{g, IntConfig::AllOnes(n), result.trace};
  if (mode == ProtocolMode::kPractical) {
    ExtractionPlanner planner(tree, children);
    const Vertex stuck = planner.Plan();
    if (stuck != kNoVertex) {
      result.leaf_reservoir = false;
      result.failure = "leaf reservoir exhausted: vertex " + V(stuck) +
                       " cannot outweigh its heaviest child";
      return result;
    }
    planner.Emit(em);
  } else if (!EmitFixedStages(tree, children, em, result)) {
    return result;
  }

  // Monotone audit: every positive child is strictly lighter than its parent.
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = static_cast<Vertex>(i);
    if (v == tree.root || em.config[v] == 0) continue;
    const Vertex p = tree.parent[v];
    if (em.config[p] <= em.config[v]) {
      result.failure = "monotone audit failed on tree edge " + V(p) + "-" +
                       V(v) + " (weights " + std::to_string(em.config[p]) +
                       " <= " + std::to_string(em.config[v]) + ")";
      return result;
    }
  }
  result.monotone_audit = true;
  try {
    IntTrace pump = PumpToRoot(g, tree.root, tree.parent, em.config);
    result.trace.insert(result.trace.end(), pump.begin(), pump.end());
  } catch (const IllegalMoveError& e) {
    throw std::logic_error(std::string("internal error: pumping emitted ") +
                           e.what());
  }
  result.ok = true;
  return result;
}

std::vector<Vertex> RootCandidates(const Graph& base) {
  const auto components = ConnectedComponents(base);
  std::size_t best = 0;
  for (std::size_t i = 1; i < components.size(); ++i) {
    if (components[i].size() > components[best].size()) best = i;
  }
  std::vector<Vertex> order =
      components.empty() ? std::vector<Vertex>{} : components[best];
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return base.degree(a) > base.degree(b);
  });
  return order;
}

ConstructionResult Construct(const Graph& final_graph, EdgeStream& stream,
                             std::uint64_t k, std::uint64_t m,
                             const ProtocolParams& params) {
  params.Validate();
  const std::size_t n = final_graph.num_vertices();
  ConstructionResult result;
  if (n == 0) throw std::invalid_argument("construct needs a nonempty graph");
  if (n == 1) {
    result.success = true;
    result.root = 0;
    result.attempts = 1;
    result.tree.root = 0;
    result.tree.parent = {kNoVertex};
    result.tree.depth = {0};
    result.tree.level = {3};
    result.tree.role = {Role::kRoot};
    result.tree.lucky = {false};
    result.diagnostics.root = 0;
    result.diagnostics.phase_reached = "done";
    result.diagnostics.spanning = result.diagnostics.structure_ok = true;
    result.diagnostics.monotone_audit = true;
    result.diagnostics.tree_size = 1;
    result.residual_size = 1;
    result.root_weight = 1;
    return result;
  }
  const std::uint64_t base_length = std::min(k, m);
  const Graph base = stream.PrefixGraph(base_length);
  const std::vector<Vertex> roots = RootCandidates(base);
  const std::size_t attempts =
      std::min<std::size_t>(roots.size(), params.max_retries + 1);

  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    ConstructionState state;
    result.attempts = attempt + 1;
    result.retries_used = attempt;
    result.root = roots[attempt];
    bool ok = BuildBfsTree(base, params, roots[attempt], state) &&
              ClassifyRemainder(state) &&
              AssignIsolatedParents(stream, base_length, m, state) &&
              ConnectRemainder(state) && AttachDangerousParents(state) &&
              (params.mode == ProtocolMode::kPaperFaithful ||
               RegrowForEmission(final_graph, state)) &&
              FinalizeTree(state);
    if (ok) {
      state.diagnostics.phase_reached = "emit";
      for (std::size_t v = 0; v < n && ok; ++v) {
        const Vertex p = state.tree.parent[v];
        if (p != kNoVertex && !final_graph.HasEdge(static_cast<Vertex>(v), p)) {
          ok =
              state.Fail("tree edge " + V(p) + "-" + V(static_cast<Vertex>(v)) +
                         " is not an edge of G(n,M)");
        }
      }
    }
    if (ok) {
      EmissionResult emitted =
          EmitGatheringProtocol(final_graph, state.tree, params.mode);
      state.diagnostics.leaf_reservoir = emitted.leaf_reservoir;
      state.diagnostics.monotone_audit = emitted.monotone_audit;
      if (!emitted.ok) {
        ok = state.Fail(emitted.failure);
      } else {
        state.diagnostics.phase_reached = "verify";
        state.diagnostics.trace_length = emitted.trace.size();
        try {
          const IntConfig end = Replay<std::int64_t>(
              final_graph, IntConfig::AllOnes(n), emitted.trace);
          const auto support = ResidualSupport(end);
          result.residual_size = support.size();
          result.root_weight = end[state.tree.root];
          if (support.size() != 1 || support[0] != state.tree.root ||
              end[state.tree.root] != static_cast<std::int64_t>(n)) {
            ok = state.Fail("replay did not gather all weight at the root");
          }
        } catch (const ReplayError& e) {
          ok =
              state.Fail(std::string("replay rejected the trace: ") + e.what());
        }
        if (ok) result.trace = std::move(emitted.trace);
      }
    }
    result.tree = std::move(state.tree);
    result.diagnostics = std::move(state.diagnostics);
    if (ok) {
      result.diagnostics.phase_reached = "done";
      result.success = true;
      return result;
    }
  }
  result.success = false;
  return result;
}

std::string DiagnosticsToJson(const PhaseDiagnostics& d) {
  nlohmann::ordered_json j;
  j["root"] = d.root;
  j["phase_reached"] = d.phase_reached;
  j["failure_reason"] =
      d.failure_reason ? nlohmann::ordered_json(*d.failure_reason) : nullptr;
  j["root_good"] = d.root_good;
  j["bad_children_bound"] = d.bad_children_bound;
  j["max_bad_children"] = d.max_bad_children;
  j["queue_never_empty"] = d.queue_never_empty;
  j["partition_sizes"] = {{"T", d.tree_size},
                          {"R", d.remainder_size},
                          {"good_vertices", d.good_vertices},
                          {"bad_vertices", d.bad_vertices},
                          {"good_whiskers", d.good_whiskers},
                          {"bad_whiskers", d.bad_whiskers},
                          {"height", d.tree_height}};
  j["low_degree_counts"] = {{"high", d.high_degree},
                            {"medium", d.medium_degree},
                            {"low", d.low_degree}};
  j["parent_kinds"] = {{"ok", d.parent_kinds},
                       {"dangerous", d.low_dangerous},
                       {"attached_low", d.low_attached},
                       {"isolated", d.low_isolated}};
  j["two_good_whisker_neighbors"] = {
      {"ok", d.two_good_whisker_neighbors},
      {"violations", d.fewer_than_two_whisker_neighbors}};
  j["isolated_parent_kinds"] = {{"ok", d.isolated_parent_kinds},
                                {"isolated", d.isolated},
                                {"to_good_whisker", d.isolated_to_whisker},
                                {"to_high_degree", d.isolated_to_high}};
  j["hall_matching_saturates"] = {{"ok", d.hall_matching_saturates},
                                  {"R_set", d.r_set_size},
                                  {"buckets", d.buckets},
                                  {"matched", d.matched},
                                  {"lucky", d.lucky_whiskers},
                                  {"rerouted", d.rerouted_to_dangerous}};
  j["deferred"] = d.deferred;
  j["repaired"] = d.repaired;
  j["dangerous_parents_attached"] = {{"ok", d.dangerous_parents_attached},
                                     {"parents", d.dangerous_parents},
                                     {"dangerous", d.dangerous_vertices},
                                     {"shared", d.dangerous_parents_shared}};
  j["spanning"] = d.spanning;
  j["structure_ok"] = d.structure_ok;
  j["leaf_reservoir"] = d.leaf_reservoir;
  j["monotone_audit"] = d.monotone_audit;
  j["trace_length"] = d.trace_length;
  return j.dump();
}

void WriteTreeDot(const LabeledTree& tree, std::ostream& out) {
  out << "digraph T {\n  rankdir=BT;\n";
  for (std::size_t v = 0; v < tree.size(); ++v) {
    out << "  " << v << " [label=\"" << v << "\\n"
        << RoleName(tree.role[v]) << (tree.lucky[v] ? " (lucky)" : "")
        << "\\nlevel " << tree.level[v] << "\"];\n";
  }
  for (std::size_t v = 0; v < tree.size(); ++v) {
    if (tree.parent[v] != kNoVertex) {
      out << "  " << v << " -> " << tree.parent[v] << ";\n";
    }
  }
  out << "}\n";
}

}  // namespace acq
