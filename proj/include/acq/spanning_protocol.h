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

#ifndef ACQ_SPANNING_PROTOCOL_H_
#define ACQ_SPANNING_PROTOCOL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acq/acquisition.h"
#include "acq/graph.h"
#include "acq/matching.h"
#include "acq/random_process.h"

namespace acq {

enum class ProtocolMode { kPaperFaithful, kPractical };

std::string_view ProtocolModeName(ProtocolMode mode);
ProtocolMode ParseProtocolMode(std::string_view text);

// Thresholds are evaluated for a concrete n by the two factories.
struct ProtocolParams {
  double delta = 0.06;
  std::size_t good_children_threshold = 2;
  std::size_t whisker_quota = 1;
  std::size_t high_degree_threshold = 1;  // deg_T(v) >= this: high degree
  std::size_t low_degree_threshold = 0;   // deg_T(v) <= this: low degree
  ProtocolMode mode = ProtocolMode::kPractical;
  std::size_t max_retries = 0;
  // When false the BFS only stops once every vertex is discovered (toy
  // instances).
  bool stop_rule = true;

  // delta = 0.06 and the asymptotic thresholds (delta/2) ln n,
  // (delta/4) ln n, ((1 - delta)/1.01) ln n and ceil(10/delta).
  static ProtocolParams PaperFaithful(std::size_t n);
  // Same case structure with thresholds rescaled for n in the thousands.
  static ProtocolParams Practical(std::size_t n);
  static ProtocolParams ForMode(ProtocolMode mode, std::size_t n);

  // Throws std::invalid_argument on out-of-range values.
  void Validate() const;
};

enum class Role {
  kUnassigned,
  kRoot,
  kGood,
  kBad,
  kGoodWhisker,
  kBadWhisker,
  kAttachedLow,      // low-degree vertex of R hung under a good whisker
  kAttachedR,        // matched high/medium vertex of R under a lucky whisker
  kDangerous,        // low-degree or formerly isolated vertex with parent in R
  kDangerousParent,  // high-degree vertex of R that is a dangerous parent
  kIsolatedChild,    // formerly isolated vertex hung under a vertex of T
  kRepaired,         // placed by the practical repair pass
};

std::string_view RoleName(Role role);

enum class DegreeClass { kNone, kHigh, kMedium, kLow };

std::string_view DegreeClassName(DegreeClass c);

struct LabeledTree {
  Vertex root = kNoVertex;
  bool root_good = false;
  std::vector<Vertex> parent;  // kNoVertex for the root and unattached
  std::vector<int> depth;      // -1 until attached
  std::vector<int> level;
  std::vector<Role> role;
  std::vector<bool> lucky;

  std::size_t size() const { return parent.size(); }
  std::vector<std::vector<Vertex>> Children() const;
  // Behaves as a good vertex in the protocol (good vertices and a good root).
  bool IsGoodLike(Vertex v) const;
  bool IsBadLike(Vertex v) const;
};

// Outcome of each claim-level check. Counts are always filled in as far as
// the construction got; `phase_reached` says how far that was.
struct PhaseDiagnostics {
  Vertex root = kNoVertex;
  std::string phase_reached;
  std::optional<std::string> failure_reason;

  bool root_good = false;  // root is good
  bool bad_children_bound =
      true;  // no good vertex has >= ceil(10/delta) bad children
  std::size_t max_bad_children = 0;
  bool queue_never_empty = true;   // BFS stopped by the delta n rule
  std::size_t tree_size = 0;       // |T|
  std::size_t remainder_size = 0;  // |R|
  std::size_t good_vertices = 0;
  std::size_t bad_vertices = 0;
  std::size_t good_whiskers = 0;
  std::size_t bad_whiskers = 0;
  int tree_height = 0;  // height of the BFS tree on T

  std::size_t high_degree = 0;
  std::size_t medium_degree = 0;
  std::size_t low_degree = 0;
  std::size_t low_dangerous = 0;  // case (i)
  std::size_t low_attached = 0;   // case (ii)
  std::size_t low_isolated = 0;   // case (iii)
  bool parent_kinds = true;       // every low vertex fits a case

  std::size_t r_set_size = 0;
  std::size_t fewer_than_two_whisker_neighbors = 0;
  bool two_good_whisker_neighbors = true;

  std::size_t isolated = 0;  // |I|
  std::size_t isolated_to_whisker = 0;
  std::size_t isolated_to_high = 0;
  bool isolated_parent_kinds = true;

  std::size_t buckets = 0;
  std::size_t matched = 0;
  bool hall_matching_saturates = true;
  std::size_t lucky_whiskers = 0;
  std::size_t rerouted_to_dangerous = 0;  // unmatched, hung below R instead

  std::size_t dangerous_parents = 0;
  std::size_t dangerous_vertices = 0;
  std::size_t dangerous_parents_shared = 0;  // extra parents on one whisker
  bool dangerous_parents_attached = true;

  std::size_t deferred = 0;  // practical mode: left for the regrowth pass
  std::size_t repaired = 0;  // vertices re-hung by the regrowth pass

  bool spanning = false;
  bool structure_ok = false;
  bool leaf_reservoir = true;
  bool monotone_audit = false;
  std::size_t trace_length = 0;
};

struct Bucket {
  std::array<Vertex, 2> whiskers{kNoVertex, kNoVertex};
  std::size_t size() const { return whiskers[1] == kNoVertex ? 1 : 2; }
};

// Mutable working state of one construction attempt.
struct ConstructionState {
  const Graph* base = nullptr;
  ProtocolParams params;
  LabeledTree tree;
  std::vector<bool> in_tree;  // T (as opposed to R)
  std::vector<DegreeClass> degree_class;
  std::vector<Vertex> isolated;   // I, still waiting for a parent
  std::vector<int> attached_low;  // per good vertex: attached-low count
  PhaseDiagnostics diagnostics;

  bool Fail(std::string reason);
};

// Phase A. FIFO breadth-first growth from `root` over the base graph.
// Returns false with a failure reason on a premature stop.
bool BuildBfsTree(const Graph& base, const ProtocolParams& params, Vertex root,
                  ConstructionState& state);

// Phase B. Degree classes of R and parents for the low-degree vertices.
bool ClassifyRemainder(ConstructionState& state);

// Phase C. Scans e_{K+1}, ..., e_M for edges at still-isolated vertices.
bool AssignIsolatedParents(EdgeStream& stream, std::uint64_t k, std::uint64_t m,
                           ConstructionState& state);

// High/medium vertices of R that are not dangerous parents.
std::vector<Vertex> MatchableRemainder(const ConstructionState& state);

// Pairs each good vertex's free good whiskers, then pairs the leftovers
// across good vertices; at most one singleton bucket overall.
std::vector<Bucket> BuildBuckets(const ConstructionState& state);

struct BucketMatching {
  Matching matching;
  bool saturates = false;
  // For each matched vertex of r_set (by position), the whisker it hangs
  // under.
  std::vector<Vertex> attach_to;
};

// Left side r_set, right side buckets; v ~ b when v is adjacent to a whisker
// of b.
BucketMatching MatchToBuckets(const Graph& g, std::span<const Vertex> r_set,
                              std::span<const Bucket> buckets);

// Phase D: buckets, matching, lucky whiskers.
bool ConnectRemainder(ConstructionState& state);

// Phase E: hangs every dangerous parent under an adjacent lucky whisker, then
// computes depths and levels and audits the final structure.
bool AttachDangerousParents(ConstructionState& state);

// Practical mode: rebuilds the parent links as a spanning tree of g (the
// final graph) on which the gathering emission cannot get stuck. The tree is
// grown from the root, each step expanding the placed vertex with the most
// unplaced neighbors; a step that would block the gathering is repaired by
// moving a leaf or subtree, or rolled back.
bool RegrowForEmission(const Graph& g, ConstructionState& state);

// Depths, levels and the structural audit; fails if the parent links do not
// span.
bool FinalizeTree(ConstructionState& state);

// Moves one unit at a time from the deepest positive vertex along its path to
// the root until only the root is positive. Requires that every positive
// vertex is lighter than its parent; throws IllegalMoveError otherwise.
IntTrace PumpToRoot(const Graph& g, Vertex root, std::span<const Vertex> parent,
                    IntConfig& config);

struct EmissionResult {
  bool ok = false;
  std::string failure;
  IntTrace trace;
  bool leaf_reservoir = true;
  bool monotone_audit = false;
};

// The five-stage unit protocol on a completed tree; moves use only tree
// edges, every one of which must be an edge of g.
EmissionResult EmitGatheringProtocol(const Graph& g, const LabeledTree& tree,
                                     ProtocolMode mode);

struct ConstructionResult {
  bool success = false;
  Vertex root = kNoVertex;
  std::size_t attempts = 0;
  std::size_t retries_used = 0;
  LabeledTree tree;
  IntTrace trace;
  PhaseDiagnostics diagnostics;  // of the successful or last attempt
  std::size_t residual_size = 0;
  std::int64_t root_weight = 0;
};

// Runs phases A-E on the prefix of length min(K, M), emits the protocol and
// verifies it by replay on `final_graph` (the prefix of length M). Retries
// walk down the base graph's degree order of the largest component.
ConstructionResult Construct(const Graph& final_graph, EdgeStream& stream,
                             std::uint64_t k, std::uint64_t m,
                             const ProtocolParams& params);

// Vertices of the largest base component ordered by decreasing degree, ties by
// index.
std::vector<Vertex> RootCandidates(const Graph& base);

std::string DiagnosticsToJson(const PhaseDiagnostics& d);
void WriteTreeDot(const LabeledTree& tree, std::ostream& out);

}  // namespace acq

#endif  // ACQ_SPANNING_PROTOCOL_H_
