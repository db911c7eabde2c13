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

#ifndef ACQ_EXACT_SOLVER_H_
#define ACQ_EXACT_SOLVER_H_

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "acq/acquisition.h"
#include "acq/graph.h"
#include "acq/random.h"

namespace acq {

struct SolverOptions {
  std::size_t unit_cap = 12;
  std::size_t total_cap = 14;
};

struct SolveResult {
  std::size_t value = 0;  // minimum residual-set size
  IntTrace witness;       // replays from all-ones to a terminal config
  std::size_t explored = 0;
  MoveKind variant = MoveKind::kUnit;
};

class SolverCapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact a_u (variant kUnit) or a_t (variant kTotal) by breadth-first search
// over the configurations reachable from all-ones. Each configuration is a
// weight tuple packed into one 64-bit key; there is no symmetry reduction.
// The search stops early once a terminal configuration with a single
// positive vertex is found. Throws SolverCapError above the configured size
// cap, and std::invalid_argument for an empty graph or a fractional variant.
SolveResult AcquisitionNumberExact(const Graph& g, MoveKind variant,
                                   const SolverOptions& options = {});

// One uniformly random maximal protocol: at every step a legal move is
// chosen uniformly among all legal moves of the variant.
IntTrace RandomMaximalProtocol(const Graph& g, MoveKind variant, Rng& rng);

// Minimum residual size over `trials` random maximal protocols; an upper
// bound on the exact acquisition number.
std::size_t RandomProtocolUpperBound(const Graph& g, MoveKind variant,
                                     std::size_t trials, std::uint64_t seed);

}  // namespace acq

#endif  // ACQ_EXACT_SOLVER_H_
