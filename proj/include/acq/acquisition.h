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

#ifndef ACQ_ACQUISITION_H_
#define ACQ_ACQUISITION_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "acq/graph.h"

namespace acq {

// Exact arbitrary-precision rational; fractional games never touch floating
// point.
using Rational = boost::multiprecision::cpp_rational;

enum class MoveKind { kTotal, kUnit, kFractional };

std::string_view MoveKindName(MoveKind kind);
MoveKind ParseMoveKind(std::string_view text);

// A transfer of `amount` from `from` to the neighbor `to`.
//   kTotal:      amount is the sender's whole weight.
//   kUnit:       amount is exactly 1.
//   kFractional: 0 < amount <= sender weight.
template <typename W>
struct Move {
  MoveKind kind = MoveKind::kUnit;
  Vertex from = 0;
  Vertex to = 0;
  W amount{1};

  friend bool operator==(const Move&, const Move&) = default;
};

template <typename W>
using MoveTrace = std::vector<Move<W>>;

using IntMove = Move<std::int64_t>;
using IntTrace = MoveTrace<std::int64_t>;
using RationalMove = Move<Rational>;
using RationalTrace = MoveTrace<Rational>;

// Per-vertex nonnegative weights with a cached total.
template <typename W>
class WeightConfig {
 public:
  WeightConfig() = default;
  explicit WeightConfig(std::vector<W> weights) : weights_(std::move(weights)) {
    for (const W& w : weights_) {
      if (w < 0) throw std::invalid_argument("negative weight");
      total_ += w;
    }
  }

  static WeightConfig AllOnes(std::size_t n) {
    return WeightConfig(std::vector<W>(n, W{1}));
  }

  std::size_t size() const { return weights_.size(); }
  const W& operator[](Vertex v) const { return weights_[v]; }
  std::span<const W> weights() const { return weights_; }
  const W& total() const { return total_; }

  // Unchecked transfer; callers go through ApplyMove.
  void Transfer(Vertex from, Vertex to, const W& amount) {
    weights_[from] -= amount;
    weights_[to] += amount;
  }

  friend bool operator==(const WeightConfig& a, const WeightConfig& b) {
    return a.weights_ == b.weights_;
  }

 private:
  std::vector<W> weights_;
  W total_{0};
};

using IntConfig = WeightConfig<std::int64_t>;
using RationalConfig = WeightConfig<Rational>;

template <typename W>
WeightConfig<W> InitialConfig(const Graph& g) {
  return WeightConfig<W>::AllOnes(g.num_vertices());
}

enum class IllegalReason {
  kVertexOutOfRange,
  kNotAnEdge,
  kEmptySender,
  kNonPositiveAmount,
  kAmountExceedsSender,
  kKindMismatch,
  kReceiverLighter,
};

std::string_view IllegalReasonText(IllegalReason reason);

class IllegalMoveError : public std::runtime_error {
 public:
  explicit IllegalMoveError(IllegalReason reason);
  IllegalReason reason() const { return reason_; }

 private:
  IllegalReason reason_;
};

class ReplayError : public std::runtime_error {
 public:
  ReplayError(std::size_t index, IllegalReason reason);
  std::size_t index() const { return index_; }
  IllegalReason reason() const { return reason_; }

 private:
  std::size_t index_;
  IllegalReason reason_;
};

// First violated condition, or nullopt when the move is legal in c.
template <typename W>
std::optional<IllegalReason> CheckMove(const Graph& g, const WeightConfig<W>& c,
                                       const Move<W>& mv) {
  const auto n = static_cast<Vertex>(c.size());
  if (mv.from < 0 || mv.to < 0 || mv.from >= n || mv.to >= n ||
      static_cast<std::size_t>(n) != g.num_vertices()) {
    return IllegalReason::kVertexOutOfRange;
  }
  if (!g.HasEdge(mv.from, mv.to)) return IllegalReason::kNotAnEdge;
  const W& sender = c[mv.from];
  if (sender <= 0) return IllegalReason::kEmptySender;
  if (mv.amount <= 0) return IllegalReason::kNonPositiveAmount;
  if (mv.amount > sender) return IllegalReason::kAmountExceedsSender;
  switch (mv.kind) {
    case MoveKind::kTotal:
      if (mv.amount != sender) return IllegalReason::kKindMismatch;
      break;
    case MoveKind::kUnit:
      if (mv.amount != 1) return IllegalReason::kKindMismatch;
      break;
    case MoveKind::kFractional:
      break;
  }
  if (c[mv.to] < sender) return IllegalReason::kReceiverLighter;
  return std::nullopt;
}

template <typename W>
bool IsLegal(const Graph& g, const WeightConfig<W>& c, const Move<W>& mv) {
  return !CheckMove(g, c, mv).has_value();
}

// Checked in-place application; throws IllegalMoveError.
template <typename W>
void ApplyMoveInPlace(const Graph& g, WeightConfig<W>& c, const Move<W>& mv) {
  if (auto reason = CheckMove(g, c, mv)) throw IllegalMoveError(*reason);
  c.Transfer(mv.from, mv.to, mv.amount);
}

template <typename W>
WeightConfig<W> ApplyMove(const Graph& g, const WeightConfig<W>& c,
                          const Move<W>& mv) {
  WeightConfig<W> next = c;
  ApplyMoveInPlace(g, next, mv);
  return next;
}

// Applies the whole trace or throws ReplayError naming the first illegal
// move; c0 is never modified.
template <typename W>
WeightConfig<W> Replay(const Graph& g, const WeightConfig<W>& c0,
                       std::span<const Move<W>> trace) {
  WeightConfig<W> c = c0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (auto reason = CheckMove(g, c, trace[i])) throw ReplayError(i, *reason);
    c.Transfer(trace[i].from, trace[i].to, trace[i].amount);
  }
  return c;
}

template <typename W>
std::vector<Vertex> ResidualSupport(const WeightConfig<W>& c) {
  std::vector<Vertex> support;
  for (std::size_t v = 0; v < c.size(); ++v) {
    if (c[static_cast<Vertex>(v)] > 0)
      support.push_back(static_cast<Vertex>(v));
  }
  return support;
}

// True iff no move of `kind` is legal. With integer weights this is exactly
// "the support is an independent set" for every kind; a unit move can
// additionally be blocked by a positive weight below 1.
template <typename W>
bool IsTerminal(const Graph& g, const WeightConfig<W>& c, MoveKind kind) {
  for (auto [u, v] : g.edges()) {
    const W& wu = c[u];
    const W& wv = c[v];
    if (wu <= 0 || wv <= 0) continue;
    const W& lighter = wu <= wv ? wu : wv;
    if (kind != MoveKind::kUnit || lighter >= 1) return false;
  }
  return true;
}

template <typename W>
bool IsIndependentSupport(const Graph& g, const WeightConfig<W>& c) {
  for (auto [u, v] : g.edges()) {
    if (c[u] > 0 && c[v] > 0) return false;
  }
  return true;
}

// Text form, one move per line: "<kind> <from> <to> <amount>", with rational
// amounts written as p/q.
void WriteTraceText(std::span<const RationalMove> trace, std::ostream& out);
void WriteTraceText(std::span<const IntMove> trace, std::ostream& out);
RationalTrace ReadTraceText(std::istream& in);

// JSON form: {"moves": [{"kind": "unit", "from": 0, "to": 1, "amount": "1"}]}.
std::string TraceToJson(std::span<const RationalMove> trace);
std::string TraceToJson(std::span<const IntMove> trace);
RationalTrace TraceFromJson(std::string_view text);

// Reads either form, sniffing the first non-blank character.
RationalTrace ReadTrace(std::istream& in);

// Integer view of a trace whose amounts are all integral.
std::optional<IntTrace> ToIntTrace(std::span<const RationalMove> trace);
RationalTrace ToRationalTrace(std::span<const IntMove> trace);

}  // namespace acq

#endif  // ACQ_ACQUISITION_H_
