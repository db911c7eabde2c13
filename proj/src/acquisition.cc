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

#include "acq/acquisition.h"

#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace acq {

std::string_view MoveKindName(MoveKind kind) {
  switch (kind) {
    case MoveKind::kTotal:
      return "total";
    case MoveKind::kUnit:
      return "unit";
    case MoveKind::kFractional:
      return "fractional";
  }
  return "unknown";
}

MoveKind ParseMoveKind(std::string_view text) {
  if (text == "total") return MoveKind::kTotal;
  if (text == "unit") return MoveKind::kUnit;
  if (text == "fractional") return MoveKind::kFractional;
  throw std::invalid_argument("unknown move kind \"" + std::string(text) +
                              "\"");
}

std::string_view IllegalReasonText(IllegalReason reason) {
  switch (reason) {
    case IllegalReason::kVertexOutOfRange:
      return "vertex out of range";
    case IllegalReason::kNotAnEdge:
      return "endpoints are not adjacent";
    case IllegalReason::kEmptySender:
      return "sender has no weight";
    case IllegalReason::kNonPositiveAmount:
      return "amount is not positive";
    case IllegalReason::kAmountExceedsSender:
      return "amount exceeds sender weight";
    case IllegalReason::kKindMismatch:
      return "amount does not match move kind";
    case IllegalReason::kReceiverLighter:
      return "receiver weight is below sender weight";
  }
  return "unknown";
}

IllegalMoveError::IllegalMoveError(IllegalReason reason)
    : std::runtime_error("illegal move: " +
                         std::string(IllegalReasonText(reason))),
      reason_(reason) {}

ReplayError::ReplayError(std::size_t index, IllegalReason reason)
    : std::runtime_error("illegal move at index " + std::to_string(index) +
                         ": " + std::string(IllegalReasonText(reason))),
      index_(index),
      reason_(reason) {}

namespace {

std::string AmountText(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string AmountText(std::int64_t a) { return std::to_string(a); }

Rational ParseAmount(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed amount \"" + text + "\"");
  }
}

template <typename M>
void WriteText(std::span<const M> trace, std::ostream& out) {
  for (const auto& mv : trace) {
    out << MoveKindName(mv.kind) << ' ' << mv.from << ' ' << mv.to << ' '
        << AmountText(mv.amount) << '\n';
  }
}

template <typename M>
std::string ToJson(std::span<const M> trace) {
  nlohmann::json moves = nlohmann::json::array();
  for (const auto& mv : trace) {
    moves.push_back({{"kind", MoveKindName(mv.kind)},
                     {"from", mv.from},
                     {"to", mv.to},
                     {"amount", AmountText(mv.amount)}});
  }
  return nlohmann::json{{"moves", moves}}.dump();
}

}  // namespace

void WriteTraceText(std::span<const RationalMove> trace, std::ostream& out) {
  WriteText(trace, out);
}

void WriteTraceText(std::span<const IntMove> trace, std::ostream& out) {
  WriteText(trace, out);
}

RationalTrace ReadTraceText(std::istream& in) {
  RationalTrace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '#') continue;
    std::istringstream row(line);
    std::string kind, amount;
    long long from, to;
    if (!(row >> kind >> from >> to >> amount)) {
      throw std::invalid_argument("trace line " + std::to_string(line_no) +
                                  ": expected \"kind from to amount\"");
    }
    trace.push_back({ParseMoveKind(kind), static_cast<Vertex>(from),
                     static_cast<Vertex>(to), ParseAmount(amount)});
  }
  return trace;
}

std::string TraceToJson(std::span<const RationalMove> trace) {
  return ToJson(trace);
}

std::string TraceToJson(std::span<const IntMove> trace) {
  return ToJson(trace);
}

RationalTrace TraceFromJson(std::string_view text) {
  const auto doc = nlohmann::json::parse(text);
  const auto& moves = doc.is_array() ? doc : doc.at("moves");
  RationalTrace trace;
  for (const auto& m : moves) {
    const auto& amount = m.at("amount");
    Rational a = amount.is_string() ? ParseAmount(amount.get<std::string>())
                                    : Rational(amount.get<long long>());
    trace.push_back({ParseMoveKind(m.at("kind").get<std::string>()),
                     m.at("from").get<Vertex>(), m.at("to").get<Vertex>(),
                     std::move(a)});
  }
  return trace;
}

RationalTrace ReadTrace(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && (text[pos] == '{' || text[pos] == '[')) {
    return TraceFromJson(text);
  }
  std::istringstream lines(text);
  return ReadTraceText(lines);
}

std::optional<IntTrace> ToIntTrace(std::span<const RationalMove> trace) {
  IntTrace out;
  out.reserve(trace.size());
  for (const auto& mv : trace) {
    if (denominator(mv.amount) != 1) return std::nullopt;
    out.push_back({mv.kind, mv.from, mv.to,
                   numerator(mv.amount).convert_to<std::int64_t>()});
  }
  return out;
}

RationalTrace ToRationalTrace(std::span<const IntMove> trace) {
  RationalTrace out;
  out.reserve(trace.size());
  for (const auto& mv : trace) {
    out.push_back({mv.kind, mv.from, mv.to, Rational(mv.amount)});
  }
  return out;
}

}  // namespace acq
