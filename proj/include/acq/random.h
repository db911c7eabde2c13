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

#ifndef ACQ_RANDOM_H_
#define ACQ_RANDOM_H_

#include <cstdint>
#include <random>

namespace acq {

// Seeded generator with a portable output contract. The engine is
// std::mt19937_64, whose output sequence is fixed by the standard; the
// distribution mappings below are implemented here because the standard
// library's distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, bound). bound must be positive. Lemire's multiply-shift
  // with rejection, so the result is exactly uniform.
  std::uint64_t UniformIndex(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double UniformReal() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  bool Bernoulli(double p) { return UniformReal() < p; }

 private:
  std::mt19937_64 engine_;
};

// splitmix64 finalizer over (master, index): independent per-trial seeds
// that do not depend on scheduling order.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index);

}  // namespace acq

#endif  // ACQ_RANDOM_H_
