// Copyright 2026 The qsim Authors
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
#pragma once

#include <cstdint>
#include <random>

namespace qsim {

/// Seedable random stream. The engine is the standard 64-bit Mersenne
/// Twister, whose output sequence is fixed by the C++ standard; all derived
/// draws (uniform reals, bounded integers, normals) are computed here rather
/// than through <random> distributions, whose algorithms are
/// implementation-defined. Equal seeds therefore give equal draws on every
/// conforming platform.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t draws() const { return counter_; }

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) built from the top 53 bits of one draw.
  double uniform();

  /// Uniform integer in [lo, hi] (inclusive), unbiased by rejection.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);

  /// Standard normal via Box-Muller (one value per call, no caching so the
  /// stream position stays a pure function of the call count).
  double normal();

  /// Independent child stream for trial `index`. Depends only on this
  /// stream's seed and the index, never on how many draws were consumed.
  RngStream split(std::uint64_t index) const;

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to derive child seeds.
std::uint64_t mix_seed(std::uint64_t value);

} // namespace qsim
