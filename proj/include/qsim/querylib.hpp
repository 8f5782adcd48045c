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
#include <vector>

#include "qsim/oracles.hpp"
#include "qsim/rng.hpp"

namespace qsim {

enum class Verdict { Constant, Balanced };

const char *to_string(Verdict v);

struct PromiseVerdict {
  Verdict verdict = Verdict::Constant;
  std::size_t queries = 0;
  /// Measured outcome of the query register (bit j = qubit j).
  std::uint64_t outcome = 0;
  /// Probability of the all-zeros outcome on the query register, read from
  /// the pre-measurement state.
  double zero_probability = 0.0;
};

enum class PromiseCheck { Validate, Skip };

/// Deutsch's algorithm for f: {0,1} -> {0,1}: one query, deterministic
/// outcome f(0) xor f(1) on qubit 0.
PromiseVerdict deutsch(const ClassicalFunction &f, RngStream &rng);

/// Deutsch-Jozsa on N = f.n_in() query qubits plus one output qubit.
/// With PromiseCheck::Skip the algorithm also runs on functions that are
/// neither constant nor balanced; the verdict then carries no guarantee.
PromiseVerdict deutsch_jozsa(const ClassicalFunction &f, RngStream &rng,
                             PromiseCheck check = PromiseCheck::Validate);

/// Deterministic classical worst case: 2^N / 2 + 1 queries.
std::uint64_t classical_dj_worst_case_queries(int n);

/// Deterministic classical decision: query inputs in order until two values
/// differ or 2^(N-1) + 1 equal values have been seen.
PromiseVerdict classical_deutsch_jozsa(const ClassicalFunction &f);

/// Randomized classical baseline: query `samples` random inputs and answer
/// Constant iff all agree. Can err on balanced functions.
PromiseVerdict classical_dj_sampling(const ClassicalFunction &f,
                                     std::size_t samples, RngStream &rng);

struct BvResult {
  std::uint64_t secret = 0;
  std::size_t queries = 0;
  /// Probability of the returned outcome in the final state.
  double probability = 0.0;
};

BvResult bernstein_vazirani(const ClassicalFunction &f, RngStream &rng);

/// Linear system {y . p = 0} over GF(2) with incrementally maintained
/// reduced row echelon basis.
class Gf2System {
public:
  explicit Gf2System(int width);

  int width() const { return width_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<std::uint64_t> &rows() const { return rows_; }

  /// Adds an equation; returns true when it raised the rank. Throws if the
  /// row has bits at or above `width`.
  bool add_row(std::uint64_t row);

  /// Basis of the solution space {p : row . p = 0 for every row}.
  std::vector<std::uint64_t> nullspace() const;

private:
  int width_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> basis_;  // fully reduced
  std::vector<int> pivots_;           // highest set bit of each basis row
};

struct SimonResult {
  std::uint64_t period = 0;
  /// Oracle queries used (one per sampled y).
  std::size_t queries = 0;
  std::vector<std::uint64_t> samples;
};

/// Simon's algorithm. Samples y until the equations reach rank N-1, then
/// solves for p. Throws qsim::Error when `max_runs` samples (default 20 N)
/// do not reach that rank, when the solution space is not {0, p}, or when
/// the classical check f(0) = f(p) fails.
SimonResult simon(const ClassicalFunction &f, RngStream &rng,
                  std::size_t max_runs = 0);

/// One Simon round: returns the sampled first-register outcome y. Exposed so
/// the sample distribution can be tested on its own.
std::uint64_t simon_sample(const OracleUnitary &oracle, RngStream &rng);

} // namespace qsim
