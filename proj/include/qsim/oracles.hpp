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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsim/rng.hpp"
#include "qsim/simcore.hpp"

namespace qsim {

/// Explicit truth table f: {0,1}^n_in -> {0,1}^n_out. Inputs and outputs are
/// integers under the little-endian bit convention of simcore.
class ClassicalFunction {
public:
  ClassicalFunction(int n_in, int n_out, std::vector<std::uint64_t> table);

  int n_in() const { return n_in_; }
  int n_out() const { return n_out_; }
  std::uint64_t operator()(std::uint64_t x) const { return table_.at(x); }
  std::span<const std::uint64_t> table() const { return table_; }

  bool is_bijection() const;

private:
  int n_in_;
  int n_out_;
  std::vector<std::uint64_t> table_;
};

enum class OracleKind { Standard, Minimal };

/// Unitary realization of a classical function as a basis permutation.
///
/// Standard: |x, y> -> |x, y xor f(x)> on n_in + n_out qubits.
/// Minimal:  |x> -> |f(x)> on n_in qubits; requires a bijection.
class OracleUnitary {
public:
  OracleKind kind() const { return kind_; }
  const ClassicalFunction &function() const { return f_; }
  int n_in() const { return f_.n_in(); }
  int n_out() const { return f_.n_out(); }
  /// Qubits the oracle acts on (n_in + n_out, or n_in for minimal oracles).
  int width() const;

  /// Applies the oracle with the input register on qubits
  /// [input_first, input_first + n_in) and, for standard oracles, the output
  /// register on [output_first, output_first + n_out).
  void apply(StateVector &state, int input_first = 0,
             int output_first = -1) const;

  /// Image of one basis index under the permutation (default placement).
  std::uint64_t map_basis(std::uint64_t index) const;

private:
  friend OracleUnitary standard_oracle(ClassicalFunction f);
  friend OracleUnitary minimal_oracle(ClassicalFunction f);
  OracleUnitary(OracleKind kind, ClassicalFunction f)
      : kind_(kind), f_(std::move(f)) {}
  OracleKind kind_;
  ClassicalFunction f_;
};

OracleUnitary standard_oracle(ClassicalFunction f);
OracleUnitary minimal_oracle(ClassicalFunction f);

// Promise-function families -------------------------------------------------

ClassicalFunction make_constant(int n, std::uint64_t value);
/// f(x) = popcount(x) mod 2.
ClassicalFunction make_balanced_parity(int n);
/// f(x) = 1 exactly on the listed inputs; the list must hold 2^(n-1)
/// distinct inputs.
ClassicalFunction make_balanced(int n, std::span<const std::uint64_t> ones);
ClassicalFunction make_balanced_random(int n, RngStream &rng);

bool is_constant(const ClassicalFunction &f);
bool is_balanced(const ClassicalFunction &f);

/// f(x) = a . x mod 2 for an n-bit word a.
ClassicalFunction make_bv_function(int n, std::uint64_t a);

/// 2-to-1 function with f(x) = f(y) iff y = x xor p. Coset labels are a
/// random permutation of 0..2^(n-1)-1.
ClassicalFunction make_simon_function(int n, std::uint64_t p, RngStream &rng);
/// The p = 0 (1-to-1) case: a random permutation of {0,1}^n.
ClassicalFunction make_injective_function(int n, RngStream &rng);
/// Exhaustive check of the 2-to-1 promise with period p.
bool validate_simon(const ClassicalFunction &f, std::uint64_t p);

/// a . x mod 2.
inline int dot_mod2(std::uint64_t a, std::uint64_t x) {
  return static_cast<int>(__builtin_popcountll(a & x) & 1U);
}

// Truth-table files -----------------------------------------------------------
//
//   # qsim-format v1
//   <n_in> <n_out>
//   <f(0) in binary, n_out digits, most significant first>
//   ...                                   (2^n_in lines, inputs ascending)

ClassicalFunction read_truth_table(std::istream &in);
ClassicalFunction load_truth_table(const std::string &path);
void write_truth_table(std::ostream &out, const ClassicalFunction &f);

} // namespace qsim
