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
#include <optional>
#include <vector>

#include "qsim/rng.hpp"
#include "qsim/simcore.hpp"

namespace qsim {

/// Search space of N = 2^n_qubits items with a nonempty marked set.
class GroverInstance {
public:
  GroverInstance(int n_qubits, std::vector<std::uint64_t> marked);

  int n_qubits() const { return n_qubits_; }
  std::uint64_t space_size() const { return 1ULL << n_qubits_; }
  const std::vector<std::uint64_t> &marked() const { return marked_; }
  std::uint64_t marked_count() const { return marked_.size(); }
  bool is_marked(std::uint64_t x) const;

private:
  int n_qubits_;
  std::vector<std::uint64_t> marked_;  // sorted, unique
  std::vector<bool> lookup_;
};

/// M distinct marked items drawn uniformly.
GroverInstance random_instance(int n_qubits, std::uint64_t marked_count,
                               RngStream &rng);

struct GroverReport {
  std::uint64_t found = 0;
  bool success = false;
  std::uint64_t iterations = 0;
  std::uint64_t oracle_queries = 0;
  /// Probability of measuring a marked item in the final state.
  double final_success_prob = 0.0;
};

/// U_marked = 1 - 2 sum_{x marked} |x><x|.
void grover_oracle_apply(StateVector &state, const GroverInstance &instance);

/// U_Psi = 2|Psi><Psi| - 1 as a rank-one update: a_x -> 2 mean(a) - a_x.
void diffusion_apply(StateVector &state);

/// Same reflection built as H^n (2|0><0| - 1) H^n; a cross-check for the
/// rank-one path.
void diffusion_apply_circuit(StateVector &state);

/// Uniform superposition over n qubits (n Hadamards on |0>).
StateVector uniform_state(int n_qubits);

/// round((pi/4) sqrt(N/M) - 1/2).
std::uint64_t grover_optimal_iterations(std::uint64_t space_size,
                                        std::uint64_t marked_count);

/// sin^2((2k+1) phi), sin(phi) = sqrt(M/N).
double grover_success_prob(std::uint64_t space_size,
                           std::uint64_t marked_count, std::uint64_t k);

/// Probability mass on the marked set.
double marked_probability(const StateVector &state,
                          const GroverInstance &instance);

/// Norm of the component outside span{uniform over marked, uniform over
/// unmarked}.
double plane_residual(const StateVector &state, const GroverInstance &instance);

/// Runs k Grover iterations from the uniform state (k = nullopt picks the
/// optimal count), then measures every qubit.
GroverReport grover_search(const GroverInstance &instance,
                           std::optional<std::uint64_t> iterations,
                           RngStream &rng);

/// Upper end of the random iteration count for unknown M: floor(pi sqrt(N)/4).
std::uint64_t grover_random_iteration_limit(std::uint64_t space_size);

/// Unknown-M strategy: k uniform in [0, floor(pi sqrt(N)/4)].
GroverReport grover_unknown_m(const GroverInstance &instance, RngStream &rng);

/// Exact success probability of the unknown-M strategy (average of the
/// analytic curve over the k distribution).
double grover_unknown_m_expected(std::uint64_t space_size,
                                 std::uint64_t marked_count);

struct GroverSweepRow {
  std::uint64_t k = 0;
  double analytic = 0.0;
  double empirical = 0.0;
};

/// For k = 0..k_max: analytic success probability and the empirical success
/// frequency over `trials` measured runs.
std::vector<GroverSweepRow> grover_sweep(const GroverInstance &instance,
                                         std::uint64_t k_max,
                                         std::size_t trials, RngStream &rng);

} // namespace qsim
