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
#include <span>
#include <string>
#include <vector>

#include "qsim/simcore.hpp"

namespace qsim {

inline constexpr int kDenseQubitCap = 10;

/// Hermitian operator on at most three qubits.
struct LocalTerm {
  std::vector<int> support;
  DenseMatrix matrix;
};

/// Throws unless the support is 1..3 distinct qubits and the matrix is a
/// Hermitian 2^|support| square within 1e-12.
LocalTerm make_term(std::vector<int> support, DenseMatrix matrix);

/// H = sum_l H_l over local terms, plus an optional diagonal part (a cost
/// function written into the computational basis). Either part may be empty.
class LocalHamiltonian {
public:
  explicit LocalHamiltonian(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<LocalTerm> &terms() const { return terms_; }
  const std::vector<double> &diagonal() const { return diagonal_; }

  LocalHamiltonian &add_term(LocalTerm term);
  LocalHamiltonian &set_diagonal(std::vector<double> diagonal);

  /// out = H |in> over raw amplitude arrays.
  void apply(std::span<const Complex> in, std::span<Complex> out) const;

  /// Upper bound on the operator norm: sum of term norms plus max |diag|.
  double norm_bound() const;

private:
  int n_qubits_;
  std::vector<LocalTerm> terms_;
  std::vector<double> diagonal_;
};

/// Pauli matrices as dense 2x2 blocks, for assembling terms.
namespace pauli {
DenseMatrix I();
DenseMatrix X();
DenseMatrix Y();
DenseMatrix Z();
} // namespace pauli

/// Kronecker product with `low` on the lower-indexed qubits:
/// (high (x) low)[h*dim(low) + l] ordering.
DenseMatrix kron(const DenseMatrix &high, const DenseMatrix &low);

/// Sum_l (H_l (x) 1) + diag as a dense 2^n matrix (n <= 10).
DenseMatrix assemble_dense(const LocalHamiltonian &h);

/// e^{-iHt}|psi> through the eigendecomposition of the dense matrix.
StateVector exact_evolve(const LocalHamiltonian &h, double t,
                         const StateVector &state);

/// (prod_l e^{-i H_l t/k})^k |psi>, terms in stored order, the diagonal part
/// last in each sweep.
StateVector trotter_evolve(const LocalHamiltonian &h, double t, int k,
                           const StateVector &state);

/// <psi|H|psi>.
double expectation(const LocalHamiltonian &h, const StateVector &state);

/// ||a - b||_2 between amplitude vectors (phase sensitive).
double state_distance(const StateVector &a, const StateVector &b);

// Adiabatic evolution ------------------------------------------------------------

struct ProblemHamiltonian {
  LocalHamiltonian hamiltonian;
  std::vector<std::uint64_t> ground_states;  // argmin of the cost
  bool unique_minimum = true;
};

/// H_T = sum_z f(z) |z><z| from 2^n real costs.
ProblemHamiltonian problem_hamiltonian(std::span<const double> costs);

/// Cost 1 - [z in marked]: the Grover search problem as a cost function.
std::vector<double> grover_costs(int n_qubits,
                                 std::span<const std::uint64_t> marked);

/// H_0 = sum_i (1 - X_i)/2; ground state is the uniform superposition.
LocalHamiltonian default_initial_hamiltonian(int n_qubits);

struct AdiabaticSchedule {
  double total_time = 1.0;
  /// 0 selects max(1000, ceil(200 T ||H||_max)).
  std::size_t steps = 0;
};

struct AdiabaticResult {
  StateVector state;
  double success_probability = 0.0;
  std::size_t steps = 0;
  double max_step_drift = 0.0;
};

inline constexpr double kStepDriftBudget = 1e-8;

std::size_t default_step_count(const LocalHamiltonian &h0,
                               const LocalHamiltonian &ht, double total_time);

/// Integrates i d/dt psi = H(t) psi with H(t) = (t/T) H_T + (1 - t/T) H_0
/// from `initial` using classical fourth-order Runge-Kutta. Each step's norm
/// drift must stay below kStepDriftBudget (else qsim::Error); within budget
/// the state is renormalized. Success probability is the mass on
/// `targets` (the ground manifold of H_T for the callers here).
AdiabaticResult adiabatic_run(const LocalHamiltonian &h0,
                              const LocalHamiltonian &ht,
                              const AdiabaticSchedule &schedule,
                              const StateVector &initial,
                              std::span<const std::uint64_t> targets);

/// Forward to H_T and back along the same interpolation; returns
/// |<g_0|psi_final>|^2 with g_0 = `initial` (the H_0 ground state).
double round_trip_check(const LocalHamiltonian &h0, const LocalHamiltonian &ht,
                        const AdiabaticSchedule &schedule,
                        const StateVector &initial);

struct GapSample {
  double s = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
  double gap = 0.0;
  /// |<E1 eigenspace| H_T - H_0 |ground>|, the norm of the projection.
  double coupling = 0.0;
  bool degenerate = false;
};

struct GapReport {
  std::vector<GapSample> samples;  // uniform grid, then the refined point
  double delta_min = 0.0;
  double s_at_min = 0.0;
  double theta = 0.0;
  bool degenerate = false;
};

/// Dense eigensolves of H(s) on a uniform grid of `samples` points, with a
/// golden-section refinement (tolerance 1e-4 in s) around the grid minimum.
/// Gap is E1 - E0 >= 0 (second-smallest minus smallest eigenvalue).
GapReport gap_scan(const LocalHamiltonian &h0, const LocalHamiltonian &ht,
                   int samples = 201);

/// T* = Theta / (Delta^2 epsilon).
double adiabatic_bound(const GapReport &report, double epsilon);

/// Ground state of a dense-capped Hamiltonian (lowest eigenvector).
StateVector ground_state(const LocalHamiltonian &h);

// Files ------------------------------------------------------------------------
//
// Hamiltonian:
//   # qsim-format v1
//   qubits: <n>
//   support=<i>[,<j>[,<k>]] matrix=<re>:<im>;<re>:<im>;...   (row-major)
//
// Cost function:
//   # qsim-format v1
//   <cost of z = 0>
//   ...                                  (2^n lines)

LocalHamiltonian read_hamiltonian(std::istream &in);
LocalHamiltonian load_hamiltonian(const std::string &path);
void write_hamiltonian(std::ostream &out, const LocalHamiltonian &h);

std::vector<double> read_costs(std::istream &in);
std::vector<double> load_costs(const std::string &path);

} // namespace qsim
