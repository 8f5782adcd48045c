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
/**
 * @file
 * Dense statevector simulation core: amplitudes, gate matrices, strided gate
 * kernels, measurement and circuit execution.
 *
 * Bit convention: qubit i carries weight 2^i in the basis index. A register
 * listed as (q_0, q_1, ..., q_{k-1}) reads as the integer sum_j bit(q_j) 2^j,
 * and the row/column index of a k-qubit gate matrix uses the same order over
 * its target list.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qsim/rng.hpp"

namespace qsim {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultQubitCap = 14;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;

/// Pure state of n qubits as 2^n amplitudes.
///
/// Norm drift is not corrected silently: only measurement collapse
/// renormalizes. `norm_deviation()` exposes |<psi|psi> - 1| for checks.
class StateVector {
public:
  /// Basis state |index> on n qubits.
  explicit StateVector(int n_qubits, std::uint64_t index = 0,
                       int qubit_cap = kDefaultQubitCap);

  /// Takes ownership of explicit amplitudes; length must be a power of two
  /// and the vector must be normalized within kNormTolerance.
  static StateVector from_amplitudes(std::vector<Complex> amps,
                                     int qubit_cap = kDefaultQubitCap);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }

  const Complex &operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const { return amps_; }

  /// Mutable view for kernels. Callers own the norm invariant.
  std::span<Complex> mutable_amplitudes() { return amps_; }

  double norm_squared() const;
  double norm_deviation() const;

  /// |this> (x) |other>, with `other` occupying the new high qubits.
  StateVector tensor(const StateVector &other,
                     int qubit_cap = kDefaultQubitCap) const;

private:
  StateVector() = default;
  int n_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// Validated unitary acting on 1..3 qubits.
class GateMatrix {
public:
  /// Throws qsim::Error unless `m` is 2^k x 2^k for k in 1..3 and
  /// U^dagger U = 1 within kUnitaryTolerance.
  explicit GateMatrix(DenseMatrix m, std::string name = "U");

  int arity() const { return arity_; }
  const DenseMatrix &matrix() const { return matrix_; }
  const std::string &name() const { return name_; }

  GateMatrix adjoint() const;

private:
  int arity_ = 1;
  DenseMatrix matrix_;
  std::string name_;
};

bool is_unitary(const DenseMatrix &m, double tol = kUnitaryTolerance);

namespace gates {
GateMatrix identity();
GateMatrix hadamard();
GateMatrix pauli_x();
GateMatrix pauli_y();
GateMatrix pauli_z();
/// |0> -> |0>, |1> -> i|1>.
GateMatrix phase_s();
/// diag(1, e^{i theta}).
GateMatrix phase(double theta);
/// Two-qubit CNOT over targets (control, target).
GateMatrix cnot();
/// Two-qubit controlled phase: |1,1> picks up e^{i theta}.
GateMatrix controlled_phase(double theta);
GateMatrix swap();
/// Three-qubit Toffoli over targets (control, control, target).
GateMatrix toffoli();
/// exp(-i angle/2 (axis . sigma)); axis must be a unit vector.
GateMatrix axis_rotation(double angle, double ax, double ay, double az);
} // namespace gates

/// Haar-distributed k-qubit unitary (QR of a complex Ginibre matrix with the
/// phase of R's diagonal divided out).
GateMatrix random_unitary(int arity, RngStream &rng);

/// Uniformly random pure state (normalized complex Gaussian vector).
StateVector random_state(int n_qubits, RngStream &rng,
                         int qubit_cap = kDefaultQubitCap);

struct GateOp {
  GateMatrix gate;
  std::vector<int> targets;
};

struct Measurement {
  std::vector<int> qubits;
};

struct MeasurementRecord {
  std::vector<int> qubits;
  /// Bit j is the outcome of qubits[j].
  std::uint64_t outcome = 0;
};

using CircuitStep = std::variant<GateOp, Measurement>;

class Circuit {
public:
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<CircuitStep> &steps() const { return steps_; }
  std::size_t gate_count() const;

  Circuit &add(GateMatrix gate, std::vector<int> targets);
  Circuit &measure(std::vector<int> qubits);
  /// Appends `other` with its qubit j mapped to `qubit_map[j]`.
  Circuit &append(const Circuit &other, std::span<const int> qubit_map);

  /// Reversed circuit of adjoint gates. Throws if it contains measurements.
  Circuit inverse() const;

private:
  void check_targets(std::span<const int> qubits) const;
  int n_qubits_;
  std::vector<CircuitStep> steps_;
};

namespace kernels {
/// Applies an arbitrary 2^k x 2^k matrix to the given targets of a raw
/// amplitude array, in place, over strided amplitude groups. No unitarity or
/// norm checks; used by the gate path and by Hamiltonian products.
void apply_matrix(std::span<Complex> amps, std::span<const int> targets,
                  const DenseMatrix &m);
} // namespace kernels

void apply_gate(StateVector &state, const GateOp &op);
void apply_gate(StateVector &state, const GateMatrix &gate,
                std::vector<int> targets);

/// Executes the circuit in order; measurement steps collapse the state and
/// append a record.
std::vector<MeasurementRecord> run_circuit(const Circuit &circuit,
                                           StateVector &state,
                                           RngStream &rng);

/// Born-rule sample of the listed qubits; collapses and renormalizes.
std::uint64_t measure_subset(StateVector &state, std::span<const int> qubits,
                             RngStream &rng);

/// Projects onto `outcome` of the listed qubits and renormalizes. Returns the
/// outcome probability; a zero-probability projection throws.
double project(StateVector &state, std::span<const int> qubits,
               std::uint64_t outcome);

std::vector<double> probabilities(const StateVector &state);

/// Marginal distribution of the listed qubits (2^|qubits| entries).
std::vector<double> marginal_probabilities(const StateVector &state,
                                           std::span<const int> qubits);

/// <a|b>, conjugate-linear in a. Phase sensitive.
Complex inner_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2, insensitive to global phase.
double fidelity(const StateVector &a, const StateVector &b);

/// Partial trace keeping the listed qubits (at most 6).
DenseMatrix reduced_density_matrix(const StateVector &state,
                                   std::span<const int> keep);

/// <target| rho_keep |target> without forming rho_keep: the squared norm of
/// (<target| (x) 1) |state>. `target` is a pure state on |keep| qubits.
double subsystem_fidelity(const StateVector &state, std::span<const int> keep,
                          const StateVector &target);

/// CSV rows "index,re,im", indices ascending, full round-trip precision.
void write_amplitudes_csv(std::ostream &out, const StateVector &state);

} // namespace qsim
