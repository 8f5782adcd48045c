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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsim/rng.hpp"
#include "qsim/simcore.hpp"

namespace qsim {

// ---------------------------------------------------------------------------
// Classical [7,4,3] Hamming code
//
// Words are 7-bit integers; bit (i-1) holds position i of the word, so
// position i sits on qubit i-1 in the Steane code.

using HammingMatrix = std::array<std::array<int, 7>, 3>;

/// Rows 0001111, 0110011, 1010101. Column i is the binary form of i with
/// row 1 as the most significant bit.
const HammingMatrix &hamming_parity_check();

/// h * word^T over GF(2), read with row 1 as the MSB.
unsigned hamming_syndrome(unsigned word);

/// The 16 codewords (kernel of h), ascending.
std::vector<unsigned> hamming_codewords();

/// The 8 words in the row space of h (the even-weight codewords).
std::vector<unsigned> hamming_dual_codewords();

// ---------------------------------------------------------------------------
// Quantum codes

enum class CheckType { Z, X };

/// A parity measured onto the ancilla by a CNOT fan-in from `support`.
struct ParityCheck {
  CheckType type = CheckType::Z;
  std::vector<int> support;
};

/// Basis change, a run of parity checks sharing it, then the inverse change.
struct SyndromeStage {
  Circuit pre;
  std::vector<ParityCheck> checks;
  Circuit post;
};

struct CodeSpec {
  std::string name;
  int n_physical = 0;
  Circuit encoder{1};
  std::vector<SyndromeStage> syndrome_plan;
  /// Syndrome (bit j = j-th check in plan order) to corrective gates.
  std::map<std::uint64_t, std::vector<GateOp>> correction_table;

  int ancilla() const { return n_physical; }
  std::size_t check_count() const;
};

CodeSpec repetition_code();
CodeSpec shor9_code();
CodeSpec steane7_code();
/// "repetition", "shor9" or "steane7".
CodeSpec code_by_name(const std::string &name);

/// Logical |0> and |1> built directly from their basis expansions.
std::array<StateVector, 2> codeword_states(const CodeSpec &code);

/// Runs the encoder on |logical> (x) |0...0>; returns n_physical qubits.
StateVector encode(const CodeSpec &code, const StateVector &logical);

/// Encoded block, then one ancilla in |0>, then `n_environment` qubits in |0>.
StateVector prepare_block(const CodeSpec &code, const StateVector &logical,
                          int n_environment = 0);

// ---------------------------------------------------------------------------
// Noise

enum class NoiseKind {
  BitFlip,
  PhaseFlip,
  PauliY,
  GeneralUnitary,
  EntanglingEnvironment
};

struct NoiseEvent {
  NoiseKind kind = NoiseKind::BitFlip;
  int qubit = 0;
  /// Required for GeneralUnitary.
  std::optional<GateMatrix> unitary;
  /// Required for EntanglingEnvironment; must hold |0>.
  int environment_qubit = -1;
};

/// Data (x) environment unitary (local bit 0 = data) extending the map with
/// Psi_0 = Psi_2 = |0>/2, Psi_1 = |1>/2, Psi_3 = -|1>/2.
GateMatrix entangling_environment_gate();

void apply_noise(StateVector &state, const NoiseEvent &event);

// ---------------------------------------------------------------------------
// Syndromes and correction

struct CorrectionReport {
  std::uint64_t syndrome = 0;
  std::size_t syndrome_bits = 0;
  bool uncorrectable = false;
  std::vector<GateOp> applied;
};

/// Measures every check through the ancilla (reset after each outcome) and
/// applies the table entry. Qubits past the ancilla are left alone.
CorrectionReport correct(const CodeSpec &code, StateVector &state,
                         RngStream &rng);

/// Exact outcome distribution of the syndrome measurements, by branching on
/// each ancilla outcome.
std::map<std::uint64_t, double> syndrome_distribution(const CodeSpec &code,
                                                      const StateVector &state);

/// Mean logical fidelity after correction, averaged exactly over syndrome
/// outcomes.
double expected_corrected_fidelity(const CodeSpec &code,
                                   const StateVector &state,
                                   const StateVector &logical);

/// Largest change in the syndrome distribution across the logical states
/// for one error event.
double syndrome_dependence(const CodeSpec &code, const NoiseEvent &event,
                           std::span<const StateVector> logicals,
                           int n_environment = 0);

struct PrivacyCase {
  std::string error;  // "none", "x", "y" or "z"
  int qubit = -1;
  double max_deviation = 0.0;
  bool deterministic = true;
};

struct PrivacyReport {
  std::vector<PrivacyCase> cases;
  double max_deviation = 0.0;
  bool independent = true;
};

/// Pauli errors on every position over `n_states` random logical states plus
/// |0>, |1> and |+>.
PrivacyReport syndrome_privacy_check(const CodeSpec &code, RngStream &rng,
                                     int n_states = 20);

// ---------------------------------------------------------------------------
// Fidelities and scaling

/// Decodes the block with the inverse encoder and compares qubit 0 with
/// `logical`.
double logical_fidelity(const CodeSpec &code, const StateVector &state,
                        const StateVector &logical);

/// <target| rho_low |target> where `target` covers the lowest qubits.
double block_fidelity(const StateVector &state, const StateVector &target);

/// Rotation about a random axis with sin^2(theta/2) = epsilon.
GateMatrix random_axis_error(double epsilon, RngStream &rng);

/// Mean logical infidelities at one error strength.
struct ScalingPoint {
  double epsilon = 0.0;
  double uncorrected = 0.0;
  double corrected = 0.0;
};

struct ScalingReport {
  std::vector<ScalingPoint> points;
  double uncorrected_slope = 0.0;
  double corrected_slope = 0.0;
};

/// Projector form of syndrome correction for Clifford encoders. After the
/// decoder every check reads a fixed parity of the non-logical qubits, and
/// every table correction acts on the logical qubit as a fixed 2x2 matrix.
class SyndromeProjector {
public:
  explicit SyndromeProjector(const CodeSpec &code);

  /// Syndrome carried by decoded basis states whose qubits 1..n-1 read `rest`.
  std::uint64_t syndrome_of_rest(std::uint64_t rest) const;

  /// Same value as expected_corrected_fidelity, in one pass over the state.
  double corrected_fidelity(const StateVector &state,
                            const StateVector &logical) const;

private:
  const CodeSpec *code_;
  Circuit decoder_;
  std::vector<std::uint64_t> rest_syndrome_;
  std::map<std::uint64_t, Eigen::Matrix2cd> logical_action_;
};

/// Sampled runs the measured correction once per trial; Exact weights every
/// syndrome outcome by its probability.
enum class SyndromeAveraging { Sampled, Exact };

/// Per trial: random logical state, a random_axis_error of strength epsilon on
/// every physical qubit, then logical infidelity without and with correction.
/// Trial t draws from rng.split(t) at every epsilon.
ScalingReport error_scaling_experiment(
    const CodeSpec &code, std::span<const double> epsilons, int trials,
    const RngStream &rng,
    SyndromeAveraging averaging = SyndromeAveraging::Exact);

/// Least-squares slope of log(y) on log(x) over points with x, y > 0.
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

} // namespace qsim
