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
#include "qsim/qec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "qsim/error.hpp"

namespace qsim {

namespace {

constexpr double kBranchFloor = 1e-15;

std::vector<int> range_qubits(int first, int count) {
  std::vector<int> qs(static_cast<std::size_t>(count));
  std::iota(qs.begin(), qs.end(), first);
  return qs;
}

Circuit hadamard_layer(int n, std::span<const int> qubits) {
  Circuit c(n);
  for (int q : qubits) {
    c.add(gates::hadamard(), {q});
  }
  return c;
}

void apply_gates(StateVector &state, const Circuit &circuit) {
  for (const auto &step : circuit.steps()) {
    if (const auto *op = std::get_if<GateOp>(&step)) {
      apply_gate(state, *op);
    } else {
      throw Error("basis-change circuits may not measure");
    }
  }
}

void fan_in(StateVector &state, const ParityCheck &check, int ancilla) {
  for (int q : check.support) {
    apply_gate(state, gates::cnot(), {q, ancilla});
  }
}

enum class Pauli { X, Z, Y };

bool anticommutes(Pauli p, CheckType type) {
  if (p == Pauli::Y) {
    return true;
  }
  return (p == Pauli::X) == (type == CheckType::Z);
}

GateMatrix pauli_gate(Pauli p) {
  switch (p) {
  case Pauli::X:
    return gates::pauli_x();
  case Pauli::Z:
    return gates::pauli_z();
  case Pauli::Y:
    return gates::pauli_y();
  }
  return gates::identity();
}

// Every single-qubit Pauli in X, Z, Y order; the first to claim a syndrome
// keeps it.
void build_correction_table(CodeSpec &code) {
  for (Pauli p : {Pauli::X, Pauli::Z, Pauli::Y}) {
    for (int q = 0; q < code.n_physical; ++q) {
      std::uint64_t syndrome = 0;
      std::size_t bit = 0;
      for (const auto &stage : code.syndrome_plan) {
        for (const auto &check : stage.checks) {
          const bool hit = std::find(check.support.begin(), check.support.end(),
                                     q) != check.support.end();
          if (hit && anticommutes(p, check.type)) {
            syndrome |= 1ULL << bit;
          }
          ++bit;
        }
      }
      if (syndrome != 0 && !code.correction_table.contains(syndrome)) {
        code.correction_table.emplace(
            syndrome, std::vector<GateOp>{GateOp{pauli_gate(p), {q}}});
      }
    }
  }
}

SyndromeStage z_stage(int n, std::vector<std::vector<int>> supports) {
  SyndromeStage stage{Circuit(n), {}, Circuit(n)};
  for (auto &s : supports) {
    stage.checks.push_back(ParityCheck{CheckType::Z, std::move(s)});
  }
  return stage;
}

SyndromeStage x_stage(int n, std::vector<int> rotated,
                      std::vector<std::vector<int>> supports) {
  SyndromeStage stage{hadamard_layer(n, rotated), {}, hadamard_layer(n, rotated)};
  for (auto &s : supports) {
    stage.checks.push_back(ParityCheck{CheckType::X, std::move(s)});
  }
  return stage;
}

std::vector<int> hamming_row_support(int row) {
  std::vector<int> support;
  for (int i = 0; i < 7; ++i) {
    if (hamming_parity_check()[static_cast<std::size_t>(row)]
                              [static_cast<std::size_t>(i)] != 0) {
      support.push_back(i);
    }
  }
  return support;
}

void check_logical(const StateVector &logical) {
  if (logical.n_qubits() != 1) {
    throw Error("logical input must be a single qubit");
  }
}

} // namespace

// ---------------------------------------------------------------------------
// Hamming

const HammingMatrix &hamming_parity_check() {
  static const HammingMatrix h{{{0, 0, 0, 1, 1, 1, 1},
                                {0, 1, 1, 0, 0, 1, 1},
                                {1, 0, 1, 0, 1, 0, 1}}};
  return h;
}

unsigned hamming_syndrome(unsigned word) {
  const auto &h = hamming_parity_check();
  unsigned syndrome = 0;
  for (std::size_t r = 0; r < 3; ++r) {
    unsigned parity = 0;
    for (std::size_t i = 0; i < 7; ++i) {
      parity ^= static_cast<unsigned>(h[r][i]) & ((word >> i) & 1U);
    }
    syndrome |= parity << (2 - r);
  }
  return syndrome;
}

std::vector<unsigned> hamming_codewords() {
  std::vector<unsigned> words;
  for (unsigned w = 0; w < 128; ++w) {
    if (hamming_syndrome(w) == 0) {
      words.push_back(w);
    }
  }
  return words;
}

std::vector<unsigned> hamming_dual_codewords() {
  std::vector<unsigned> rows;
  for (int r = 0; r < 3; ++r) {
    unsigned w = 0;
    for (int q : hamming_row_support(r)) {
      w |= 1U << q;
    }
    rows.push_back(w);
  }
  std::vector<unsigned> words;
  for (unsigned mask = 0; mask < 8; ++mask) {
    unsigned w = 0;
    for (unsigned r = 0; r < 3; ++r) {
      if ((mask >> r) & 1U) {
        w ^= rows[r];
      }
    }
    words.push_back(w);
  }
  std::sort(words.begin(), words.end());
  return words;
}

// ---------------------------------------------------------------------------
// Codes

std::size_t CodeSpec::check_count() const {
  std::size_t count = 0;
  for (const auto &stage : syndrome_plan) {
    count += stage.checks.size();
  }
  return count;
}

CodeSpec repetition_code() {
  CodeSpec code;
  code.name = "repetition";
  code.n_physical = 3;
  code.encoder = Circuit(3);
  code.encoder.add(gates::cnot(), {0, 1}).add(gates::cnot(), {0, 2});
  code.syndrome_plan.push_back(z_stage(3, {{0, 1}, {1, 2}}));
  build_correction_table(code);
  return code;
}

CodeSpec shor9_code() {
  CodeSpec code;
  code.name = "shor9";
  code.n_physical = 9;
  code.encoder = Circuit(9);
  code.encoder.add(gates::cnot(), {0, 3}).add(gates::cnot(), {0, 6});
  for (int b : {0, 3, 6}) {
    code.encoder.add(gates::hadamard(), {b});
  }
  for (int b : {0, 3, 6}) {
    code.encoder.add(gates::cnot(), {b, b + 1}).add(gates::cnot(), {b, b + 2});
  }
  code.syndrome_plan.push_back(
      z_stage(9, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8}}));
  code.syndrome_plan.push_back(
      x_stage(9, range_qubits(0, 6), {range_qubits(0, 6)}));
  code.syndrome_plan.push_back(
      x_stage(9, range_qubits(3, 6), {range_qubits(3, 6)}));
  build_correction_table(code);
  return code;
}

CodeSpec steane7_code() {
  CodeSpec code;
  code.name = "steane7";
  code.n_physical = 7;
  code.encoder = Circuit(7);
  // Logical representative 1110000, then one generator per pivot qubit.
  code.encoder.add(gates::cnot(), {0, 1}).add(gates::cnot(), {0, 2});
  const std::vector<std::pair<int, std::vector<int>>> generators{
      {3, {0, 1, 6}}, {5, {1, 2, 6}}, {4, {0, 2, 6}}};
  for (const auto &[pivot, rest] : generators) {
    code.encoder.add(gates::hadamard(), {pivot});
  }
  for (const auto &[pivot, rest] : generators) {
    for (int q : rest) {
      code.encoder.add(gates::cnot(), {pivot, q});
    }
  }
  std::vector<std::vector<int>> rows;
  for (int r = 0; r < 3; ++r) {
    rows.push_back(hamming_row_support(r));
  }
  code.syndrome_plan.push_back(z_stage(7, rows));
  code.syndrome_plan.push_back(x_stage(7, range_qubits(0, 7), rows));
  build_correction_table(code);
  return code;
}

CodeSpec code_by_name(const std::string &name) {
  if (name == "repetition") {
    return repetition_code();
  }
  if (name == "shor9") {
    return shor9_code();
  }
  if (name == "steane7") {
    return steane7_code();
  }
  throw Error("unknown code '" + name + "' (expected repetition, shor9, steane7)");
}

std::array<StateVector, 2> codeword_states(const CodeSpec &code) {
  const int n = code.n_physical;
  std::vector<Complex> zero(std::size_t{1} << n);
  std::vector<Complex> one(zero.size());
  if (code.name == "repetition") {
    zero[0] = 1.0;
    one[7] = 1.0;
  } else if (code.name == "shor9") {
    // Blocks (|000> +- |111>)/sqrt2 on qubits 3b..3b+2.
    for (std::uint64_t pattern = 0; pattern < 8; ++pattern) {
      std::uint64_t index = 0;
      int ones = 0;
      for (int b = 0; b < 3; ++b) {
        if ((pattern >> b) & 1ULL) {
          index |= 7ULL << (3 * b);
          ++ones;
        }
      }
      zero[index] = 1.0 / std::sqrt(8.0);
      one[index] = (ones % 2 == 0 ? 1.0 : -1.0) / std::sqrt(8.0);
    }
  } else if (code.name == "steane7") {
    for (unsigned w : hamming_dual_codewords()) {
      zero[w] = 1.0 / std::sqrt(8.0);
      one[w ^ 0x7FU] = 1.0 / std::sqrt(8.0);
    }
  } else {
    throw Error("no direct codeword construction for '" + code.name + "'");
  }
  return {StateVector::from_amplitudes(std::move(zero)),
          StateVector::from_amplitudes(std::move(one))};
}

StateVector encode(const CodeSpec &code, const StateVector &logical) {
  check_logical(logical);
  StateVector state = logical.tensor(StateVector(code.n_physical - 1));
  apply_gates(state, code.encoder);
  return state;
}

StateVector prepare_block(const CodeSpec &code, const StateVector &logical,
                          int n_environment) {
  if (n_environment < 0) {
    throw Error("environment size must be nonnegative");
  }
  return encode(code, logical).tensor(StateVector(1 + n_environment));
}

// ---------------------------------------------------------------------------
// Noise

GateMatrix entangling_environment_gate() {
  // Environment vectors over the environment basis, scaled by 1/2.
  const Eigen::Vector2cd psi0(0.5, 0.0);
  const Eigen::Vector2cd psi1(0.0, 0.5);
  const Eigen::Vector2cd psi2(0.5, 0.0);
  const Eigen::Vector2cd psi3(0.0, -0.5);
  DenseMatrix m = DenseMatrix::Zero(4, 4);
  // Index = data + 2 env. |0>|0> -> |0>(Psi0+Psi2) + |1>(Psi1+Psi3).
  const Eigen::Vector2cd to00 = psi0 + psi2;
  const Eigen::Vector2cd to01 = psi1 + psi3;
  // |1>|0> -> |1>(Psi0-Psi2) + |0>(Psi1-Psi3).
  const Eigen::Vector2cd to11 = psi0 - psi2;
  const Eigen::Vector2cd to10 = psi1 - psi3;
  for (int e = 0; e < 2; ++e) {
    m(2 * e, 0) = to00(e);
    m(1 + 2 * e, 0) = to01(e);
    m(1 + 2 * e, 1) = to11(e);
    m(2 * e, 1) = to10(e);
  }
  // Complete the remaining columns (environment input |1>) by Gram-Schmidt.
  int col = 2;
  for (int b = 0; b < 4 && col < 4; ++b) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Unit(4, b);
    for (int c = 0; c < col; ++c) {
      v -= m.col(c).dot(v) * m.col(c);
    }
    if (v.norm() > 1e-9) {
      m.col(col++) = v.normalized();
    }
  }
  return GateMatrix(m, "E");
}

void apply_noise(StateVector &state, const NoiseEvent &event) {
  if (event.qubit < 0 || event.qubit >= state.n_qubits()) {
    throw Error("noise qubit " + std::to_string(event.qubit) + " out of range");
  }
  switch (event.kind) {
  case NoiseKind::BitFlip:
    apply_gate(state, gates::pauli_x(), {event.qubit});
    return;
  case NoiseKind::PhaseFlip:
    apply_gate(state, gates::pauli_z(), {event.qubit});
    return;
  case NoiseKind::PauliY:
    apply_gate(state, gates::pauli_y(), {event.qubit});
    return;
  case NoiseKind::GeneralUnitary:
    if (!event.unitary || event.unitary->arity() != 1) {
      throw Error("general unitary noise needs a single-qubit matrix");
    }
    apply_gate(state, *event.unitary, {event.qubit});
    return;
  case NoiseKind::EntanglingEnvironment: {
    const int env = event.environment_qubit;
    if (env < 0 || env >= state.n_qubits() || env == event.qubit) {
      throw Error("entangling-environment noise needs an environment qubit");
    }
    const std::vector<int> env_list{env};
    if (marginal_probabilities(state, env_list)[1] > kNormTolerance) {
      throw Error("environment qubit must start in |0>");
    }
    apply_gate(state, entangling_environment_gate(), {event.qubit, env});
    return;
  }
  }
}

// ---------------------------------------------------------------------------
// Syndromes and correction

CorrectionReport correct(const CodeSpec &code, StateVector &state,
                         RngStream &rng) {
  const int anc = code.ancilla();
  if (state.n_qubits() <= anc) {
    throw Error("state lacks the syndrome ancilla qubit");
  }
  const std::vector<int> anc_list{anc};
  CorrectionReport report;
  for (const auto &stage : code.syndrome_plan) {
    apply_gates(state, stage.pre);
    for (const auto &check : stage.checks) {
      fan_in(state, check, anc);
      const std::uint64_t bit = measure_subset(state, anc_list, rng);
      if (bit != 0) {
        apply_gate(state, gates::pauli_x(), {anc});
      }
      report.syndrome |= bit << report.syndrome_bits;
      ++report.syndrome_bits;
    }
    apply_gates(state, stage.post);
  }
  if (report.syndrome == 0) {
    return report;
  }
  const auto entry = code.correction_table.find(report.syndrome);
  if (entry == code.correction_table.end()) {
    report.uncorrectable = true;
    return report;
  }
  for (const auto &op : entry->second) {
    apply_gate(state, op);
    report.applied.push_back(op);
  }
  return report;
}

namespace {

using BranchVisitor =
    std::function<void(std::uint64_t syndrome, double weight, StateVector &)>;

// Visits every syndrome outcome with its probability and post-measurement
// state (ancilla reset to |0>).
void for_each_syndrome_branch(const CodeSpec &code, const StateVector &state,
                              const BranchVisitor &visit) {
  const int anc = code.ancilla();
  if (state.n_qubits() <= anc) {
    throw Error("state lacks the syndrome ancilla qubit");
  }
  struct Item {
    const Circuit *gates = nullptr;
    const ParityCheck *check = nullptr;
  };
  std::vector<Item> items;
  for (const auto &stage : code.syndrome_plan) {
    items.push_back({&stage.pre, nullptr});
    for (const auto &check : stage.checks) {
      items.push_back({nullptr, &check});
    }
    items.push_back({&stage.post, nullptr});
  }
  const std::vector<int> anc_list{anc};
  std::function<void(StateVector, std::size_t, std::size_t, std::uint64_t,
                     double)>
      walk = [&](StateVector s, std::size_t item, std::size_t bit,
                 std::uint64_t syndrome, double weight) {
        for (; item < items.size() && items[item].gates != nullptr; ++item) {
          apply_gates(s, *items[item].gates);
        }
        if (item == items.size()) {
          visit(syndrome, weight, s);
          return;
        }
        fan_in(s, *items[item].check, anc);
        const auto probs = marginal_probabilities(s, anc_list);
        for (std::uint64_t outcome = 0; outcome < 2; ++outcome) {
          const double p = probs[outcome];
          if (p * weight < kBranchFloor) {
            continue;
          }
          StateVector branch = s;
          project(branch, anc_list, outcome);
          if (outcome == 1) {
            apply_gate(branch, gates::pauli_x(), {anc});
          }
          walk(std::move(branch), item + 1, bit + 1,
               syndrome | (outcome << bit), weight * p);
        }
      };
  walk(state, 0, 0, 0, 1.0);
}

} // namespace

std::map<std::uint64_t, double> syndrome_distribution(const CodeSpec &code,
                                                      const StateVector &state) {
  std::map<std::uint64_t, double> out;
  for_each_syndrome_branch(
      code, state, [&](std::uint64_t syndrome, double weight, StateVector &) {
        out[syndrome] += weight;
      });
  return out;
}

double expected_corrected_fidelity(const CodeSpec &code,
                                   const StateVector &state,
                                   const StateVector &logical) {
  double total = 0.0;
  for_each_syndrome_branch(
      code, state, [&](std::uint64_t syndrome, double weight, StateVector &s) {
        const auto entry = code.correction_table.find(syndrome);
        if (entry != code.correction_table.end()) {
          for (const auto &op : entry->second) {
            apply_gate(s, op);
          }
        }
        total += weight * logical_fidelity(code, s, logical);
      });
  return total;
}

double syndrome_dependence(const CodeSpec &code, const NoiseEvent &event,
                           std::span<const StateVector> logicals,
                           int n_environment) {
  if (logicals.empty()) {
    return 0.0;
  }
  std::vector<std::map<std::uint64_t, double>> dists;
  for (const auto &logical : logicals) {
    StateVector s = prepare_block(code, logical, n_environment);
    apply_noise(s, event);
    dists.push_back(syndrome_distribution(code, s));
  }
  double worst = 0.0;
  for (std::size_t i = 1; i < dists.size(); ++i) {
    std::map<std::uint64_t, double> keys = dists[0];
    keys.insert(dists[i].begin(), dists[i].end());
    for (const auto &[syndrome, unused] : keys) {
      const auto a = dists[0].find(syndrome);
      const auto b = dists[i].find(syndrome);
      const double pa = a == dists[0].end() ? 0.0 : a->second;
      const double pb = b == dists[i].end() ? 0.0 : b->second;
      worst = std::max(worst, std::abs(pa - pb));
    }
  }
  return worst;
}

PrivacyReport syndrome_privacy_check(const CodeSpec &code, RngStream &rng,
                                     int n_states) {
  std::vector<StateVector> logicals;
  logicals.emplace_back(1, 0);
  logicals.emplace_back(1, 1);
  logicals.push_back(StateVector::from_amplitudes(
      {Complex(1.0 / std::sqrt(2.0)), Complex(1.0 / std::sqrt(2.0))}));
  for (int i = 0; i < n_states; ++i) {
    logicals.push_back(random_state(1, rng));
  }

  PrivacyReport report;
  auto run_case = [&](const std::string &label, int qubit,
                      std::optional<NoiseKind> kind) {
    PrivacyCase c{label, qubit, 0.0, true};
    std::vector<std::map<std::uint64_t, double>> dists;
    for (const auto &logical : logicals) {
      StateVector s = prepare_block(code, logical);
      if (kind) {
        apply_noise(s, NoiseEvent{*kind, qubit, std::nullopt, -1});
      }
      dists.push_back(syndrome_distribution(code, s));
    }
    for (const auto &d : dists) {
      const bool single = d.size() == 1 && std::abs(d.begin()->second - 1.0) < 1e-9;
      c.deterministic = c.deterministic && single;
      for (const auto &[syndrome, p] : d) {
        const auto ref = dists[0].find(syndrome);
        const double pr = ref == dists[0].end() ? 0.0 : ref->second;
        c.max_deviation = std::max(c.max_deviation, std::abs(p - pr));
      }
      for (const auto &[syndrome, p] : dists[0]) {
        if (!d.contains(syndrome)) {
          c.max_deviation = std::max(c.max_deviation, p);
        }
      }
    }
    report.max_deviation = std::max(report.max_deviation, c.max_deviation);
    report.independent = report.independent && c.max_deviation < 1e-9;
    report.cases.push_back(c);
  };

  run_case("none", -1, std::nullopt);
  for (int q = 0; q < code.n_physical; ++q) {
    run_case("x", q, NoiseKind::BitFlip);
    run_case("y", q, NoiseKind::PauliY);
    run_case("z", q, NoiseKind::PhaseFlip);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fidelities and scaling

double logical_fidelity(const CodeSpec &code, const StateVector &state,
                        const StateVector &logical) {
  check_logical(logical);
  StateVector decoded = state;
  apply_gates(decoded, code.encoder.inverse());
  const std::vector<int> keep{0};
  return subsystem_fidelity(decoded, keep, logical);
}

double block_fidelity(const StateVector &state, const StateVector &target) {
  if (target.n_qubits() > state.n_qubits()) {
    throw Error("block target is larger than the state");
  }
  const std::size_t block = target.size();
  const std::size_t rest = state.size() / block;
  double total = 0.0;
  for (std::size_t r = 0; r < rest; ++r) {
    Complex c{0.0, 0.0};
    for (std::size_t d = 0; d < block; ++d) {
      c += std::conj(target[d]) * state[d + r * block];
    }
    total += std::norm(c);
  }
  return total;
}

SyndromeProjector::SyndromeProjector(const CodeSpec &code)
    : code_(&code), decoder_(code.encoder.inverse()) {
  const int n = code.n_physical;
  const std::uint64_t rests = 1ULL << (n - 1);
  rest_syndrome_.resize(rests);
  for (std::uint64_t r = 0; r < rests; ++r) {
    StateVector s(n + 1, r << 1);
    apply_gates(s, code.encoder);
    const auto dist = syndrome_distribution(code, s);
    if (dist.size() != 1) {
      throw Error("encoder does not map basis states to syndrome eigenstates");
    }
    rest_syndrome_[r] = dist.begin()->first;
  }
  for (std::uint64_t syndrome : rest_syndrome_) {
    if (logical_action_.contains(syndrome)) {
      continue;
    }
    const auto entry = code.correction_table.find(syndrome);
    if (syndrome == 0 || entry == code.correction_table.end()) {
      logical_action_.emplace(syndrome, Eigen::Matrix2cd::Identity());
      continue;
    }
    // Column b is D C E |b, 0...0>, read off on the one rest pattern it hits.
    std::array<StateVector, 2> images{StateVector(n, 0), StateVector(n, 1)};
    for (auto &img : images) {
      apply_gates(img, code.encoder);
      for (const auto &op : entry->second) {
        apply_gate(img, op);
      }
      apply_gates(img, decoder_);
    }
    std::size_t peak = 0;
    for (std::size_t i = 0; i < images[0].size(); ++i) {
      if (std::norm(images[0][i]) > std::norm(images[0][peak])) {
        peak = i;
      }
    }
    const std::size_t rest_bits = peak & ~std::size_t{1};
    Eigen::Matrix2cd m;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        m(a, b) = images[static_cast<std::size_t>(b)][rest_bits | static_cast<std::size_t>(a)];
      }
    }
    logical_action_.emplace(syndrome, m);
  }
}

std::uint64_t SyndromeProjector::syndrome_of_rest(std::uint64_t rest) const {
  return rest_syndrome_.at(rest);
}

double SyndromeProjector::corrected_fidelity(const StateVector &state,
                                             const StateVector &logical) const {
  check_logical(logical);
  if (state.n_qubits() < code_->n_physical) {
    throw Error("state is smaller than the code block");
  }
  StateVector decoded = state;
  apply_gates(decoded, decoder_);
  // Unnormalized qubit-0 density blocks per syndrome class.
  std::map<std::uint64_t, Eigen::Matrix2cd> blocks;
  const std::uint64_t rest_mask = (1ULL << (code_->n_physical - 1)) - 1;
  for (std::size_t i = 0; i < decoded.size(); i += 2) {
    const Complex a0 = decoded[i];
    const Complex a1 = decoded[i + 1];
    if (a0 == Complex{} && a1 == Complex{}) {
      continue;
    }
    const std::uint64_t syndrome = rest_syndrome_[(i >> 1) & rest_mask];
    auto [it, fresh] = blocks.try_emplace(syndrome, Eigen::Matrix2cd::Zero());
    it->second(0, 0) += a0 * std::conj(a0);
    it->second(0, 1) += a0 * std::conj(a1);
    it->second(1, 0) += a1 * std::conj(a0);
    it->second(1, 1) += a1 * std::conj(a1);
  }
  const Eigen::Vector2cd target(logical[0], logical[1]);
  double total = 0.0;
  for (const auto &[syndrome, rho] : blocks) {
    const Eigen::Matrix2cd &m = logical_action_.at(syndrome);
    const Eigen::Vector2cd probe = m.adjoint() * target;
    total += std::real(probe.dot(rho * probe));
  }
  return total;
}

GateMatrix random_axis_error(double epsilon, RngStream &rng) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw Error("error strength must lie in [0, 1]");
  }
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;
  double len = 0.0;
  while (len < 1e-6) {
    ax = rng.normal();
    ay = rng.normal();
    az = rng.normal();
    len = std::sqrt(ax * ax + ay * ay + az * az);
  }
  const double theta = 2.0 * std::asin(std::sqrt(epsilon));
  return gates::axis_rotation(theta, ax / len, ay / len, az / len);
}

ScalingReport error_scaling_experiment(const CodeSpec &code,
                                       std::span<const double> epsilons,
                                       int trials, const RngStream &rng,
                                       SyndromeAveraging averaging) {
  if (trials < 1) {
    throw Error("trial count must be positive");
  }
  const SyndromeProjector projector(code);
  ScalingReport report;
  for (double eps : epsilons) {
    if (!(eps >= 0.0 && eps <= 0.3)) {
      throw Error("error strength must lie in [0, 0.3]");
    }
    double uncorrected = 0.0;
    double corrected = 0.0;
    for (int t = 0; t < trials; ++t) {
      // Same child stream at every strength: common random numbers.
      RngStream r = rng.split(static_cast<std::uint64_t>(t));
      const StateVector logical = random_state(1, r);
      StateVector s = prepare_block(code, logical);
      for (int q = 0; q < code.n_physical; ++q) {
        apply_gate(s, random_axis_error(eps, r), {q});
      }
      uncorrected += std::max(0.0, 1.0 - logical_fidelity(code, s, logical));
      double fid = 0.0;
      if (averaging == SyndromeAveraging::Exact) {
        fid = projector.corrected_fidelity(s, logical);
      } else {
        correct(code, s, r);
        fid = logical_fidelity(code, s, logical);
      }
      corrected += std::max(0.0, 1.0 - fid);
    }
    report.points.push_back(
        ScalingPoint{eps, uncorrected / trials, corrected / trials});
  }
  std::vector<double> xs;
  std::vector<double> u;
  std::vector<double> c;
  for (const auto &p : report.points) {
    xs.push_back(p.epsilon);
    u.push_back(p.uncorrected);
    c.push_back(p.corrected);
  }
  report.uncorrected_slope = loglog_slope(xs, u);
  report.corrected_slope = loglog_slope(xs, c);
  return report;
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw Error("loglog_slope: length mismatch");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] > 0.0 && ys[i] > 0.0) {
      lx.push_back(std::log(xs[i]));
      ly.push_back(std::log(ys[i]));
    }
  }
  if (lx.size() < 2) {
    return 0.0;
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

} // namespace qsim
