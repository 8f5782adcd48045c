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
#include "qsim/simcore.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <bit>
#include <numbers>
#include <ostream>
#include <sstream>
#include <iomanip>

#include "qsim/error.hpp"

namespace qsim {

namespace {

void check_qubit_count(int n_qubits, int qubit_cap) {
  if (n_qubits < 1) {
    throw Error("state needs at least one qubit");
  }
  if (n_qubits > qubit_cap || n_qubits > 30) {
    throw Error("qubit count " + std::to_string(n_qubits) +
                " exceeds cap " + std::to_string(qubit_cap));
  }
}

void check_distinct(std::span<const int> qubits, int n_qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= n_qubits) {
      throw Error("qubit index " + std::to_string(qubits[i]) +
                  " out of range for " + std::to_string(n_qubits) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) {
        throw Error("repeated qubit index " + std::to_string(qubits[i]));
      }
    }
  }
}

std::uint64_t scatter_bits(std::uint64_t local, std::span<const int> qubits) {
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    index |= ((local >> j) & 1ULL) << qubits[j];
  }
  return index;
}

std::uint64_t gather_bits(std::uint64_t index, std::span<const int> qubits) {
  std::uint64_t local = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    local |= ((index >> qubits[j]) & 1ULL) << j;
  }
  return local;
}

std::uint64_t mask_of(std::span<const int> qubits) {
  std::uint64_t mask = 0;
  for (int q : qubits) {
    mask |= 1ULL << q;
  }
  return mask;
}

} // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(int n_qubits, std::uint64_t index, int qubit_cap)
    : n_qubits_(n_qubits) {
  check_qubit_count(n_qubits, qubit_cap);
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) {
    throw Error("basis index " + std::to_string(index) + " out of range for " +
                std::to_string(n_qubits) + " qubits");
  }
  amps_.assign(dim, Complex{0.0, 0.0});
  amps_[index] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amps,
                                         int qubit_cap) {
  const std::size_t dim = amps.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw Error("amplitude count must be a power of two >= 2");
  }
  const int n = std::countr_zero(dim);
  check_qubit_count(n, qubit_cap);
  StateVector s;
  s.n_qubits_ = n;
  s.amps_ = std::move(amps);
  for (const auto &a : s.amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error("non-finite amplitude");
    }
  }
  if (s.norm_deviation() > kNormTolerance) {
    throw Error("amplitudes are not normalized");
  }
  return s;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto &a : amps_) {
    total += std::norm(a);
  }
  return total;
}

double StateVector::norm_deviation() const {
  return std::abs(norm_squared() - 1.0);
}

StateVector StateVector::tensor(const StateVector &other,
                                int qubit_cap) const {
  check_qubit_count(n_qubits_ + other.n_qubits_, qubit_cap);
  StateVector s;
  s.n_qubits_ = n_qubits_ + other.n_qubits_;
  s.amps_.resize(amps_.size() * other.amps_.size());
  for (std::size_t hi = 0; hi < other.amps_.size(); ++hi) {
    for (std::size_t lo = 0; lo < amps_.size(); ++lo) {
      s.amps_[hi * amps_.size() + lo] = other.amps_[hi] * amps_[lo];
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Gate matrices

bool is_unitary(const DenseMatrix &m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  const DenseMatrix prod = m.adjoint() * m;
  const DenseMatrix eye = DenseMatrix::Identity(m.rows(), m.cols());
  return (prod - eye).cwiseAbs().maxCoeff() <= tol;
}

GateMatrix::GateMatrix(DenseMatrix m, std::string name)
    : matrix_(std::move(m)), name_(std::move(name)) {
  const auto dim = matrix_.rows();
  if (matrix_.cols() != dim || (dim != 2 && dim != 4 && dim != 8)) {
    throw Error("gate matrix must be 2x2, 4x4 or 8x8");
  }
  arity_ = dim == 2 ? 1 : (dim == 4 ? 2 : 3);
  if (!is_unitary(matrix_)) {
    throw Error("gate matrix '" + name_ + "' is not unitary");
  }
}

GateMatrix GateMatrix::adjoint() const {
  return GateMatrix(matrix_.adjoint(), name_ + "^dag");
}

namespace gates {

GateMatrix identity() { return GateMatrix(DenseMatrix::Identity(2, 2), "I"); }

GateMatrix hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  DenseMatrix m(2, 2);
  m << r, r, r, -r;
  return GateMatrix(m, "H");
}

GateMatrix pauli_x() {
  DenseMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return GateMatrix(m, "X");
}

GateMatrix pauli_y() {
  DenseMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return GateMatrix(m, "Y");
}

GateMatrix pauli_z() {
  DenseMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return GateMatrix(m, "Z");
}

GateMatrix phase_s() {
  DenseMatrix m(2, 2);
  m << 1, 0, 0, Complex(0, 1);
  return GateMatrix(m, "S");
}

GateMatrix phase(double theta) {
  DenseMatrix m(2, 2);
  m << 1, 0, 0, std::polar(1.0, theta);
  return GateMatrix(m, "P");
}

GateMatrix cnot() {
  // Local index = control + 2 * target.
  DenseMatrix m = DenseMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(2, 2) = 1;
  m(3, 1) = 1;
  m(1, 3) = 1;
  return GateMatrix(m, "CNOT");
}

GateMatrix controlled_phase(double theta) {
  DenseMatrix m = DenseMatrix::Identity(4, 4);
  m(3, 3) = std::polar(1.0, theta);
  return GateMatrix(m, "CP");
}

GateMatrix swap() {
  DenseMatrix m = DenseMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 2) = 1;
  m(2, 1) = 1;
  m(3, 3) = 1;
  return GateMatrix(m, "SWAP");
}

GateMatrix toffoli() {
  // Local index = c0 + 2 c1 + 4 t; flip t when both controls are set.
  DenseMatrix m = DenseMatrix::Identity(8, 8);
  m(3, 3) = 0;
  m(7, 7) = 0;
  m(7, 3) = 1;
  m(3, 7) = 1;
  return GateMatrix(m, "CCX");
}

GateMatrix axis_rotation(double angle, double ax, double ay, double az) {
  const double len = std::sqrt(ax * ax + ay * ay + az * az);
  if (std::abs(len - 1.0) > 1e-12) {
    throw Error("rotation axis must be a unit vector");
  }
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const Complex i(0.0, 1.0);
  DenseMatrix m(2, 2);
  m << c - i * s * az, -i * s * ax - s * ay,
       -i * s * ax + s * ay, c + i * s * az;
  return GateMatrix(m, "R");
}

} // namespace gates

GateMatrix random_unitary(int arity, RngStream &rng) {
  if (arity < 1 || arity > 3) {
    throw Error("random_unitary: arity must be 1..3");
  }
  const int dim = 1 << arity;
  DenseMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(r, c) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(dim, dim);
  const DenseMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    const double mag = std::abs(d);
    if (mag > 0) {
      q.col(c) *= d / mag;
    }
  }
  return GateMatrix(q, "Haar");
}

StateVector random_state(int n_qubits, RngStream &rng, int qubit_cap) {
  check_qubit_count(n_qubits, qubit_cap);
  std::vector<Complex> amps(std::size_t{1} << n_qubits);
  double norm = 0.0;
  for (auto &a : amps) {
    const double re = rng.normal();
    const double im = rng.normal();
    a = Complex(re, im);
    norm += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm);
  for (auto &a : amps) {
    a *= scale;
  }
  return StateVector::from_amplitudes(std::move(amps), qubit_cap);
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1) {
    throw Error("circuit needs at least one qubit");
  }
}

std::size_t Circuit::gate_count() const {
  return static_cast<std::size_t>(std::count_if(
      steps_.begin(), steps_.end(),
      [](const CircuitStep &s) { return std::holds_alternative<GateOp>(s); }));
}

void Circuit::check_targets(std::span<const int> qubits) const {
  check_distinct(qubits, n_qubits_);
}

Circuit &Circuit::add(GateMatrix gate, std::vector<int> targets) {
  if (static_cast<int>(targets.size()) != gate.arity()) {
    throw Error("gate '" + gate.name() + "' expects " +
                std::to_string(gate.arity()) + " targets");
  }
  check_targets(targets);
  steps_.emplace_back(GateOp{std::move(gate), std::move(targets)});
  return *this;
}

Circuit &Circuit::measure(std::vector<int> qubits) {
  if (qubits.empty()) {
    throw Error("measurement needs at least one qubit");
  }
  check_targets(qubits);
  steps_.emplace_back(Measurement{std::move(qubits)});
  return *this;
}

Circuit &Circuit::append(const Circuit &other, std::span<const int> qubit_map) {
  if (static_cast<int>(qubit_map.size()) != other.n_qubits()) {
    throw Error("append: qubit map size mismatch");
  }
  auto remap = [&](const std::vector<int> &qs) {
    std::vector<int> out;
    out.reserve(qs.size());
    for (int q : qs) {
      out.push_back(qubit_map[q]);
    }
    return out;
  };
  for (const auto &step : other.steps()) {
    if (const auto *g = std::get_if<GateOp>(&step)) {
      add(g->gate, remap(g->targets));
    } else {
      measure(remap(std::get<Measurement>(step).qubits));
    }
  }
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit inv(n_qubits_);
  for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
    const auto *g = std::get_if<GateOp>(&*it);
    if (g == nullptr) {
      throw Error("cannot invert a circuit containing measurements");
    }
    inv.add(g->gate.adjoint(), g->targets);
  }
  return inv;
}

// ---------------------------------------------------------------------------
// Kernels

namespace kernels {

namespace {

inline Complex cmul(const Complex &a, const Complex &b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

// Inserts a zero bit at each position of `sorted_bits` (ascending).
inline std::uint64_t spread(std::uint64_t j, const std::array<int, 3> &sorted_bits,
                            std::size_t k) {
  for (std::size_t t = 0; t < k; ++t) {
    const std::uint64_t low = j & ((1ULL << sorted_bits[t]) - 1);
    j = ((j >> sorted_bits[t]) << (sorted_bits[t] + 1)) | low;
  }
  return j;
}

} // namespace

void apply_matrix(std::span<Complex> amps, std::span<const int> targets,
                  const DenseMatrix &m) {
  const std::size_t k = targets.size();
  const std::size_t dim = std::size_t{1} << k;
  if (k < 1 || k > 3 || static_cast<std::size_t>(m.rows()) != dim ||
      static_cast<std::size_t>(m.cols()) != dim) {
    throw Error("apply_matrix: matrix size does not match target count");
  }
  std::array<std::uint64_t, 8> offsets{};
  for (std::size_t local = 0; local < dim; ++local) {
    offsets[local] = scatter_bits(local, targets);
  }
  std::array<int, 3> sorted{};
  std::copy(targets.begin(), targets.end(), sorted.begin());
  std::sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k));

  // Row-major copy; a monomial matrix keeps one entry per row.
  std::array<Complex, 64> mat{};
  std::array<std::size_t, 8> source{};
  bool monomial = true;
  for (std::size_t r = 0; r < dim; ++r) {
    int nonzero = 0;
    for (std::size_t c = 0; c < dim; ++c) {
      const Complex v = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      mat[r * dim + c] = v;
      if (v != Complex{0.0, 0.0}) {
        ++nonzero;
        source[r] = c;
      }
    }
    monomial = monomial && nonzero == 1;
  }

  const std::size_t groups = amps.size() >> k;
  std::array<Complex, 8> in{};
  for (std::size_t g = 0; g < groups; ++g) {
    const std::uint64_t base = spread(g, sorted, k);
    for (std::size_t j = 0; j < dim; ++j) {
      in[j] = amps[base | offsets[j]];
    }
    if (monomial) {
      for (std::size_t r = 0; r < dim; ++r) {
        amps[base | offsets[r]] = cmul(mat[r * dim + source[r]], in[source[r]]);
      }
      continue;
    }
    for (std::size_t r = 0; r < dim; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < dim; ++c) {
        acc += cmul(mat[r * dim + c], in[c]);
      }
      amps[base | offsets[r]] = acc;
    }
  }
}

} // namespace kernels

void apply_gate(StateVector &state, const GateOp &op) {
  if (static_cast<int>(op.targets.size()) != op.gate.arity()) {
    throw Error("gate '" + op.gate.name() + "' expects " +
                std::to_string(op.gate.arity()) + " targets");
  }
  check_distinct(op.targets, state.n_qubits());
  kernels::apply_matrix(state.mutable_amplitudes(), op.targets,
                        op.gate.matrix());
}

void apply_gate(StateVector &state, const GateMatrix &gate,
                std::vector<int> targets) {
  apply_gate(state, GateOp{gate, std::move(targets)});
}

std::vector<MeasurementRecord> run_circuit(const Circuit &circuit,
                                           StateVector &state,
                                           RngStream &rng) {
  if (circuit.n_qubits() != state.n_qubits()) {
    throw Error("circuit has " + std::to_string(circuit.n_qubits()) +
                " qubits but state has " + std::to_string(state.n_qubits()));
  }
  std::vector<MeasurementRecord> records;
  for (const auto &step : circuit.steps()) {
    if (const auto *g = std::get_if<GateOp>(&step)) {
      apply_gate(state, *g);
    } else {
      const auto &m = std::get<Measurement>(step);
      const std::uint64_t outcome = measure_subset(state, m.qubits, rng);
      records.push_back(MeasurementRecord{m.qubits, outcome});
    }
  }
  return records;
}

// ---------------------------------------------------------------------------
// Measurement

std::vector<double> marginal_probabilities(const StateVector &state,
                                           std::span<const int> qubits) {
  if (qubits.empty()) {
    throw Error("marginal over an empty qubit list");
  }
  if (qubits.size() > 24) {
    throw Error("marginal over too many qubits");
  }
  check_distinct(qubits, state.n_qubits());
  std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    probs[gather_bits(i, qubits)] += std::norm(amps[i]);
  }
  return probs;
}

double project(StateVector &state, std::span<const int> qubits,
               std::uint64_t outcome) {
  const auto probs = marginal_probabilities(state, qubits);
  if (outcome >= probs.size()) {
    throw Error("projection outcome out of range");
  }
  const double p = probs[outcome];
  if (p <= 0.0) {
    throw Error("projection onto a zero-probability outcome");
  }
  const double scale = 1.0 / std::sqrt(p);
  auto amps = state.mutable_amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (gather_bits(i, qubits) == outcome) {
      amps[i] *= scale;
    } else {
      amps[i] = 0.0;
    }
  }
  return p;
}

std::uint64_t measure_subset(StateVector &state, std::span<const int> qubits,
                             RngStream &rng) {
  const auto probs = marginal_probabilities(state, qubits);
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::uint64_t outcome = probs.size();
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0) {
      last_nonzero = k;
    }
    cumulative += probs[k];
    if (u < cumulative && probs[k] > 0.0) {
      outcome = k;
      break;
    }
  }
  if (outcome == probs.size()) {
    // Rounding left u beyond the accumulated mass.
    outcome = last_nonzero;
  }
  project(state, qubits, outcome);
  return outcome;
}

std::vector<double> probabilities(const StateVector &state) {
  std::vector<double> probs;
  probs.reserve(state.size());
  for (const auto &a : state.amplitudes()) {
    probs.push_back(std::norm(a));
  }
  return probs;
}

Complex inner_product(const StateVector &a, const StateVector &b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw Error("inner_product: qubit counts differ");
  }
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += std::conj(a[i]) * b[i];
  }
  return acc;
}

double fidelity(const StateVector &a, const StateVector &b) {
  return std::norm(inner_product(a, b));
}

DenseMatrix reduced_density_matrix(const StateVector &state,
                                   std::span<const int> keep) {
  if (keep.empty()) {
    throw Error("reduced_density_matrix: keep list is empty");
  }
  if (keep.size() > 6) {
    throw Error("reduced_density_matrix: at most 6 kept qubits");
  }
  check_distinct(keep, state.n_qubits());
  const std::size_t dim = std::size_t{1} << keep.size();
  const std::uint64_t kmask = mask_of(keep);
  std::array<std::uint64_t, 64> offsets{};
  for (std::size_t local = 0; local < dim; ++local) {
    offsets[local] = scatter_bits(local, keep);
  }
  DenseMatrix rho = DenseMatrix::Zero(static_cast<Eigen::Index>(dim),
                                      static_cast<Eigen::Index>(dim));
  const auto amps = state.amplitudes();
  for (std::size_t rest = 0; rest < amps.size(); ++rest) {
    if ((rest & kmask) != 0) {
      continue;
    }
    for (std::size_t r = 0; r < dim; ++r) {
      const Complex ar = amps[rest | offsets[r]];
      if (ar == Complex{0.0, 0.0}) {
        continue;
      }
      for (std::size_t c = 0; c < dim; ++c) {
        rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
            ar * std::conj(amps[rest | offsets[c]]);
      }
    }
  }
  return rho;
}

double subsystem_fidelity(const StateVector &state, std::span<const int> keep,
                          const StateVector &target) {
  check_distinct(keep, state.n_qubits());
  if (static_cast<int>(keep.size()) != target.n_qubits()) {
    throw Error("subsystem_fidelity: target size does not match keep list");
  }
  const std::size_t dim = target.size();
  const std::uint64_t kmask = mask_of(keep);
  std::vector<std::uint64_t> offsets(dim);
  for (std::size_t local = 0; local < dim; ++local) {
    offsets[local] = scatter_bits(local, keep);
  }
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::size_t rest = 0; rest < amps.size(); ++rest) {
    if ((rest & kmask) != 0) {
      continue;
    }
    Complex overlap{0.0, 0.0};
    for (std::size_t local = 0; local < dim; ++local) {
      overlap += std::conj(target[local]) * amps[rest | offsets[local]];
    }
    total += std::norm(overlap);
  }
  return total;
}

void write_amplitudes_csv(std::ostream &out, const StateVector &state) {
  out << "index,re,im\n";
  std::ostringstream line;
  line << std::setprecision(17);
  for (std::size_t i = 0; i < state.size(); ++i) {
    line.str("");
    line << i << ',' << state[i].real() << ',' << state[i].imag() << '\n';
    out << line.str();
  }
}

} // namespace qsim
