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
#include "qsim/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qsim/error.hpp"

namespace qsim {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kDegeneracyTolerance = 1e-9;

using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

std::uint64_t scatter(std::uint64_t local, std::span<const int> qubits) {
  std::uint64_t index = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    index |= ((local >> j) & 1ULL) << qubits[j];
  }
  return index;
}

std::uint64_t gather(std::uint64_t index, std::span<const int> qubits) {
  std::uint64_t local = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) {
    local |= ((index >> qubits[j]) & 1ULL) << j;
  }
  return local;
}

// out += M_support |in>
void accumulate_term(const LocalTerm &term, std::span<const Complex> in,
                     std::span<Complex> out) {
  const std::size_t dim = std::size_t{1} << term.support.size();
  std::array<std::uint64_t, 8> offsets{};
  std::uint64_t mask = 0;
  for (std::size_t l = 0; l < dim; ++l) {
    offsets[l] = scatter(l, term.support);
    mask |= offsets[l];
  }
  for (std::size_t base = 0; base < in.size(); ++base) {
    if ((base & mask) != 0) {
      continue;
    }
    for (std::size_t r = 0; r < dim; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < dim; ++c) {
        acc += term.matrix(static_cast<Eigen::Index>(r),
                           static_cast<Eigen::Index>(c)) *
               in[base | offsets[c]];
      }
      out[base | offsets[r]] += acc;
    }
  }
}

DenseMatrix unitary_exponential(const DenseMatrix &hermitian, double t) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(hermitian);
  const RealVector &w = solver.eigenvalues();
  ComplexVector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    phases(i) = std::polar(1.0, -w(i) * t);
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

double spectral_norm(const DenseMatrix &hermitian) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(hermitian,
                                                    Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void check_dense_cap(int n) {
  if (n > kDenseQubitCap) {
    throw Error("dense operations are capped at " +
                std::to_string(kDenseQubitCap) + " qubits, got " +
                std::to_string(n));
  }
}

StateVector to_state(const ComplexVector &v) {
  std::vector<Complex> amps(v.data(), v.data() + v.size());
  return StateVector::from_amplitudes(std::move(amps),
                                      std::max(kDefaultQubitCap, 30));
}

ComplexVector to_vector(const StateVector &s) {
  ComplexVector v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = s[i];
  }
  return v;
}

void check_same_size(const LocalHamiltonian &h, const StateVector &s) {
  if (h.n_qubits() != s.n_qubits()) {
    throw Error("Hamiltonian has " + std::to_string(h.n_qubits()) +
                " qubits but state has " + std::to_string(s.n_qubits()));
  }
}

} // namespace

// ---------------------------------------------------------------------------
// Terms and Hamiltonians

LocalTerm make_term(std::vector<int> support, DenseMatrix matrix) {
  if (support.empty() || support.size() > 3) {
    throw Error("local term support must have 1..3 qubits");
  }
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] < 0) {
      throw Error("negative qubit index in term support");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (support[i] == support[j]) {
        throw Error("repeated qubit in term support");
      }
    }
  }
  const auto dim = static_cast<Eigen::Index>(1) << support.size();
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw Error("term matrix must be " + std::to_string(dim) + "x" +
                std::to_string(dim));
  }
  if ((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw Error("term matrix is not Hermitian");
  }
  return LocalTerm{std::move(support), std::move(matrix)};
}

LocalHamiltonian::LocalHamiltonian(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kDefaultQubitCap) {
    throw Error("Hamiltonian qubit count out of range");
  }
}

LocalHamiltonian &LocalHamiltonian::add_term(LocalTerm term) {
  for (int q : term.support) {
    if (q >= n_qubits_) {
      throw Error("term support qubit " + std::to_string(q) +
                  " outside " + std::to_string(n_qubits_) + " qubits");
    }
  }
  term = make_term(std::move(term.support), std::move(term.matrix));
  terms_.push_back(std::move(term));
  return *this;
}

LocalHamiltonian &LocalHamiltonian::set_diagonal(std::vector<double> diagonal) {
  if (!diagonal.empty() && diagonal.size() != (std::size_t{1} << n_qubits_)) {
    throw Error("diagonal part must have 2^n entries");
  }
  diagonal_ = std::move(diagonal);
  return *this;
}

void LocalHamiltonian::apply(std::span<const Complex> in,
                             std::span<Complex> out) const {
  const std::size_t dim = std::size_t{1} << n_qubits_;
  if (in.size() != dim || out.size() != dim) {
    throw Error("Hamiltonian apply: vector size mismatch");
  }
  std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
  for (const auto &term : terms_) {
    accumulate_term(term, in, out);
  }
  if (!diagonal_.empty()) {
    for (std::size_t i = 0; i < dim; ++i) {
      out[i] += diagonal_[i] * in[i];
    }
  }
}

double LocalHamiltonian::norm_bound() const {
  double bound = 0.0;
  for (const auto &term : terms_) {
    bound += spectral_norm(term.matrix);
  }
  if (!diagonal_.empty()) {
    double max_abs = 0.0;
    for (double d : diagonal_) {
      max_abs = std::max(max_abs, std::abs(d));
    }
    bound += max_abs;
  }
  return bound;
}

namespace pauli {
DenseMatrix I() { return DenseMatrix::Identity(2, 2); }
DenseMatrix X() {
  DenseMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
DenseMatrix Y() {
  DenseMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
DenseMatrix Z() {
  DenseMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
} // namespace pauli

DenseMatrix kron(const DenseMatrix &high, const DenseMatrix &low) {
  DenseMatrix out(high.rows() * low.rows(), high.cols() * low.cols());
  for (Eigen::Index r = 0; r < high.rows(); ++r) {
    for (Eigen::Index c = 0; c < high.cols(); ++c) {
      out.block(r * low.rows(), c * low.cols(), low.rows(), low.cols()) =
          high(r, c) * low;
    }
  }
  return out;
}

DenseMatrix assemble_dense(const LocalHamiltonian &h) {
  check_dense_cap(h.n_qubits());
  const auto dim = static_cast<Eigen::Index>(1) << h.n_qubits();
  DenseMatrix out = DenseMatrix::Zero(dim, dim);
  for (const auto &term : h.terms()) {
    const std::uint64_t mask = scatter((1ULL << term.support.size()) - 1,
                                       term.support);
    const auto local_dim = static_cast<std::uint64_t>(term.matrix.rows());
    // Entry (r, c) is M(local(r), local(c)) when r and c agree off-support.
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(dim); ++c) {
      const std::uint64_t lc = gather(c, term.support);
      for (std::uint64_t lr = 0; lr < local_dim; ++lr) {
        const std::uint64_t r = (c & ~mask) | scatter(lr, term.support);
        out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
            term.matrix(static_cast<Eigen::Index>(lr),
                        static_cast<Eigen::Index>(lc));
      }
    }
  }
  for (std::size_t i = 0; i < h.diagonal().size(); ++i) {
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) +=
        h.diagonal()[i];
  }
  return out;
}

StateVector exact_evolve(const LocalHamiltonian &h, double t,
                         const StateVector &state) {
  check_same_size(h, state);
  const DenseMatrix u = unitary_exponential(assemble_dense(h), t);
  return to_state(u * to_vector(state));
}

StateVector trotter_evolve(const LocalHamiltonian &h, double t, int k,
                           const StateVector &state) {
  check_same_size(h, state);
  if (k < 1) {
    throw Error("Trotter step count must be >= 1");
  }
  const double dt = t / k;
  std::vector<DenseMatrix> steps;
  steps.reserve(h.terms().size());
  for (const auto &term : h.terms()) {
    steps.push_back(unitary_exponential(term.matrix, dt));
  }
  std::vector<Complex> diag_phase;
  for (double d : h.diagonal()) {
    diag_phase.push_back(std::polar(1.0, -d * dt));
  }
  StateVector out = state;
  auto amps = out.mutable_amplitudes();
  for (int sweep = 0; sweep < k; ++sweep) {
    for (std::size_t l = 0; l < steps.size(); ++l) {
      kernels::apply_matrix(amps, h.terms()[l].support, steps[l]);
    }
    for (std::size_t i = 0; i < diag_phase.size(); ++i) {
      amps[i] *= diag_phase[i];
    }
  }
  return out;
}

double expectation(const LocalHamiltonian &h, const StateVector &state) {
  check_same_size(h, state);
  std::vector<Complex> hpsi(state.size());
  h.apply(state.amplitudes(), hpsi);
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < state.size(); ++i) {
    acc += std::conj(state[i]) * hpsi[i];
  }
  return acc.real();
}

double state_distance(const StateVector &a, const StateVector &b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw Error("state_distance: qubit counts differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    total += std::norm(a[i] - b[i]);
  }
  return std::sqrt(total);
}

// ---------------------------------------------------------------------------
// Adiabatic

ProblemHamiltonian problem_hamiltonian(std::span<const double> costs) {
  const std::size_t dim = costs.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw Error("cost table length must be a power of two >= 2");
  }
  const int n = std::countr_zero(dim);
  LocalHamiltonian h(n);
  h.set_diagonal(std::vector<double>(costs.begin(), costs.end()));
  const double best = *std::min_element(costs.begin(), costs.end());
  std::vector<std::uint64_t> ground;
  for (std::size_t z = 0; z < dim; ++z) {
    if (std::abs(costs[z] - best) <= 1e-12) {
      ground.push_back(z);
    }
  }
  const bool unique = ground.size() == 1;
  return ProblemHamiltonian{std::move(h), std::move(ground), unique};
}

std::vector<double> grover_costs(int n_qubits,
                                 std::span<const std::uint64_t> marked) {
  std::vector<double> costs(std::size_t{1} << n_qubits, 1.0);
  for (auto x : marked) {
    if (x >= costs.size()) {
      throw Error("marked item outside the search space");
    }
    costs[x] = 0.0;
  }
  return costs;
}

LocalHamiltonian default_initial_hamiltonian(int n_qubits) {
  LocalHamiltonian h(n_qubits);
  const DenseMatrix term = (pauli::I() - pauli::X()) / 2.0;
  for (int q = 0; q < n_qubits; ++q) {
    h.add_term(make_term({q}, term));
  }
  return h;
}

std::size_t default_step_count(const LocalHamiltonian &h0,
                               const LocalHamiltonian &ht, double total_time) {
  const double norm = std::max(h0.norm_bound(), ht.norm_bound());
  const double wanted = std::ceil(200.0 * total_time * norm);
  return std::max<std::size_t>(1000, static_cast<std::size_t>(wanted));
}

namespace {

// Integrates from s_begin to s_end (each in [0, 1]) over `total_time`.
double integrate(const LocalHamiltonian &h0, const LocalHamiltonian &ht,
                 double total_time, std::size_t steps, double s_begin,
                 double s_end, std::vector<Complex> &psi) {
  const std::size_t dim = psi.size();
  std::vector<Complex> a(dim), b(dim), k1(dim), k2(dim), k3(dim), k4(dim),
      tmp(dim);
  const double dt = total_time / static_cast<double>(steps);
  const Complex minus_i(0.0, -1.0);

  // deriv = -i H(s) v
  auto deriv = [&](double s, const std::vector<Complex> &v,
                   std::vector<Complex> &out) {
    h0.apply(v, a);
    ht.apply(v, b);
    for (std::size_t i = 0; i < dim; ++i) {
      out[i] = minus_i * ((1.0 - s) * a[i] + s * b[i]);
    }
  };
  auto s_at = [&](double frac) { return s_begin + (s_end - s_begin) * frac; };

  double max_drift = 0.0;
  for (std::size_t step = 0; step < steps; ++step) {
    const double f0 = static_cast<double>(step) / static_cast<double>(steps);
    const double fh = (static_cast<double>(step) + 0.5) /
                      static_cast<double>(steps);
    const double f1 = static_cast<double>(step + 1) /
                      static_cast<double>(steps);
    deriv(s_at(f0), psi, k1);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * dt * k1[i];
    deriv(s_at(fh), tmp, k2);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + 0.5 * dt * k2[i];
    deriv(s_at(fh), tmp, k3);
    for (std::size_t i = 0; i < dim; ++i) tmp[i] = psi[i] + dt * k3[i];
    deriv(s_at(f1), tmp, k4);
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      norm += std::norm(psi[i]);
    }
    const double drift = std::abs(norm - 1.0);
    if (drift > kStepDriftBudget) {
      throw Error("adiabatic integration: norm drift " + std::to_string(drift) +
                  " in one step exceeds budget; increase the step count");
    }
    max_drift = std::max(max_drift, drift);
    const double scale = 1.0 / std::sqrt(norm);
    for (auto &x : psi) {
      x *= scale;
    }
  }
  return max_drift;
}

void check_pair(const LocalHamiltonian &h0, const LocalHamiltonian &ht,
                const StateVector &initial) {
  if (h0.n_qubits() != ht.n_qubits()) {
    throw Error("H_0 and H_T act on different qubit counts");
  }
  check_same_size(h0, initial);
}

} // namespace

AdiabaticResult adiabatic_run(const LocalHamiltonian &h0,
                              const LocalHamiltonian &ht,
                              const AdiabaticSchedule &schedule,
                              const StateVector &initial,
                              std::span<const std::uint64_t> targets) {
  check_pair(h0, ht, initial);
  if (!(schedule.total_time > 0.0)) {
    throw Error("adiabatic run time must be positive");
  }
  const std::size_t steps =
      schedule.steps > 0 ? schedule.steps
                         : default_step_count(h0, ht, schedule.total_time);
  std::vector<Complex> psi(initial.amplitudes().begin(),
                           initial.amplitudes().end());
  const double drift =
      integrate(h0, ht, schedule.total_time, steps, 0.0, 1.0, psi);
  AdiabaticResult result{StateVector::from_amplitudes(std::move(psi)), 0.0,
                         steps, drift};
  for (auto z : targets) {
    if (z >= result.state.size()) {
      throw Error("target index outside the state");
    }
    result.success_probability += std::norm(result.state[z]);
  }
  return result;
}

double round_trip_check(const LocalHamiltonian &h0, const LocalHamiltonian &ht,
                        const AdiabaticSchedule &schedule,
                        const StateVector &initial) {
  check_pair(h0, ht, initial);
  if (!(schedule.total_time > 0.0)) {
    throw Error("adiabatic run time must be positive");
  }
  const std::size_t steps =
      schedule.steps > 0 ? schedule.steps
                         : default_step_count(h0, ht, schedule.total_time);
  std::vector<Complex> psi(initial.amplitudes().begin(),
                           initial.amplitudes().end());
  integrate(h0, ht, schedule.total_time, steps, 0.0, 1.0, psi);
  integrate(h0, ht, schedule.total_time, steps, 1.0, 0.0, psi);
  const StateVector final_state = StateVector::from_amplitudes(std::move(psi));
  return fidelity(initial, final_state);
}

namespace {

GapSample analyse_point(const DenseMatrix &a0, const DenseMatrix &at,
                        double s) {
  const DenseMatrix hs = (1.0 - s) * a0 + s * at;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(hs);
  const RealVector &w = solver.eigenvalues();
  const DenseMatrix &v = solver.eigenvectors();
  GapSample g;
  g.s = s;
  g.e0 = w(0);
  g.e1 = w(1);
  g.gap = std::max(0.0, g.e1 - g.e0);
  g.degenerate = g.gap < kDegeneracyTolerance;
  if (!g.degenerate) {
    const ComplexVector drive = (at - a0) * v.col(0);
    double sq = 0.0;
    for (Eigen::Index j = 1; j < w.size(); ++j) {
      if (std::abs(w(j) - g.e1) > kDegeneracyTolerance * std::max(1.0, std::abs(g.e1))) {
        break;
      }
      sq += std::norm(v.col(j).dot(drive));
    }
    g.coupling = std::sqrt(sq);
  }
  return g;
}

} // namespace

GapReport gap_scan(const LocalHamiltonian &h0, const LocalHamiltonian &ht,
                   int samples) {
  if (h0.n_qubits() != ht.n_qubits()) {
    throw Error("H_0 and H_T act on different qubit counts");
  }
  if (samples < 2) {
    throw Error("gap scan needs at least two samples");
  }
  const DenseMatrix a0 = assemble_dense(h0);
  const DenseMatrix at = assemble_dense(ht);
  GapReport report;
  report.delta_min = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / (samples - 1);
    report.samples.push_back(analyse_point(a0, at, s));
    if (report.samples.back().gap < report.delta_min) {
      report.delta_min = report.samples.back().gap;
      best = report.samples.size() - 1;
    }
  }
  // Golden-section refinement inside the two neighbouring grid cells.
  const double step = 1.0 / (samples - 1);
  double lo = std::max(0.0, report.samples[best].s - step);
  double hi = std::min(1.0, report.samples[best].s + step);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double g1 = analyse_point(a0, at, x1).gap;
  double g2 = analyse_point(a0, at, x2).gap;
  while (hi - lo > 1e-4) {
    if (g1 < g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - ratio * (hi - lo);
      g1 = analyse_point(a0, at, x1).gap;
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + ratio * (hi - lo);
      g2 = analyse_point(a0, at, x2).gap;
    }
  }
  const GapSample refined = analyse_point(a0, at, 0.5 * (lo + hi));
  report.samples.push_back(refined);

  report.delta_min = std::numeric_limits<double>::infinity();
  for (const auto &g : report.samples) {
    if (g.gap < report.delta_min) {
      report.delta_min = g.gap;
      report.s_at_min = g.s;
    }
    report.theta = std::max(report.theta, g.coupling);
    report.degenerate = report.degenerate || g.degenerate;
  }
  return report;
}

double adiabatic_bound(const GapReport &report, double epsilon) {
  if (!(report.delta_min > 0.0) || report.degenerate) {
    throw Error("adiabatic bound needs a nonzero minimal gap");
  }
  if (!(epsilon > 0.0)) {
    throw Error("epsilon must be positive");
  }
  return report.theta / (report.delta_min * report.delta_min * epsilon);
}

StateVector ground_state(const LocalHamiltonian &h) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(assemble_dense(h));
  ComplexVector v = solver.eigenvectors().col(0);
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  v *= std::abs(v(arg)) / v(arg);
  v.normalize();
  return to_state(v);
}

// ---------------------------------------------------------------------------
// Files

namespace {

bool next_content_line(std::istream &in, std::string &line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    return true;
  }
  return false;
}

double parse_double(const std::string &text, const std::string &what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception &) {
    throw Error("cannot parse " + what + " '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw Error("cannot parse " + what + " '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string &text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, sep)) {
    parts.push_back(item);
  }
  return parts;
}

} // namespace

LocalHamiltonian read_hamiltonian(std::istream &in) {
  std::string line;
  if (!next_content_line(in, line) || line.rfind("qubits:", 0) != 0) {
    throw Error("Hamiltonian file must start with 'qubits: <n>'");
  }
  const double n_value = parse_double(
      line.substr(line.find_first_not_of(" \t", 7)), "qubit count");
  if (n_value != std::floor(n_value) || n_value < 1 ||
      n_value > kDefaultQubitCap) {
    throw Error("Hamiltonian file: bad qubit count");
  }
  LocalHamiltonian h(static_cast<int>(n_value));
  while (next_content_line(in, line)) {
    std::istringstream fields(line);
    std::string support_field;
    std::string matrix_field;
    if (!(fields >> support_field >> matrix_field) ||
        support_field.rfind("support=", 0) != 0 ||
        matrix_field.rfind("matrix=", 0) != 0) {
      throw Error("Hamiltonian term must read 'support=... matrix=...': " +
                  line);
    }
    std::vector<int> support;
    for (const auto &q : split(support_field.substr(8), ',')) {
      const double v = parse_double(q, "support index");
      if (v != std::floor(v) || v < 0) {
        throw Error("bad support index '" + q + "'");
      }
      support.push_back(static_cast<int>(v));
    }
    const auto entries = split(matrix_field.substr(7), ';');
    const std::size_t dim = std::size_t{1} << support.size();
    if (support.empty() || support.size() > 3 ||
        entries.size() != dim * dim) {
      throw Error("term needs " + std::to_string(dim * dim) +
                  " matrix entries: " + line);
    }
    DenseMatrix m(static_cast<Eigen::Index>(dim),
                  static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto parts = split(entries[i], ':');
      if (parts.size() != 2) {
        throw Error("matrix entry must be 're:im', got '" + entries[i] + "'");
      }
      m(static_cast<Eigen::Index>(i / dim), static_cast<Eigen::Index>(i % dim)) =
          Complex(parse_double(parts[0], "real part"),
                  parse_double(parts[1], "imaginary part"));
    }
    h.add_term(make_term(std::move(support), std::move(m)));
  }
  return h;
}

LocalHamiltonian load_hamiltonian(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open Hamiltonian file '" + path + "'");
  }
  return read_hamiltonian(in);
}

void write_hamiltonian(std::ostream &out, const LocalHamiltonian &h) {
  if (!h.diagonal().empty()) {
    throw Error("Hamiltonian files hold local terms only");
  }
  out << "# qsim-format v1\nqubits: " << h.n_qubits() << '\n';
  std::ostringstream text;
  text << std::setprecision(17);
  for (const auto &term : h.terms()) {
    text.str("");
    text << "support=";
    for (std::size_t i = 0; i < term.support.size(); ++i) {
      text << (i ? "," : "") << term.support[i];
    }
    text << " matrix=";
    for (Eigen::Index r = 0; r < term.matrix.rows(); ++r) {
      for (Eigen::Index c = 0; c < term.matrix.cols(); ++c) {
        text << ((r || c) ? ";" : "") << term.matrix(r, c).real() << ':'
             << term.matrix(r, c).imag();
      }
    }
    out << text.str() << '\n';
  }
}

std::vector<double> read_costs(std::istream &in) {
  std::vector<double> costs;
  std::string line;
  while (next_content_line(in, line)) {
    costs.push_back(parse_double(line, "cost"));
  }
  const std::size_t dim = costs.size();
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw Error("cost file must hold 2^n values, found " + std::to_string(dim));
  }
  return costs;
}

std::vector<double> load_costs(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open cost file '" + path + "'");
  }
  return read_costs(in);
}

} // namespace qsim
