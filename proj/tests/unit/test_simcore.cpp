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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qsim/error.hpp"
#include "qsim/simcore.hpp"
#include "support/reference.hpp"

using namespace qsim;

namespace {

ref::Vector as_vector(const StateVector &s) {
  ref::Vector v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = s[i];
  }
  return v;
}

double distance(const StateVector &s, const ref::Vector &v) {
  return (as_vector(s) - v).norm();
}

} // namespace

TEST_CASE("basis state and bit order") {
  const StateVector s(3, 0b101);
  CHECK(s.size() == 8);
  CHECK(s[5] == Complex(1.0, 0.0));
  CHECK(s.norm_deviation() < 1e-15);
  CHECK_THROWS_AS(StateVector(3, 8), Error);
  CHECK_THROWS_AS(StateVector(15), Error);
  CHECK_NOTHROW(StateVector(15, 0, 16));
}

TEST_CASE("from_amplitudes validates length and norm") {
  const double r = 1.0 / std::sqrt(2.0);
  CHECK_NOTHROW(StateVector::from_amplitudes({r, r}));
  CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 1.0}), Error);
}

TEST_CASE("gate validation") {
  CHECK_THROWS_AS(GateMatrix(DenseMatrix::Identity(3, 3)), Error);
  CHECK_THROWS_AS(GateMatrix(DenseMatrix::Identity(16, 16)), Error);
  DenseMatrix bad = DenseMatrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(GateMatrix{bad}, Error);
  CHECK(gates::toffoli().arity() == 3);
}

TEST_CASE("hadamard on qubit 1 of |00>") {
  StateVector s(2);
  apply_gate(s, gates::hadamard(), {1});
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(s[0] - r) < 1e-15);
  CHECK(std::abs(s[2] - r) < 1e-15);
  CHECK(std::abs(s[1]) < 1e-15);
}

TEST_CASE("cnot target order") {
  StateVector s(2, 0b01);
  apply_gate(s, gates::cnot(), {0, 1});
  CHECK(std::abs(s[0b11] - 1.0) < 1e-15);
  StateVector t(2, 0b01);
  apply_gate(t, gates::cnot(), {1, 0});
  CHECK(std::abs(t[0b01] - 1.0) < 1e-15);
}

TEST_CASE("toffoli flips only when both controls set") {
  for (std::uint64_t x = 0; x < 8; ++x) {
    StateVector s(3, x);
    apply_gate(s, gates::toffoli(), {0, 1, 2});
    const std::uint64_t want = (x & 3U) == 3U ? x ^ 4U : x;
    CHECK(std::abs(s[want] - 1.0) < 1e-15);
  }
}

TEST_CASE("kernel matches dense embedding for every target tuple") {
  RngStream rng(11);
  const int n = 4;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) {
        continue;
      }
      const GateMatrix g = random_unitary(2, rng);
      StateVector s = random_state(n, rng);
      const ref::Vector want = ref::embed(n, g.matrix(), {a, b}) * as_vector(s);
      apply_gate(s, g, {a, b});
      CHECK(distance(s, want) < 1e-12);
    }
  }
}

TEST_CASE("monomial gates use the same semantics") {
  RngStream rng(12);
  StateVector s = random_state(3, rng);
  const ref::Vector want =
      ref::embed(3, gates::toffoli().matrix(), {2, 0, 1}) * as_vector(s);
  apply_gate(s, gates::toffoli(), {2, 0, 1});
  CHECK(distance(s, want) < 1e-13);
}

TEST_CASE("bad targets throw") {
  StateVector s(2);
  CHECK_THROWS_AS(apply_gate(s, gates::cnot(), {0, 0}), Error);
  CHECK_THROWS_AS(apply_gate(s, gates::hadamard(), {2}), Error);
  CHECK_THROWS_AS(apply_gate(s, gates::cnot(), {0}), Error);
}

TEST_CASE("random unitaries are unitary and states normalized") {
  RngStream rng(3);
  for (int k = 1; k <= 3; ++k) {
    CHECK(is_unitary(random_unitary(k, rng).matrix(), 1e-12));
  }
  CHECK(random_state(6, rng).norm_deviation() < 1e-12);
}

TEST_CASE("circuit inverse undoes the circuit") {
  RngStream rng(5);
  Circuit c(3);
  c.add(random_unitary(2, rng), {0, 2}).add(gates::hadamard(), {1}).add(
      random_unitary(3, rng), {1, 2, 0});
  const StateVector start = random_state(3, rng);
  StateVector s = start;
  run_circuit(c, s, rng);
  run_circuit(c.inverse(), s, rng);
  CHECK(fidelity(s, start) > 1.0 - 1e-12);
  c.measure({0});
  CHECK_THROWS_AS(c.inverse(), Error);
}

TEST_CASE("append remaps qubits") {
  Circuit inner(1);
  inner.add(gates::pauli_x(), {0});
  Circuit outer(3);
  const int map[] = {2};
  outer.append(inner, map);
  StateVector s(3);
  RngStream rng(1);
  run_circuit(outer, s, rng);
  CHECK(std::abs(s[4] - 1.0) < 1e-15);
}

TEST_CASE("measurement statistics follow the Born rule") {
  RngStream rng(99);
  const int trials = 20000;
  int ones = 0;
  for (int t = 0; t < trials; ++t) {
    StateVector s(1);
    apply_gate(s, gates::axis_rotation(2.0 * std::acos(std::sqrt(0.3)), 0, 1, 0), {0});
    const int q[] = {0};
    ones += static_cast<int>(measure_subset(s, q, rng));
    CHECK(s.norm_deviation() < 1e-12);
  }
  CHECK(std::abs(ones / static_cast<double>(trials) - 0.7) < 0.015);
}

TEST_CASE("measurement collapses entangled partner") {
  RngStream rng(4);
  for (int t = 0; t < 20; ++t) {
    StateVector s(2);
    apply_gate(s, gates::hadamard(), {0});
    apply_gate(s, gates::cnot(), {0, 1});
    const int q0[] = {0};
    const int q1[] = {1};
    const auto a = measure_subset(s, q0, rng);
    const auto b = measure_subset(s, q1, rng);
    CHECK(a == b);
  }
}

TEST_CASE("project rejects zero probability outcomes") {
  StateVector s(2);
  const int q[] = {1};
  CHECK_THROWS_AS(project(s, q, 1), Error);
  CHECK(project(s, q, 0) == doctest::Approx(1.0));
}

TEST_CASE("marginals and reduced density matrix") {
  RngStream rng(8);
  const StateVector s = random_state(3, rng);
  const int keep[] = {2, 0};
  const auto marg = marginal_probabilities(s, keep);
  double total = 0.0;
  for (double p : marg) {
    total += p;
  }
  CHECK(total == doctest::Approx(1.0));
  double want = 0.0;
  for (std::uint64_t i = 0; i < 8; ++i) {
    if (((i >> 2) & 1U) == 1 && (i & 1U) == 0) {
      want += std::norm(s[i]);
    }
  }
  CHECK(marg[0b01] == doctest::Approx(want));
  const DenseMatrix rho = reduced_density_matrix(s, keep);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  CHECK(std::abs(rho(1, 1).real() - want) < 1e-12);
}

TEST_CASE("subsystem fidelity of a product state") {
  RngStream rng(2);
  const StateVector a = random_state(1, rng);
  const StateVector b = random_state(2, rng);
  const StateVector ab = a.tensor(b);
  const int keep[] = {0};
  CHECK(subsystem_fidelity(ab, keep, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("inner product is phase sensitive, fidelity is not") {
  StateVector a(1);
  StateVector b(1);
  apply_gate(b, gates::phase(std::numbers::pi), {0});
  apply_gate(b, gates::pauli_x(), {0});
  apply_gate(b, gates::pauli_z(), {0});
  apply_gate(b, gates::pauli_x(), {0});
  CHECK(std::abs(inner_product(a, b) + 1.0) < 1e-15);
  CHECK(fidelity(a, b) == doctest::Approx(1.0));
}

TEST_CASE("amplitude csv round trips") {
  RngStream rng(6);
  const StateVector s = random_state(2, rng);
  std::ostringstream out;
  write_amplitudes_csv(out, s);
  std::istringstream in(out.str());
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || !std::isdigit(static_cast<unsigned char>(line[0]))) {
      continue;
    }
    std::istringstream cells(line);
    std::string idx, re, im;
    std::getline(cells, idx, ',');
    std::getline(cells, re, ',');
    std::getline(cells, im, ',');
    const auto i = std::stoul(idx);
    CHECK(std::stod(re) == s[i].real());
    CHECK(std::stod(im) == s[i].imag());
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("rng split is independent of consumption") {
  RngStream a(42);
  RngStream b(42);
  b.uniform();
  b.normal();
  CHECK(a.split(3).next_u64() == b.split(3).next_u64());
  CHECK(a.split(3).next_u64() != a.split(4).next_u64());
  RngStream c(42);
  for (int i = 0; i < 1000; ++i) {
    const auto v = c.uniform_int(3, 5);
    CHECK((v >= 3 && v <= 5));
  }
}
