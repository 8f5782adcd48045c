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
#include "qsim/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qsim/error.hpp"

namespace qsim {

GroverInstance::GroverInstance(int n_qubits, std::vector<std::uint64_t> marked)
    : n_qubits_(n_qubits), marked_(std::move(marked)) {
  if (n_qubits < 1 || n_qubits > kDefaultQubitCap) {
    throw Error("Grover instance: unsupported qubit count");
  }
  if (marked_.empty()) {
    throw Error("Grover instance needs at least one marked item");
  }
  std::sort(marked_.begin(), marked_.end());
  marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
  lookup_.assign(space_size(), false);
  for (auto x : marked_) {
    if (x >= space_size()) {
      throw Error("marked item " + std::to_string(x) + " outside search space");
    }
    lookup_[x] = true;
  }
}

bool GroverInstance::is_marked(std::uint64_t x) const {
  return x < lookup_.size() && lookup_[x];
}

GroverInstance random_instance(int n_qubits, std::uint64_t marked_count,
                               RngStream &rng) {
  const std::uint64_t size = 1ULL << n_qubits;
  if (marked_count == 0 || marked_count > size) {
    throw Error("random instance: marked count out of range");
  }
  std::vector<std::uint64_t> items(size);
  std::iota(items.begin(), items.end(), 0ULL);
  for (std::uint64_t i = 0; i < marked_count; ++i) {
    std::swap(items[i], items[rng.uniform_int(i, size - 1)]);
  }
  items.resize(marked_count);
  return GroverInstance(n_qubits, std::move(items));
}

void grover_oracle_apply(StateVector &state, const GroverInstance &instance) {
  if (state.n_qubits() != instance.n_qubits()) {
    throw Error("Grover oracle: state size does not match instance");
  }
  auto amps = state.mutable_amplitudes();
  for (auto x : instance.marked()) {
    amps[x] = -amps[x];
  }
}

void diffusion_apply(StateVector &state) {
  auto amps = state.mutable_amplitudes();
  Complex sum{0.0, 0.0};
  for (const auto &a : amps) {
    sum += a;
  }
  const Complex twice_mean = 2.0 * sum / static_cast<double>(amps.size());
  for (auto &a : amps) {
    a = twice_mean - a;
  }
}

void diffusion_apply_circuit(StateVector &state) {
  const auto h = gates::hadamard();
  for (int q = 0; q < state.n_qubits(); ++q) {
    apply_gate(state, h, {q});
  }
  auto amps = state.mutable_amplitudes();
  for (std::size_t i = 1; i < amps.size(); ++i) {
    amps[i] = -amps[i];
  }
  for (int q = 0; q < state.n_qubits(); ++q) {
    apply_gate(state, h, {q});
  }
}

StateVector uniform_state(int n_qubits) {
  StateVector s(n_qubits);
  const auto h = gates::hadamard();
  for (int q = 0; q < n_qubits; ++q) {
    apply_gate(s, h, {q});
  }
  return s;
}

std::uint64_t grover_optimal_iterations(std::uint64_t space_size,
                                        std::uint64_t marked_count) {
  if (marked_count == 0 || marked_count >= space_size) {
    throw Error("optimal iterations need 1 <= M < N");
  }
  const double ratio = static_cast<double>(space_size) /
                       static_cast<double>(marked_count);
  const double k = std::numbers::pi / 4.0 * std::sqrt(ratio) - 0.5;
  return static_cast<std::uint64_t>(std::max(0.0, std::round(k)));
}

double grover_success_prob(std::uint64_t space_size,
                           std::uint64_t marked_count, std::uint64_t k) {
  if (marked_count == 0 || marked_count >= space_size) {
    throw Error("success probability needs 1 <= M < N");
  }
  const double phi = std::asin(std::sqrt(static_cast<double>(marked_count) /
                                         static_cast<double>(space_size)));
  const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * phi);
  return s * s;
}

double marked_probability(const StateVector &state,
                          const GroverInstance &instance) {
  double p = 0.0;
  for (auto x : instance.marked()) {
    p += std::norm(state[x]);
  }
  return p;
}

double plane_residual(const StateVector &state,
                      const GroverInstance &instance) {
  // Project onto the two uniform vectors; what is left is the residual.
  Complex marked_sum{0.0, 0.0};
  Complex unmarked_sum{0.0, 0.0};
  for (std::size_t x = 0; x < state.size(); ++x) {
    (instance.is_marked(x) ? marked_sum : unmarked_sum) += state[x];
  }
  const double m = static_cast<double>(instance.marked_count());
  const double u = static_cast<double>(instance.space_size()) - m;
  const Complex marked_mean = marked_sum / m;
  const Complex unmarked_mean = u > 0 ? unmarked_sum / u : Complex{0.0, 0.0};
  double residual = 0.0;
  for (std::size_t x = 0; x < state.size(); ++x) {
    const Complex mean = instance.is_marked(x) ? marked_mean : unmarked_mean;
    residual += std::norm(state[x] - mean);
  }
  return std::sqrt(residual);
}

GroverReport grover_search(const GroverInstance &instance,
                           std::optional<std::uint64_t> iterations,
                           RngStream &rng) {
  if (instance.marked_count() >= instance.space_size()) {
    throw Error("Grover search needs M < N");
  }
  const std::uint64_t k = iterations.value_or(grover_optimal_iterations(
      instance.space_size(), instance.marked_count()));
  StateVector state = uniform_state(instance.n_qubits());
  for (std::uint64_t step = 0; step < k; ++step) {
    grover_oracle_apply(state, instance);
    diffusion_apply(state);
  }
  GroverReport report;
  report.iterations = k;
  report.oracle_queries = k;
  report.final_success_prob = marked_probability(state, instance);
  std::vector<int> all(static_cast<std::size_t>(instance.n_qubits()));
  std::iota(all.begin(), all.end(), 0);
  report.found = measure_subset(state, all, rng);
  report.success = instance.is_marked(report.found);
  return report;
}

std::uint64_t grover_random_iteration_limit(std::uint64_t space_size) {
  return static_cast<std::uint64_t>(
      std::floor(std::numbers::pi * std::sqrt(static_cast<double>(space_size)) /
                 4.0));
}

GroverReport grover_unknown_m(const GroverInstance &instance, RngStream &rng) {
  const std::uint64_t k =
      rng.uniform_int(0, grover_random_iteration_limit(instance.space_size()));
  return grover_search(instance, k, rng);
}

double grover_unknown_m_expected(std::uint64_t space_size,
                                 std::uint64_t marked_count) {
  const std::uint64_t limit = grover_random_iteration_limit(space_size);
  double total = 0.0;
  for (std::uint64_t k = 0; k <= limit; ++k) {
    total += grover_success_prob(space_size, marked_count, k);
  }
  return total / static_cast<double>(limit + 1);
}

std::vector<GroverSweepRow> grover_sweep(const GroverInstance &instance,
                                         std::uint64_t k_max,
                                         std::size_t trials, RngStream &rng) {
  std::vector<GroverSweepRow> rows;
  StateVector state = uniform_state(instance.n_qubits());
  std::vector<int> all(static_cast<std::size_t>(instance.n_qubits()));
  std::iota(all.begin(), all.end(), 0);
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    if (k > 0) {
      grover_oracle_apply(state, instance);
      diffusion_apply(state);
    }
    GroverSweepRow row;
    row.k = k;
    row.analytic = grover_success_prob(instance.space_size(),
                                       instance.marked_count(), k);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      StateVector shot = state;
      if (instance.is_marked(measure_subset(shot, all, rng))) {
        ++hits;
      }
    }
    row.empirical = trials > 0 ? static_cast<double>(hits) /
                                     static_cast<double>(trials)
                               : 0.0;
    rows.push_back(row);
  }
  return rows;
}

} // namespace qsim
