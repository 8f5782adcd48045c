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
#include "qsim/querylib.hpp"

#include <numeric>

#include "qsim/error.hpp"
#include "qsim/simcore.hpp"

namespace qsim {

namespace {

std::vector<int> qubit_range(int first, int count) {
  std::vector<int> qs(static_cast<std::size_t>(count));
  std::iota(qs.begin(), qs.end(), first);
  return qs;
}

void hadamard_all(StateVector &state, int first, int count) {
  const auto h = gates::hadamard();
  for (int q = first; q < first + count; ++q) {
    apply_gate(state, h, {q});
  }
}

// (H^N (x) 1) U_f H^(N+1) |0...0, 1>, shared by Deutsch and Deutsch-Jozsa.
PromiseVerdict phase_kickback_run(const ClassicalFunction &f, RngStream &rng) {
  if (f.n_out() != 1) {
    throw Error("constant/balanced test needs a one-bit output");
  }
  const int n = f.n_in();
  const auto oracle = standard_oracle(f);
  StateVector state(n + 1, 1ULL << n);
  hadamard_all(state, 0, n + 1);
  oracle.apply(state);
  hadamard_all(state, 0, n);

  const auto query = qubit_range(0, n);
  PromiseVerdict v;
  v.queries = 1;
  v.zero_probability = marginal_probabilities(state, query)[0];
  v.outcome = measure_subset(state, query, rng);
  v.verdict = v.outcome == 0 ? Verdict::Constant : Verdict::Balanced;
  return v;
}

} // namespace

const char *to_string(Verdict v) {
  return v == Verdict::Constant ? "constant" : "balanced";
}

PromiseVerdict deutsch(const ClassicalFunction &f, RngStream &rng) {
  if (f.n_in() != 1 || f.n_out() != 1) {
    throw Error("Deutsch's algorithm needs f: {0,1} -> {0,1}");
  }
  return phase_kickback_run(f, rng);
}

PromiseVerdict deutsch_jozsa(const ClassicalFunction &f, RngStream &rng,
                             PromiseCheck check) {
  if (check == PromiseCheck::Validate && !is_constant(f) && !is_balanced(f)) {
    throw Error("function is neither constant nor balanced");
  }
  return phase_kickback_run(f, rng);
}

std::uint64_t classical_dj_worst_case_queries(int n) {
  return (1ULL << n) / 2 + 1;
}

PromiseVerdict classical_deutsch_jozsa(const ClassicalFunction &f) {
  PromiseVerdict v;
  const std::uint64_t limit = classical_dj_worst_case_queries(f.n_in());
  const std::uint64_t first = f(0);
  v.queries = 1;
  for (std::uint64_t x = 1; x < limit; ++x) {
    ++v.queries;
    if (f(x) != first) {
      v.verdict = Verdict::Balanced;
      v.outcome = x;
      return v;
    }
  }
  v.verdict = Verdict::Constant;
  return v;
}

PromiseVerdict classical_dj_sampling(const ClassicalFunction &f,
                                     std::size_t samples, RngStream &rng) {
  if (samples == 0) {
    throw Error("classical sampling needs at least one query");
  }
  PromiseVerdict v;
  const std::uint64_t top = (1ULL << f.n_in()) - 1;
  const std::uint64_t first = f(rng.uniform_int(0, top));
  v.queries = 1;
  v.verdict = Verdict::Constant;
  for (std::size_t i = 1; i < samples; ++i) {
    ++v.queries;
    if (f(rng.uniform_int(0, top)) != first) {
      v.verdict = Verdict::Balanced;
      break;
    }
  }
  return v;
}

BvResult bernstein_vazirani(const ClassicalFunction &f, RngStream &rng) {
  if (f.n_out() != 1) {
    throw Error("Bernstein-Vazirani needs a one-bit output");
  }
  const int n = f.n_in();
  const auto oracle = standard_oracle(f);
  StateVector state(n + 1, 1ULL << n);
  hadamard_all(state, 0, n + 1);
  oracle.apply(state);
  hadamard_all(state, 0, n);

  const auto query = qubit_range(0, n);
  const auto probs = marginal_probabilities(state, query);
  BvResult r;
  r.queries = 1;
  r.secret = measure_subset(state, query, rng);
  r.probability = probs[r.secret];
  return r;
}

// ---------------------------------------------------------------------------
// GF(2)

Gf2System::Gf2System(int width) : width_(width) {
  if (width < 1 || width > 63) {
    throw Error("GF(2) system width must be 1..63");
  }
}

bool Gf2System::add_row(std::uint64_t row) {
  if ((row >> width_) != 0) {
    throw Error("GF(2) row has " + std::to_string(64 - __builtin_clzll(row)) +
                " bits, system width is " + std::to_string(width_));
  }
  rows_.push_back(row);
  std::uint64_t r = row;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if ((r >> pivots_[i]) & 1ULL) {
      r ^= basis_[i];
    }
  }
  if (r == 0) {
    return false;
  }
  const int pivot = 63 - __builtin_clzll(r);
  for (auto &b : basis_) {
    if ((b >> pivot) & 1ULL) {
      b ^= r;
    }
  }
  basis_.push_back(r);
  pivots_.push_back(pivot);
  return true;
}

std::vector<std::uint64_t> Gf2System::nullspace() const {
  std::uint64_t pivot_mask = 0;
  for (int p : pivots_) {
    pivot_mask |= 1ULL << p;
  }
  std::vector<std::uint64_t> result;
  for (int free = 0; free < width_; ++free) {
    if ((pivot_mask >> free) & 1ULL) {
      continue;
    }
    // In reduced form each row is pivot + free columns, so row . v = 0
    // fixes the pivot bit to the row's entry in this free column.
    std::uint64_t v = 1ULL << free;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if ((basis_[i] >> free) & 1ULL) {
        v |= 1ULL << pivots_[i];
      }
    }
    result.push_back(v);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Simon

std::uint64_t simon_sample(const OracleUnitary &oracle, RngStream &rng) {
  const int n = oracle.n_in();
  if (oracle.kind() != OracleKind::Standard || oracle.n_out() != n) {
    throw Error("Simon's algorithm needs a standard oracle with n_out = n_in");
  }
  StateVector state(2 * n);
  hadamard_all(state, 0, n);
  oracle.apply(state);
  // Collapsing the output register is optional; it leaves the first register
  // in (|x0> + |x0 xor p>)/sqrt(2).
  measure_subset(state, qubit_range(n, n), rng);
  hadamard_all(state, 0, n);
  return measure_subset(state, qubit_range(0, n), rng);
}

SimonResult simon(const ClassicalFunction &f, RngStream &rng,
                  std::size_t max_runs) {
  const int n = f.n_in();
  if (max_runs == 0) {
    max_runs = 20 * static_cast<std::size_t>(n);
  }
  const auto oracle = standard_oracle(f);
  Gf2System system(n);
  SimonResult result;
  while (system.rank() + 1 < static_cast<std::size_t>(n)) {
    if (result.queries >= max_runs) {
      throw Error("Simon: rank " + std::to_string(system.rank()) +
                  " after " + std::to_string(max_runs) +
                  " queries, needed " + std::to_string(n - 1));
    }
    const std::uint64_t y = simon_sample(oracle, rng);
    ++result.queries;
    result.samples.push_back(y);
    system.add_row(y);
  }
  const auto null = system.nullspace();
  if (null.size() != 1) {
    throw Error("Simon: solution space has dimension " +
                std::to_string(null.size()));
  }
  result.period = null.front();
  if (f(0) != f(result.period)) {
    throw Error("Simon: f(0) != f(p) for the solved p; f has no nonzero period");
  }
  return result;
}

} // namespace qsim
