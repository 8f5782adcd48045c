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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qsim/oracles.hpp"
#include "qsim/rng.hpp"
#include "qsim/simcore.hpp"

namespace qsim {

// Quantum Fourier transform ----------------------------------------------------

/// QFT on q qubits. `cutoff` drops every conditional phase P_d with d >= m.
struct QftCircuitSpec {
  int q = 1;
  std::optional<int> cutoff;
};

/// Circuit mapping sum_x c_x |x> to sum_y (1/sqrt n) sum_x c_x e^{2 pi i xy/n}
/// |y>, n = 2^q. For t = q-1 down to 0: H on t, then P_d between t and every
/// lower qubit c (d = t - c, phase pi/2^d); finally floor(q/2) swaps reverse
/// the qubit order. The exact circuit has q(q+1)/2 H and P_d gates.
Circuit qft_circuit(const QftCircuitSpec &config);

/// Hadamard plus conditional-phase gates in a QFT circuit (swaps excluded).
std::size_t qft_core_gate_count(const Circuit &qft);

/// Direct O(n^2) evaluation of the unitary DFT with the e^{+2 pi i xy/n}
/// sign convention.
std::vector<Complex> dft_reference(std::span<const Complex> input);

/// Largest 2-norm deviation between the cutoff-m circuit and the exact QFT
/// over `trials` random input states.
double approx_qft_error(int q, int m, std::size_t trials, RngStream &rng);

// Classical number theory --------------------------------------------------------

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod);
/// a^e mod m by repeated squaring.
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime = 0;
  int exponent = 0;
};

/// Returns (p, k) with n = p^k, k >= 1, p prime, when n is a prime power.
std::optional<PrimePower> prime_power(std::uint64_t n);

/// Multiplicative order of a mod n by brute force (classical oracle).
std::uint64_t classical_order(std::uint64_t a, std::uint64_t n);

/// Nontrivial factor from an even period via gcd(a^{p/2} -+ 1, N), or nullopt
/// when p is odd or a^{p/2} = -1 mod N.
std::optional<std::uint64_t> factor_from_period(std::uint64_t a,
                                                std::uint64_t period,
                                                std::uint64_t n);

// Period finding ---------------------------------------------------------------

/// f(x) = a^x mod N for x < 2^q_in, each entry by square-and-multiply.
ClassicalFunction modexp_function(std::uint64_t a, std::uint64_t n, int q_in,
                                  int q_out);

struct RegisterPlan {
  int q_in = 0;
  int q_out = 0;
  /// True when 2^q_in >= N^2 did not fit under the qubit cap and the
  /// reduced width ceil(log2 N) + 3 is used instead.
  bool reduced = false;
};

int bit_width(std::uint64_t n);

/// Register sizing for N under `qubit_cap` total qubits. Throws when even the
/// reduced width does not fit.
RegisterPlan plan_registers(std::uint64_t n, int qubit_cap = kDefaultQubitCap);

struct PeriodSample {
  std::uint64_t y = 0;
  std::uint64_t register_size = 0;  // n = 2^q_in
  RegisterPlan plan;
};

/// One run of the period-finding circuit: H^q_in, standard oracle of a^x mod
/// N, QFT on the first register, measurement of the first register.
PeriodSample period_find_quantum(std::uint64_t a, std::uint64_t n,
                                 RngStream &rng,
                                 std::optional<RegisterPlan> plan = {});

/// Exact distribution of y from the pre-measurement statevector.
std::vector<double> period_distribution(std::uint64_t a, std::uint64_t n,
                                        const RegisterPlan &plan);

/// Mass on y with |y - k n/p| <= 1/2 for some integer k.
double peak_mass(std::span<const double> distribution, std::uint64_t period);

struct ContinuedFractionResult {
  /// Convergents (numerator, denominator) of y/n, in order.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> convergents;
};

ContinuedFractionResult continued_fraction(std::uint64_t y, std::uint64_t n);

/// Distinct convergent denominators of y/n below `modulus`, ascending. Empty
/// for y = 0.
std::vector<std::uint64_t> period_candidates(std::uint64_t y, std::uint64_t n,
                                             std::uint64_t modulus);

/// Smallest verified period among the candidates and their small multiples
/// (r, 2r, 3r, ... below N); nullopt if none satisfies a^r = 1 mod N.
std::optional<std::uint64_t> extract_period(std::uint64_t y, std::uint64_t n,
                                            std::uint64_t a,
                                            std::uint64_t modulus);

enum class PeriodStrategy { ContinuedFraction, Lcm };

enum class PeriodBackend { Quantum, Classical };

struct ShorOptions {
  std::size_t max_trials = 20;
  PeriodStrategy strategy = PeriodStrategy::ContinuedFraction;
  std::optional<std::uint64_t> fixed_base;
  PeriodBackend backend = PeriodBackend::Quantum;
  int qubit_cap = kDefaultQubitCap;
};

enum class ShorOutcome { Factor, PrimePower, Failure };

struct ShorResult {
  ShorOutcome outcome = ShorOutcome::Failure;
  std::uint64_t factor = 0;        // Factor / PrimePower (the prime)
  int prime_exponent = 0;          // PrimePower
  std::uint64_t base = 0;          // a of the successful trial
  std::uint64_t period = 0;        // 0 when the factor came from gcd(a, N)
  std::size_t trials = 0;          // period-finding runs (and lucky gcds)
  std::vector<std::uint64_t> y_samples;
  std::vector<std::uint64_t> sample_bases;  // base a behind each y sample
  std::optional<RegisterPlan> plan;
  std::string note;
};

/// Classical reduction around period finding. Rejects even, prime and too
/// small N with qsim::Error; reports prime powers without running the
/// quantum part.
ShorResult shor_factor(std::uint64_t n, RngStream &rng,
                       const ShorOptions &options = {});

} // namespace qsim
