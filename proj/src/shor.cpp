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
#include "qsim/shor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qsim/error.hpp"

namespace qsim {

namespace {

std::vector<int> qubit_range(int first, int count) {
  std::vector<int> qs(static_cast<std::size_t>(count));
  std::iota(qs.begin(), qs.end(), first);
  return qs;
}

__extension__ using Wide = unsigned __int128;

// base^exp, saturating at `limit + 1` so callers can compare against limit.
std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t limit) {
  Wide acc = 1;
  for (int i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > limit) {
      return limit + 1;
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t integer_root(std::uint64_t n, int k) {
  auto r = static_cast<std::uint64_t>(
      std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
  while (r > 0 && checked_pow(r, k, n) > n) {
    --r;
  }
  while (checked_pow(r + 1, k, n) <= n) {
    ++r;
  }
  return r;
}

} // namespace

// ---------------------------------------------------------------------------
// QFT

Circuit qft_circuit(const QftCircuitSpec &config) {
  if (config.q < 1) {
    throw Error("QFT needs at least one qubit");
  }
  if (config.cutoff && *config.cutoff < 1) {
    throw Error("QFT cutoff m must be >= 1");
  }
  Circuit c(config.q);
  const auto h = gates::hadamard();
  for (int t = config.q - 1; t >= 0; --t) {
    c.add(h, {t});
    for (int ctrl = t - 1; ctrl >= 0; --ctrl) {
      const int d = t - ctrl;
      if (config.cutoff && d >= *config.cutoff) {
        continue;
      }
      c.add(gates::controlled_phase(std::numbers::pi / std::ldexp(1.0, d)),
            {ctrl, t});
    }
  }
  for (int i = 0; i < config.q / 2; ++i) {
    c.add(gates::swap(), {i, config.q - 1 - i});
  }
  return c;
}

std::size_t qft_core_gate_count(const Circuit &qft) {
  std::size_t count = 0;
  for (const auto &step : qft.steps()) {
    if (const auto *g = std::get_if<GateOp>(&step)) {
      if (g->gate.name() != "SWAP") {
        ++count;
      }
    }
  }
  return count;
}

std::vector<Complex> dft_reference(std::span<const Complex> input) {
  const std::size_t n = input.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw Error("DFT length must be a power of two >= 2");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> out(n);
  for (std::size_t y = 0; y < n; ++y) {
    Complex acc{0.0, 0.0};
    for (std::size_t x = 0; x < n; ++x) {
      // Reduce xy mod n before scaling to keep the angle exact.
      const std::size_t k = (x * y) % n;
      acc += input[x] * std::polar(1.0, 2.0 * std::numbers::pi *
                                            static_cast<double>(k) /
                                            static_cast<double>(n));
    }
    out[y] = acc * scale;
  }
  return out;
}

double approx_qft_error(int q, int m, std::size_t trials, RngStream &rng) {
  if (m < 1 || m > q) {
    throw Error("approximate QFT needs 1 <= m <= q");
  }
  const Circuit approx = qft_circuit({q, m});
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    RngStream trial_rng = rng.split(t);
    StateVector state = random_state(q, trial_rng);
    const auto exact = dft_reference(state.amplitudes());
    RngStream unused(0);
    run_circuit(approx, state, unused);
    double dev = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
      dev += std::norm(state[i] - exact[i]);
    }
    worst = std::max(worst, std::sqrt(dev));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Number theory

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<Wide>(a) * b %
                                    mod);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp,
                      std::uint64_t mod) {
  if (mod == 1) {
    return 0;
  }
  std::uint64_t result = 1;
  base %= mod;
  while (exp > 0) {
    if (exp & 1ULL) {
      result = mul_mod(result, base, mod);
    }
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) {
    return false;
  }
  if (n % 2 == 0) {
    return n == 2;
  }
  for (std::uint64_t d = 3; d <= n / d; d += 2) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

std::optional<PrimePower> prime_power(std::uint64_t n) {
  if (n < 2) {
    return std::nullopt;
  }
  if (is_prime(n)) {
    return PrimePower{n, 1};
  }
  for (int k = 2; k < 64 && (1ULL << k) <= n; ++k) {
    const std::uint64_t r = integer_root(n, k);
    if (checked_pow(r, k, n) == n && is_prime(r)) {
      return PrimePower{r, k};
    }
  }
  return std::nullopt;
}

std::uint64_t classical_order(std::uint64_t a, std::uint64_t n) {
  if (n < 2 || gcd(a, n) != 1) {
    throw Error("order is defined only for gcd(a, N) = 1");
  }
  std::uint64_t value = a % n;
  std::uint64_t r = 1;
  while (value != 1) {
    value = mul_mod(value, a, n);
    ++r;
  }
  return r;
}

std::optional<std::uint64_t> factor_from_period(std::uint64_t a,
                                                std::uint64_t period,
                                                std::uint64_t n) {
  if (period == 0 || period % 2 != 0) {
    return std::nullopt;
  }
  const std::uint64_t half = pow_mod(a, period / 2, n);
  if (half == n - 1) {
    return std::nullopt;
  }
  for (const std::uint64_t candidate :
       {gcd((half + n - 1) % n, n), gcd((half + 1) % n, n)}) {
    if (candidate != 1 && candidate != n && candidate != 0) {
      return candidate;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Period finding

ClassicalFunction modexp_function(std::uint64_t a, std::uint64_t n, int q_in,
                                  int q_out) {
  if (n < 2 || a >= n || gcd(a, n) != 1) {
    throw Error("modexp needs a < N with gcd(a, N) = 1");
  }
  if ((n - 1) >> q_out != 0) {
    throw Error("output register too narrow for values mod N");
  }
  std::vector<std::uint64_t> table(std::size_t{1} << q_in);
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    table[x] = pow_mod(a, x, n);
  }
  return ClassicalFunction(q_in, q_out, std::move(table));
}

int bit_width(std::uint64_t n) {
  return n == 0 ? 0 : 64 - __builtin_clzll(n);
}

RegisterPlan plan_registers(std::uint64_t n, int qubit_cap) {
  if (n < 3) {
    throw Error("period finding needs N >= 3");
  }
  RegisterPlan plan;
  plan.q_out = bit_width(n - 1);
  const int full = bit_width(n * n - 1);  // smallest q with 2^q >= N^2
  if (full + plan.q_out <= qubit_cap) {
    plan.q_in = full;
    return plan;
  }
  plan.q_in = bit_width(n - 1) + 3;
  plan.reduced = true;
  if (plan.q_in + plan.q_out > qubit_cap) {
    throw Error("N = " + std::to_string(n) + " needs " +
                std::to_string(plan.q_in + plan.q_out) +
                " qubits even in reduced mode; cap is " +
                std::to_string(qubit_cap));
  }
  return plan;
}

namespace {

StateVector period_state(std::uint64_t a, std::uint64_t n,
                         const RegisterPlan &plan) {
  const int total = plan.q_in + plan.q_out;
  StateVector state(total, 0, std::max(total, kDefaultQubitCap));
  const auto h = gates::hadamard();
  for (int q = 0; q < plan.q_in; ++q) {
    apply_gate(state, h, {q});
  }
  standard_oracle(modexp_function(a, n, plan.q_in, plan.q_out)).apply(state);
  Circuit full(total);
  const auto map = qubit_range(0, plan.q_in);
  full.append(qft_circuit({plan.q_in, std::nullopt}), map);
  RngStream unused(0);
  run_circuit(full, state, unused);
  return state;
}

} // namespace

PeriodSample period_find_quantum(std::uint64_t a, std::uint64_t n,
                                 RngStream &rng,
                                 std::optional<RegisterPlan> plan) {
  const RegisterPlan p = plan.value_or(plan_registers(n));
  StateVector state = period_state(a, n, p);
  PeriodSample sample;
  sample.plan = p;
  sample.register_size = 1ULL << p.q_in;
  sample.y = measure_subset(state, qubit_range(0, p.q_in), rng);
  return sample;
}

std::vector<double> period_distribution(std::uint64_t a, std::uint64_t n,
                                        const RegisterPlan &plan) {
  const StateVector state = period_state(a, n, plan);
  return marginal_probabilities(state, qubit_range(0, plan.q_in));
}

double peak_mass(std::span<const double> distribution, std::uint64_t period) {
  const std::uint64_t n = distribution.size();
  if (period == 0) {
    throw Error("peak_mass: period must be positive");
  }
  double mass = 0.0;
  for (std::uint64_t y = 0; y < n; ++y) {
    // |y - k n/p| <= 1/2  <=>  2 |y p - k n| <= p
    const std::uint64_t k0 = y * period / n;
    bool near = false;
    for (std::uint64_t k = k0; k <= k0 + 1; ++k) {
      const auto lhs = static_cast<long double>(y * period) -
                       static_cast<long double>(k * n);
      if (2.0L * std::fabs(lhs) <= static_cast<long double>(period)) {
        near = true;
      }
    }
    if (near) {
      mass += distribution[y];
    }
  }
  return mass;
}

ContinuedFractionResult continued_fraction(std::uint64_t y, std::uint64_t n) {
  if (n == 0 || y >= n) {
    throw Error("continued fraction needs 0 <= y < n");
  }
  ContinuedFractionResult result;
  // h_k = a_k h_{k-1} + h_{k-2}, likewise for denominators.
  std::uint64_t h_prev = 0;
  std::uint64_t h = 1;
  std::uint64_t k_prev = 1;
  std::uint64_t k = 0;
  std::uint64_t num = y;
  std::uint64_t den = n;
  while (den != 0) {
    const std::uint64_t a = num / den;
    const std::uint64_t h_next = a * h + h_prev;
    const std::uint64_t k_next = a * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    result.convergents.emplace_back(h, k);
    const std::uint64_t rem = num % den;
    num = den;
    den = rem;
  }
  return result;
}

std::vector<std::uint64_t> period_candidates(std::uint64_t y, std::uint64_t n,
                                             std::uint64_t modulus) {
  std::vector<std::uint64_t> out;
  if (y == 0) {
    return out;
  }
  for (const auto &[num, den] : continued_fraction(y, n).convergents) {
    if (den > 1 && den < modulus) {
      out.push_back(den);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::uint64_t> extract_period(std::uint64_t y, std::uint64_t n,
                                            std::uint64_t a,
                                            std::uint64_t modulus) {
  std::optional<std::uint64_t> best;
  for (const std::uint64_t r : period_candidates(y, n, modulus)) {
    for (std::uint64_t mult = r; mult < modulus; mult += r) {
      if (pow_mod(a, mult, modulus) == 1) {
        if (!best || mult < *best) {
          best = mult;
        }
        break;
      }
    }
  }
  return best;
}

namespace {

// Largest convergent denominator below the modulus (0 if none).
std::uint64_t best_denominator(std::uint64_t y, std::uint64_t n,
                               std::uint64_t modulus) {
  const auto cands = period_candidates(y, n, modulus);
  return cands.empty() ? 0 : cands.back();
}

std::uint64_t smallest_period_dividing(std::uint64_t a, std::uint64_t multiple,
                                       std::uint64_t modulus) {
  for (std::uint64_t d = 1; d <= multiple; ++d) {
    if (multiple % d == 0 && pow_mod(a, d, modulus) == 1) {
      return d;
    }
  }
  return multiple;
}

} // namespace

ShorResult shor_factor(std::uint64_t n, RngStream &rng,
                       const ShorOptions &options) {
  if (n % 2 == 0) {
    throw Error(std::to_string(n) + " is even; 2 is a factor");
  }
  if (n < 9 || is_prime(n)) {
    throw Error(std::to_string(n) + " is prime (or below 9); nothing to factor");
  }
  ShorResult result;
  if (const auto pp = prime_power(n)) {
    result.outcome = ShorOutcome::PrimePower;
    result.factor = pp->prime;
    result.prime_exponent = pp->exponent;
    result.note = "prime power";
    return result;
  }
  if (options.fixed_base &&
      (*options.fixed_base < 2 || *options.fixed_base >= n)) {
    throw Error("base must satisfy 1 < a < N");
  }
  if (options.backend == PeriodBackend::Quantum) {
    result.plan = plan_registers(n, options.qubit_cap);
  }

  auto draw_base = [&]() {
    return options.fixed_base ? *options.fixed_base : rng.uniform_int(2, n - 1);
  };

  std::uint64_t a = draw_base();
  std::uint64_t lcm_acc = 1;
  while (result.trials < options.max_trials) {
    ++result.trials;
    const std::uint64_t g = gcd(a, n);
    if (g != 1) {
      result.outcome = ShorOutcome::Factor;
      result.factor = g;
      result.base = a;
      result.note = "gcd(a, N) > 1";
      return result;
    }
    std::optional<std::uint64_t> period;
    if (options.backend == PeriodBackend::Classical) {
      period = classical_order(a, n);
    } else {
      const PeriodSample s = period_find_quantum(a, n, rng, result.plan);
      result.y_samples.push_back(s.y);
      result.sample_bases.push_back(a);
      if (options.strategy == PeriodStrategy::ContinuedFraction) {
        period = extract_period(s.y, s.register_size, a, n);
      } else {
        const std::uint64_t den = best_denominator(s.y, s.register_size, n);
        if (den > 0) {
          lcm_acc = std::lcm(lcm_acc, den);
          if (pow_mod(a, lcm_acc, n) == 1) {
            period = smallest_period_dividing(a, lcm_acc, n);
          }
        }
      }
    }
    if (!period) {
      continue;  // uninformative y; repeat with the same base
    }
    if (const auto f = factor_from_period(a, *period, n)) {
      result.outcome = ShorOutcome::Factor;
      result.factor = *f;
      result.base = a;
      result.period = *period;
      return result;
    }
    // Odd period or a^{p/2} = -1 mod N: the base is useless.
    a = draw_base();
    lcm_acc = 1;
  }
  result.outcome = ShorOutcome::Failure;
  result.note = "no factor within " + std::to_string(options.max_trials) +
                " trials";
  return result;
}

} // namespace qsim
