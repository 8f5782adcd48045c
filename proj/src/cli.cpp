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
#include "qsim/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qsim/dynamics.hpp"
#include "qsim/error.hpp"
#include "qsim/grover.hpp"
#include "qsim/oracles.hpp"
#include "qsim/qec.hpp"
#include "qsim/querylib.hpp"
#include "qsim/shor.hpp"

namespace qsim::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string output;
};

void add_common(CLI::App *sub, Common &common) {
  sub->add_option("--seed", common.seed, "RNG seed (falls back to QSIM_SEED)");
  sub->add_option("--format", common.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", common.output, "write the artifact to this file");
}

std::uint64_t resolve_seed(const Common &common) {
  if (common.seed) {
    return *common.seed;
  }
  if (const char *env = std::getenv("QSIM_SEED"); env != nullptr) {
    try {
      std::size_t used = 0;
      const std::uint64_t value = std::stoull(env, &used);
      if (used == std::string(env).size()) {
        return value;
      }
    } catch (const std::exception &) {
    }
    throw UsageError(std::string("QSIM_SEED is not an unsigned integer: ") + env);
  }
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(15) << v;
  return s.str();
}

template <typename T> std::vector<T> parse_list(const std::string &text,
                                                const std::string &flag) {
  std::vector<T> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream one(item);
    T v{};
    if (!(one >> v) || !(one >> std::ws).eof()) {
      throw UsageError(flag + ": cannot parse '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw UsageError(flag + " needs at least one value");
  }
  return values;
}

std::string csv_header(std::uint64_t seed, const std::string &columns) {
  return "# seed=" + std::to_string(seed) + "\n" + columns + "\n";
}

json counts_json(const std::map<std::uint64_t, std::size_t> &counts) {
  json j = json::object();
  for (const auto &[k, v] : counts) {
    j[std::to_string(k)] = v;
  }
  return j;
}

std::string counts_csv(std::uint64_t seed,
                       const std::map<std::uint64_t, std::size_t> &counts) {
  std::string text = csv_header(seed, "outcome,count");
  for (const auto &[k, v] : counts) {
    text += std::to_string(k) + "," + std::to_string(v) + "\n";
  }
  return text;
}

// ---------------------------------------------------------------------------
// Query algorithms

struct QueryArgs {
  Common common;
  int n = 3;
  std::string oracle_file;
  std::string function = "balanced";
  std::optional<std::uint64_t> secret;
  std::optional<std::uint64_t> period;
  std::size_t trials = 1;
};

ClassicalFunction load_or(const QueryArgs &a,
                          const std::function<ClassicalFunction()> &make) {
  return a.oracle_file.empty() ? make() : load_truth_table(a.oracle_file);
}

std::string run_deutsch_jozsa(const QueryArgs &a) {
  const std::uint64_t seed = resolve_seed(a.common);
  RngStream rng(seed);
  const ClassicalFunction f = load_or(a, [&] {
    if (a.function == "constant0") return make_constant(a.n, 0);
    if (a.function == "constant1") return make_constant(a.n, 1);
    if (a.function == "parity") return make_balanced_parity(a.n);
    if (a.function == "balanced") return make_balanced_random(a.n, rng);
    throw UsageError("--function must be constant0, constant1, balanced or parity");
  });
  std::map<std::uint64_t, std::size_t> counts;
  PromiseVerdict last;
  for (std::size_t t = 0; t < a.trials; ++t) {
    last = f.n_in() == 1 ? deutsch(f, rng) : deutsch_jozsa(f, rng);
    ++counts[last.outcome];
  }
  if (a.common.format == "csv") {
    return counts_csv(seed, counts);
  }
  json j{{"seed", seed},
         {"n", f.n_in()},
         {"verdict", to_string(last.verdict)},
         {"queries", last.queries},
         {"trials", a.trials},
         {"zero_probability", last.zero_probability},
         {"classical_worst_case_queries",
          classical_dj_worst_case_queries(f.n_in())},
         {"distribution", counts_json(counts)}};
  return j.dump(2) + "\n";
}

std::string run_bernstein_vazirani(const QueryArgs &a) {
  const std::uint64_t seed = resolve_seed(a.common);
  RngStream rng(seed);
  std::optional<std::uint64_t> secret = a.secret;
  const ClassicalFunction f = load_or(a, [&] {
    if (!secret) {
      secret = rng.uniform_int(0, (1ULL << a.n) - 1);
    }
    return make_bv_function(a.n, *secret);
  });
  std::map<std::uint64_t, std::size_t> counts;
  BvResult last;
  std::size_t queries = 0;
  for (std::size_t t = 0; t < a.trials; ++t) {
    last = bernstein_vazirani(f, rng);
    queries += last.queries;
    ++counts[last.secret];
  }
  if (a.common.format == "csv") {
    return counts_csv(seed, counts);
  }
  json j{{"seed", seed},
         {"n", f.n_in()},
         {"recovered", last.secret},
         {"probability", last.probability},
         {"queries", queries},
         {"trials", a.trials},
         {"distribution", counts_json(counts)}};
  if (secret) {
    j["secret"] = *secret;
  }
  return j.dump(2) + "\n";
}

std::string run_simon(const QueryArgs &a) {
  const std::uint64_t seed = resolve_seed(a.common);
  RngStream rng(seed);
  std::optional<std::uint64_t> period = a.period;
  const ClassicalFunction f = load_or(a, [&] {
    if (!period) {
      period = rng.uniform_int(1, (1ULL << a.n) - 1);
    }
    return make_simon_function(a.n, *period, rng);
  });
  std::map<std::uint64_t, std::size_t> counts;
  SimonResult last;
  std::size_t queries = 0;
  for (std::size_t t = 0; t < a.trials; ++t) {
    last = simon(f, rng);
    queries += last.queries;
    for (auto y : last.samples) {
      ++counts[y];
    }
  }
  if (a.common.format == "csv") {
    return counts_csv(seed, counts);
  }
  json j{{"seed", seed},
         {"n", f.n_in()},
         {"recovered", last.period},
         {"queries", queries},
         {"mean_queries", static_cast<double>(queries) / a.trials},
         {"trials", a.trials},
         {"distribution", counts_json(counts)}};
  if (period) {
    j["period"] = *period;
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Grover

struct GroverArgs {
  Common common;
  int n = 4;
  std::string marked;
  std::optional<std::uint64_t> random_marked;
  std::string iterations = "auto";
  std::size_t trials = 100;
  std::optional<std::uint64_t> k_max;
};

std::string run_grover(const GroverArgs &a) {
  const std::uint64_t seed = resolve_seed(a.common);
  RngStream rng(seed);
  if (a.marked.empty() == !a.random_marked.has_value()) {
    throw UsageError("give exactly one of --marked or --random-marked");
  }
  const GroverInstance instance =
      a.random_marked ? random_instance(a.n, *a.random_marked, rng)
                      : GroverInstance(a.n, parse_list<std::uint64_t>(
                                                a.marked, "--marked"));
  const std::uint64_t big_n = instance.space_size();
  const std::uint64_t m = instance.marked_count();
  const std::uint64_t k_opt = grover_optimal_iterations(big_n, m);

  if (a.common.format == "csv") {
    const auto rows =
        grover_sweep(instance, a.k_max.value_or(2 * k_opt), a.trials, rng);
    std::string text = csv_header(seed, "k,analytic_prob,empirical_freq");
    for (const auto &r : rows) {
      text += std::to_string(r.k) + "," + num(r.analytic) + "," +
              num(r.empirical) + "\n";
    }
    return text;
  }

  GroverReport report;
  if (a.iterations == "auto") {
    report = grover_search(instance, std::nullopt, rng);
  } else if (a.iterations == "random") {
    report = grover_unknown_m(instance, rng);
  } else {
    report = grover_search(
        instance, parse_list<std::uint64_t>(a.iterations, "--iterations").at(0),
        rng);
  }
  json j{{"seed", seed},
         {"n", a.n},
         {"marked", instance.marked()},
         {"iterations", report.iterations},
         {"optimal_iterations", k_opt},
         {"found", report.found},
         {"success", report.success},
         {"oracle_queries", report.oracle_queries},
         {"final_success_prob", report.final_success_prob},
         {"analytic_success_prob",
          grover_success_prob(big_n, m, report.iterations)}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Shor and QFT

struct ShorArgs {
  Common common;
  std::uint64_t n = 15;
  std::optional<std::uint64_t> base;
  std::string strategy = "cf";
  std::size_t max_trials = 20;
};

std::string run_shor(const ShorArgs &a) {
  const std::uint64_t seed = resolve_seed(a.common);
  RngStream rng(seed);
  ShorOptions options;
  options.max_trials = a.max_trials;
  options.fixed_base = a.base;
  options.strategy = a.strategy == "lcm" ? PeriodStrategy::Lcm
                                         : PeriodStrategy::ContinuedFraction;
  const ShorResult r = shor_factor(a.n, rng, options);
  json j{{"seed", seed}, {"n", a.n}, {"trials", r.trials},
         {"y_samples", r.y_samples}, {"sample_bases", r.sample_bases},
         {"note", r.note}};
  switch (r.outcome) {
  case ShorOutcome::Factor:
    j["outcome"] = "factor";
    j["factor"] = r.factor;
    j["cofactor"] = a.n / r.factor;
    j["a"] = r.base;
    j["period"] = r.period;
    break;
  case ShorOutcome::PrimePower:
    j["outcome"] = "prime_power";
    j["factor"] = r.factor;
    j["exponent"] = r.prime_exponent;
    break;
  case ShorOutcome::Failure:
    j["outcome"] = "failure";
    break;
  }
  if (r.plan) {
    j["plan"] = {{"q_in", r.plan->q_in},
                 {"q_out", r.plan->q_out},
                 {"reduced", r.plan->reduced}};
    if (r.outcome == ShorOutcome::Factor && r.period > 0) {
      const auto dist = period_distribution(r.base, a.n, *r.plan);
      j["peak_mass"] = peak_mass(dist, classical_order(r.base, a.n));
    }
  }
  if (a.common.format == "csv") {
    std::string text = csv_header(seed, "trial,y");
    for (std::size_t i = 0; i < r.y_samples.size(); ++i) {
      text += std::to_string(i) + "," + std::to_string(r.y_samples[i]) + "\n";
    }
    return text;
  }
  return j.dump(2) + "\n";
}

struct QftArgs {
  Common common;
  int q = 3;
  std::optional<int> cutoff;
  bool check = false;
  std::uint64_t input = 1;
  std::optional<std::uint64_t> period;
  std::size_t trials = 200;
};

std::string run_qft(const QftArgs &a) {
  const std::uint64_t seed = resolve_seed(a.common);
  RngStream rng(seed);
  if (a.q < 1 || a.q > kDefaultQubitCap) {
    throw Error("--q must lie in 1.." + std::to_string(kDefaultQubitCap));
  }
  const Circuit circuit = qft_circuit(QftCircuitSpec{a.q, a.cutoff});
  const std::uint64_t size = 1ULL << a.q;

  StateVector state(a.q, 0);
  if (a.period) {
    if (*a.period == 0 || *a.period >= size) {
      throw Error("--period must lie in 1..2^q-1");
    }
    std::vector<Complex> amps(size);
    std::size_t count = 0;
    for (std::uint64_t x = a.input % *a.period; x < size; x += *a.period) {
      amps[x] = 1.0;
      ++count;
    }
    for (auto &v : amps) {
      v /= std::sqrt(static_cast<double>(count));
    }
    state = StateVector::from_amplitudes(std::move(amps));
  } else {
    if (a.input >= size) {
      throw Error("--input must be below 2^q");
    }
    state = StateVector(a.q, a.input);
  }
  run_circuit(circuit, state, rng);
  const auto probs = probabilities(state);

  std::optional<double> deviation;
  if (a.check) {
    double worst = 0.0;
    for (std::size_t t = 0; t < a.trials; ++t) {
      RngStream child = rng.split(t);
      StateVector s = random_state(a.q, child);
      const auto want = dft_reference(s.amplitudes());
      run_circuit(circuit, s, child);
      double dev = 0.0;
      for (std::size_t i = 0; i < want.size(); ++i) {
        dev += std::norm(s[i] - want[i]);
      }
      worst = std::max(worst, std::sqrt(dev));
    }
    deviation = worst;
  }

  if (a.common.format == "csv") {
    std::string text = csv_header(seed, "y,probability");
    for (std::size_t y = 0; y < probs.size(); ++y) {
      text += std::to_string(y) + "," + num(probs[y]) + "\n";
    }
    return text;
  }
  json j{{"seed", seed},
         {"q", a.q},
         {"gate_count", qft_core_gate_count(circuit)},
         {"total_gates", circuit.gate_count()},
         {"probabilities", probs}};
  if (a.cutoff) {
    j["cutoff_m"] = *a.cutoff;
  }
  if (deviation) {
    j["max_deviation"] = *deviation;
    j["check_trials"] = a.trials;
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Dynamics

struct TrotterArgs {
  Common common;
  double t = 1.0;
  std::string k_sweep = "1,2,4,8,16,32,64,128,256";
  std::string hamiltonian_file;
  std::string model = "heisenberg";
  int n = 6;
  std::optional<std::uint64_t> initial;
};

LocalHamiltonian builtin_model(const std::string &model, int n) {
  using namespace pauli;
  if (model == "heisenberg") {
    LocalHamiltonian h(n);
    const DenseMatrix bond = kron(X(), X()) + kron(Y(), Y()) + kron(Z(), Z());
    for (int i = 0; i + 1 < n; ++i) {
      h.add_term(make_term({i, i + 1}, bond));
    }
    return h;
  }
  if (model == "xz") {
    LocalHamiltonian h(n);
    for (int i = 0; i < n; ++i) {
      h.add_term(make_term({i}, X()));
      h.add_term(make_term({i}, Z()));
    }
    return h;
  }
  if (model == "commuting") {
    LocalHamiltonian h(n);
    for (int i = 0; i < n; ++i) {
      h.add_term(make_term({i}, Z()));
      if (i + 1 < n) {
        h.add_term(make_term({i, i + 1}, kron(Z(), Z())));
      }
    }
    return h;
  }
  throw UsageError("--model must be heisenberg, xz or commuting");
}

std::string run_trotter(const TrotterArgs &a) {
  const std::uint64_t seed = resolve_seed(a.common);
  const LocalHamiltonian h = a.hamiltonian_file.empty()
                                 ? builtin_model(a.model, a.n)
                                 : load_hamiltonian(a.hamiltonian_file);
  std::uint64_t initial = 0;
  if (a.initial) {
    initial = *a.initial;
  } else if (a.hamiltonian_file.empty() && a.model == "heisenberg") {
    for (int i = 1; i < h.n_qubits(); i += 2) {
      initial |= 1ULL << i;
    }
  }
  if (initial >= (1ULL << h.n_qubits())) {
    throw Error("--initial is outside the state space");
  }
  const StateVector psi(h.n_qubits(), initial);
  const StateVector exact = exact_evolve(h, a.t, psi);
  const auto ks = parse_list<int>(a.k_sweep, "--k-sweep");
  std::vector<double> xs;
  std::vector<double> errors;
  for (int k : ks) {
    xs.push_back(k);
    errors.push_back(state_distance(trotter_evolve(h, a.t, k, psi), exact));
  }
  if (a.common.format == "csv") {
    std::string text = csv_header(seed, "k,error");
    for (std::size_t i = 0; i < ks.size(); ++i) {
      text += std::to_string(ks[i]) + "," + num(errors[i]) + "\n";
    }
    return text;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    rows.push_back({{"k", ks[i]}, {"error", errors[i]}});
  }
  json j{{"seed", seed},
         {"qubits", h.n_qubits()},
         {"terms", h.terms().size()},
         {"t", a.t},
         {"initial", initial},
         {"loglog_slope", loglog_slope(xs, errors)},
         {"rows", rows}};
  return j.dump(2) + "\n";
}

struct AdiabaticArgs {
  Common common;
  std::string cost_file;
  int n = 2;
  std::string marked;
  std::string t_sweep;
  double epsilon = 0.3;
  std::size_t steps = 0;
};

std::string run_adiabatic(const AdiabaticArgs &a) {
  const std::uint64_t seed = resolve_seed(a.common);
  std::vector<double> costs;
  if (!a.cost_file.empty()) {
    costs = load_costs(a.cost_file);
  } else if (!a.marked.empty()) {
    costs = grover_costs(a.n, parse_list<std::uint64_t>(a.marked, "--marked"));
  } else {
    throw UsageError("give --cost-file or --marked");
  }
  const ProblemHamiltonian problem = problem_hamiltonian(costs);
  const int n = problem.hamiltonian.n_qubits();
  const LocalHamiltonian h0 = default_initial_hamiltonian(n);
  const GapReport gap = gap_scan(h0, problem.hamiltonian);
  std::optional<double> bound;
  if (!gap.degenerate && gap.delta_min > 0.0) {
    bound = adiabatic_bound(gap, a.epsilon);
  }
  std::vector<double> times;
  if (!a.t_sweep.empty()) {
    times = parse_list<double>(a.t_sweep, "--T-sweep");
  } else if (bound) {
    times = {*bound};
  } else {
    throw UsageError("degenerate gap: give --T-sweep explicitly");
  }
  const StateVector start = ground_state(h0);
  std::vector<double> probs;
  for (double t : times) {
    if (t < 0.0) {
      throw Error("run times must be nonnegative");
    }
    if (t == 0.0) {
      double p = 0.0;
      for (auto z : problem.ground_states) {
        p += std::norm(start[z]);
      }
      probs.push_back(p);
      continue;
    }
    probs.push_back(adiabatic_run(h0, problem.hamiltonian,
                                  AdiabaticSchedule{t, a.steps}, start,
                                  problem.ground_states)
                        .success_probability);
  }
  const std::string bound_text = bound ? num(*bound) : "nan";
  if (a.common.format == "csv") {
    std::string text = csv_header(seed, "T,p,bound_T");
    for (std::size_t i = 0; i < times.size(); ++i) {
      text += num(times[i]) + "," + num(probs[i]) + "," + bound_text + "\n";
    }
    return text;
  }
  json rows = json::array();
  for (std::size_t i = 0; i < times.size(); ++i) {
    rows.push_back({{"T", times[i]}, {"p", probs[i]}});
  }
  json j{{"seed", seed},
         {"qubits", n},
         {"ground_states", problem.ground_states},
         {"delta_min", gap.delta_min},
         {"s_at_min", gap.s_at_min},
         {"theta", gap.theta},
         {"epsilon", a.epsilon},
         {"bound_T", bound ? json(*bound) : json(nullptr)},
         {"rows", rows}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Error correction

struct QecArgs {
  Common common;
  std::string code = "steane7";
  std::string error = "x";
  int qubit = 0;
  std::string epsilon_sweep;
  int trials = 2000;
  std::string averaging = "exact";
  bool hamming = false;
};

std::string run_hamming(std::uint64_t seed, const Common &common) {
  const auto words = hamming_codewords();
  if (common.format == "csv") {
    std::string text = csv_header(seed, "position,syndrome");
    for (unsigned i = 1; i <= 7; ++i) {
      text += std::to_string(i) + "," +
              std::to_string(hamming_syndrome(1U << (i - 1))) + "\n";
    }
    return text;
  }
  json errors = json::array();
  for (unsigned i = 1; i <= 7; ++i) {
    errors.push_back({{"position", i}, {"syndrome", hamming_syndrome(1U << (i - 1))}});
  }
  json j{{"seed", seed}, {"codewords", words}, {"single_errors", errors}};
  return j.dump(2) + "\n";
}

std::string run_qec(const QecArgs &a) {
  const std::uint64_t seed = resolve_seed(a.common);
  if (a.hamming) {
    return run_hamming(seed, a.common);
  }
  RngStream rng(seed);
  const CodeSpec code = code_by_name(a.code);

  if (!a.epsilon_sweep.empty()) {
    const auto eps = parse_list<double>(a.epsilon_sweep, "--epsilon-sweep");
    const auto averaging = a.averaging == "sampled" ? SyndromeAveraging::Sampled
                                                    : SyndromeAveraging::Exact;
    const ScalingReport report =
        error_scaling_experiment(code, eps, a.trials, rng, averaging);
    if (a.common.format == "csv") {
      std::string text = csv_header(seed, "epsilon,uncorrected,corrected");
      for (const auto &p : report.points) {
        text += num(p.epsilon) + "," + num(p.uncorrected) + "," +
                num(p.corrected) + "\n";
      }
      return text;
    }
    json rows = json::array();
    for (const auto &p : report.points) {
      rows.push_back({{"epsilon", p.epsilon},
                      {"uncorrected", p.uncorrected},
                      {"corrected", p.corrected}});
    }
    json j{{"seed", seed},
           {"code", code.name},
           {"trials", a.trials},
           {"averaging", a.averaging},
           {"uncorrected_slope", report.uncorrected_slope},
           {"corrected_slope", report.corrected_slope},
           {"rows", rows}};
    return j.dump(2) + "\n";
  }

  if (a.common.format == "csv") {
    throw UsageError("csv output needs --epsilon-sweep or --hamming");
  }
  if (a.qubit < 0 || a.qubit >= code.n_physical) {
    throw Error("--qubit must lie in 0.." + std::to_string(code.n_physical - 1));
  }
  const StateVector logical = random_state(1, rng);
  NoiseEvent event;
  event.qubit = a.qubit;
  int n_env = 0;
  if (a.error == "x") {
    event.kind = NoiseKind::BitFlip;
  } else if (a.error == "y") {
    event.kind = NoiseKind::PauliY;
  } else if (a.error == "z") {
    event.kind = NoiseKind::PhaseFlip;
  } else if (a.error == "random-unitary") {
    event.kind = NoiseKind::GeneralUnitary;
    event.unitary = random_unitary(1, rng);
  } else if (a.error == "env") {
    event.kind = NoiseKind::EntanglingEnvironment;
    event.environment_qubit = code.n_physical + 1;
    n_env = 1;
  } else {
    throw UsageError("--error must be x, y, z, random-unitary or env");
  }
  StateVector state = prepare_block(code, logical, n_env);
  const StateVector reference = encode(code, logical);
  apply_noise(state, event);
  const double before = logical_fidelity(code, state, logical);
  const CorrectionReport report = correct(code, state, rng);
  json j{{"seed", seed},
         {"code", code.name},
         {"error", a.error},
         {"qubit", a.qubit},
         {"logical_state", {{"re0", logical[0].real()}, {"im0", logical[0].imag()},
                            {"re1", logical[1].real()}, {"im1", logical[1].imag()}}},
         {"syndrome", report.syndrome},
         {"syndrome_bits", report.syndrome_bits},
         {"uncorrectable", report.uncorrectable},
         {"logical_fidelity_before", before},
         {"logical_fidelity", logical_fidelity(code, state, logical)},
         {"block_fidelity", block_fidelity(state, reference)}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

void emit(const Common &common, const std::string &text, std::ostream &out) {
  if (common.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(common.output, std::ios::binary);
  if (!file) {
    throw Error("cannot write '" + common.output + "'");
  }
  file << text;
}

} // namespace

std::vector<std::pair<std::string, std::string>> manifest_entries() {
  return {
      {"deutsch-jozsa",
       "Deutsch and Deutsch-Jozsa algorithms: promise problems decided with "
       "one oracle query"},
      {"bernstein-vazirani", "Bernstein-Vazirani: hidden parity string in one query"},
      {"simon", "Simon's algorithm: hidden XOR period via GF(2) linear algebra"},
      {"grover",
       "Grover search: amplitude amplification, several marked items, unknown "
       "number of solutions"},
      {"shor",
       "Shor factoring: reduction to period finding, modular exponentiation, "
       "continued fractions"},
      {"qft", "Quantum Fourier transform circuit with conditional phase gates"},
      {"trotter", "Trotter formula for local Hamiltonian simulation"},
      {"adiabatic",
       "Adiabatic optimization: interpolated Hamiltonian, spectral gap, run-time "
       "bound"},
      {"qec",
       "Quantum error correction: repetition, Shor nine-qubit and Steane "
       "seven-qubit codes, Hamming parity checks"},
      {"manifest", "This map of subcommands to topics"},
  };
}

int dispatch(const std::vector<std::string> &args, std::ostream &out,
             std::ostream &err) {
  CLI::App app{"qsim: dense statevector quantum algorithm simulator", "qsim"};
  app.require_subcommand(1);

  QueryArgs dj;
  auto *dj_cmd = app.add_subcommand("deutsch-jozsa", "Deutsch-Jozsa decision; CSV outcome,count");
  dj_cmd->add_option("--n", dj.n, "query qubits")->check(CLI::Range(1, 13));
  dj_cmd->add_option("--oracle-file", dj.oracle_file, "truth table file");
  dj_cmd->add_option("--function", dj.function,
                     "constant0 | constant1 | balanced | parity");
  dj_cmd->add_option("--trials", dj.trials, "repeated runs")->check(CLI::PositiveNumber);
  add_common(dj_cmd, dj.common);

  QueryArgs bv;
  auto *bv_cmd = app.add_subcommand("bernstein-vazirani", "Bernstein-Vazirani; CSV outcome,count");
  bv_cmd->add_option("--n", bv.n, "query qubits")->check(CLI::Range(1, 13));
  bv_cmd->add_option("--secret", bv.secret, "hidden string a (random if absent)");
  bv_cmd->add_option("--oracle-file", bv.oracle_file, "truth table file");
  bv_cmd->add_option("--trials", bv.trials, "repeated runs")->check(CLI::PositiveNumber);
  add_common(bv_cmd, bv.common);

  QueryArgs si;
  auto *si_cmd = app.add_subcommand("simon", "Simon's algorithm; CSV outcome,count over sampled y");
  si_cmd->add_option("--n", si.n, "input bits")->check(CLI::Range(1, 7));
  si_cmd->add_option("--period", si.period, "hidden period p (random if absent)");
  si_cmd->add_option("--oracle-file", si.oracle_file, "truth table file");
  si_cmd->add_option("--trials", si.trials, "independent runs")->check(CLI::PositiveNumber);
  add_common(si_cmd, si.common);

  GroverArgs gr;
  auto *gr_cmd = app.add_subcommand("grover", "Grover search; CSV k,analytic_prob,empirical_freq");
  gr_cmd->add_option("--n", gr.n, "qubits")->check(CLI::Range(1, kDefaultQubitCap));
  gr_cmd->add_option("--marked", gr.marked, "comma-separated marked items");
  gr_cmd->add_option("--random-marked", gr.random_marked, "draw M marked items");
  gr_cmd->add_option("--iterations", gr.iterations, "integer | auto | random");
  gr_cmd->add_option("--trials", gr.trials, "runs per k in the CSV sweep")
      ->check(CLI::PositiveNumber);
  gr_cmd->add_option("--k-max", gr.k_max, "largest k in the CSV sweep (default 2 k_opt)");
  add_common(gr_cmd, gr.common);

  ShorArgs sh;
  auto *sh_cmd = app.add_subcommand("shor", "Shor factoring; CSV trial,y");
  sh_cmd->add_option("--n", sh.n, "number to factor");
  sh_cmd->add_option("--base", sh.base, "fixed base a");
  sh_cmd->add_option("--strategy", sh.strategy, "cf | lcm")
      ->check(CLI::IsMember({"cf", "lcm"}));
  sh_cmd->add_option("--max-trials", sh.max_trials, "period-finding budget")
      ->check(CLI::PositiveNumber);
  add_common(sh_cmd, sh.common);

  QftArgs qf;
  auto *qf_cmd = app.add_subcommand("qft", "Quantum Fourier transform; CSV y,probability");
  qf_cmd->add_option("--q", qf.q, "qubits");
  qf_cmd->add_option("--cutoff-m", qf.cutoff, "drop P_d with d >= m")->check(CLI::PositiveNumber);
  qf_cmd->add_flag("--check", qf.check, "compare against the DFT matrix on random states");
  qf_cmd->add_option("--input", qf.input, "input basis state (or offset with --period)");
  qf_cmd->add_option("--period", qf.period, "periodic input with this period");
  qf_cmd->add_option("--trials", qf.trials, "random states for --check")
      ->check(CLI::PositiveNumber);
  add_common(qf_cmd, qf.common);

  TrotterArgs tr;
  auto *tr_cmd = app.add_subcommand("trotter", "Trotter error sweep; CSV k,error");
  tr_cmd->add_option("--t", tr.t, "evolution time");
  tr_cmd->add_option("--k-sweep", tr.k_sweep, "comma-separated step counts");
  tr_cmd->add_option("--hamiltonian-file", tr.hamiltonian_file, "term file");
  tr_cmd->add_option("--model", tr.model, "heisenberg | xz | commuting");
  tr_cmd->add_option("--n", tr.n, "qubits for built-in models")
      ->check(CLI::Range(1, kDenseQubitCap));
  tr_cmd->add_option("--initial", tr.initial, "initial basis state");
  add_common(tr_cmd, tr.common);

  AdiabaticArgs ad;
  auto *ad_cmd = app.add_subcommand("adiabatic", "Adiabatic run; CSV T,p,bound_T");
  ad_cmd->add_option("--cost-file", ad.cost_file, "cost table file");
  ad_cmd->add_option("--n", ad.n, "qubits for --marked")->check(CLI::Range(1, kDenseQubitCap));
  ad_cmd->add_option("--marked", ad.marked, "Grover cost: comma-separated marked items");
  ad_cmd->add_option("--T-sweep", ad.t_sweep, "comma-separated run times (default: the bound)");
  ad_cmd->add_option("--epsilon", ad.epsilon, "target error for the bound")
      ->check(CLI::Range(1e-9, 1.0));
  ad_cmd->add_option("--steps", ad.steps, "integration steps (default automatic)");
  add_common(ad_cmd, ad.common);

  QecArgs qe;
  auto *qe_cmd = app.add_subcommand("qec", "Error correction; CSV epsilon,uncorrected,corrected");
  qe_cmd->add_option("--code", qe.code, "repetition | shor9 | steane7")
      ->check(CLI::IsMember({"repetition", "shor9", "steane7"}));
  qe_cmd->add_option("--error", qe.error, "x | y | z | random-unitary | env");
  qe_cmd->add_option("--qubit", qe.qubit, "error position");
  qe_cmd->add_option("--epsilon-sweep", qe.epsilon_sweep, "comma-separated error strengths");
  qe_cmd->add_option("--trials", qe.trials, "trials per strength")->check(CLI::PositiveNumber);
  qe_cmd->add_option("--averaging", qe.averaging, "exact | sampled syndrome averaging")
      ->check(CLI::IsMember({"exact", "sampled"}));
  qe_cmd->add_flag("--hamming", qe.hamming, "print the Hamming syndrome table");
  add_common(qe_cmd, qe.common);

  bool manifest_json = false;
  auto *mf_cmd = app.add_subcommand("manifest", "Subcommand to topic map");
  mf_cmd->add_flag("--json", manifest_json, "machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "qsim: " << e.what() << "\n";
    return 2;
  }

  try {
    if (dj_cmd->parsed()) {
      emit(dj.common, run_deutsch_jozsa(dj), out);
    } else if (bv_cmd->parsed()) {
      emit(bv.common, run_bernstein_vazirani(bv), out);
    } else if (si_cmd->parsed()) {
      emit(si.common, run_simon(si), out);
    } else if (gr_cmd->parsed()) {
      emit(gr.common, run_grover(gr), out);
    } else if (sh_cmd->parsed()) {
      emit(sh.common, run_shor(sh), out);
    } else if (qf_cmd->parsed()) {
      emit(qf.common, run_qft(qf), out);
    } else if (tr_cmd->parsed()) {
      emit(tr.common, run_trotter(tr), out);
    } else if (ad_cmd->parsed()) {
      emit(ad.common, run_adiabatic(ad), out);
    } else if (qe_cmd->parsed()) {
      emit(qe.common, run_qec(qe), out);
    } else if (mf_cmd->parsed()) {
      if (manifest_json) {
        json j = json::object();
        for (const auto &[name, topic] : manifest_entries()) {
          j[name] = topic;
        }
        out << j.dump(2) << "\n";
      } else {
        for (const auto &[name, topic] : manifest_entries()) {
          out << name << "\t" << topic << "\n";
        }
      }
    }
  } catch (const UsageError &e) {
    err << "qsim: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    err << "qsim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

} // namespace qsim::cli
