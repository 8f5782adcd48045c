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
// Acceptance suite: one [PASS]/[FAIL] line per criterion.
//
//   acceptance <C01..C13|all> [--seed N] [--artifacts DIR]

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qsim/cli.hpp"
#include "qsim/dynamics.hpp"
#include "qsim/grover.hpp"
#include "qsim/oracles.hpp"
#include "qsim/qec.hpp"
#include "qsim/querylib.hpp"
#include "qsim/shor.hpp"
#include "qsim/simcore.hpp"
#include "support/reference.hpp"

namespace {

using namespace qsim;

using Artifacts = std::map<std::string, std::string>;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string run_cli(const std::vector<std::string> &args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::dispatch(args, out, err);
  if (code != 0) {
    throw std::runtime_error("qsim " + args.at(0) + " exited " +
                             std::to_string(code) + ": " + err.str());
  }
  return out.str();
}

std::vector<std::vector<double>> parse_csv(const std::string &text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      row.push_back(std::stod(cell));
    }
    rows.push_back(row);
  }
  return rows;
}

double fit_slope(const std::vector<double> &x, const std::vector<double> &y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

ref::Vector to_ref(const StateVector &s) {
  ref::Vector v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = s[i];
  }
  return v;
}

// C01 ------------------------------------------------------------------------
Outcome kernel_equivalence(RngStream rng, Artifacts &art) {
  double worst = 0.0;
  std::ostringstream csv;
  csv << "pair,n,targets,max_error\n";
  for (int i = 0; i < 500; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 4));
    const int k = static_cast<int>(rng.uniform_int(1, std::min(3, n)));
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    for (int j = n - 1; j > 0; --j) {
      std::swap(pool[static_cast<std::size_t>(j)],
                pool[rng.uniform_int(0, static_cast<std::uint64_t>(j))]);
    }
    const std::vector<int> targets(pool.begin(), pool.begin() + k);
    const GateMatrix gate = random_unitary(k, rng);
    const StateVector input = random_state(n, rng);
    StateVector fast = input;
    apply_gate(fast, gate, targets);
    const ref::Vector want = ref::embed(n, gate.matrix(), targets) * to_ref(input);
    double err = 0.0;
    for (std::size_t a = 0; a < fast.size(); ++a) {
      err = std::max(err, std::abs(fast[a] - want(static_cast<Eigen::Index>(a))));
    }
    worst = std::max(worst, err);
    std::string tlist;
    for (int t : targets) {
      tlist += std::to_string(t);
    }
    csv << i << "," << n << "," << tlist << "," << fmt(err) << "\n";
  }
  art["C01_kernel.csv"] = csv.str();
  return {worst < 1e-12, "500 random (gate, state) pairs, n <= 4: max amplitude error " +
                             fmt(worst) + " (need < 1e-12)"};
}

// C02 ------------------------------------------------------------------------
Outcome deutsch_jozsa_determinism(RngStream rng, Artifacts &art) {
  int runs = 0;
  int failures = 0;
  double worst = 0.0;
  std::ostringstream csv;
  csv << "n,kind,verdict,zero_probability\n";
  auto check = [&](const ClassicalFunction &f, bool constant) {
    const PromiseVerdict v = f.n_in() == 1 ? deutsch(f, rng) : deutsch_jozsa(f, rng);
    const double want = constant ? 1.0 : 0.0;
    const double dev = std::abs(v.zero_probability - want);
    const bool ok = (v.verdict == Verdict::Constant) == constant && dev < 1e-9 &&
                    (v.outcome == 0) == constant;
    worst = std::max(worst, dev);
    failures += ok ? 0 : 1;
    ++runs;
    csv << f.n_in() << "," << (constant ? "constant" : "balanced") << ","
        << to_string(v.verdict) << "," << fmt(v.zero_probability) << "\n";
  };
  // Deutsch: all four one-bit functions.
  for (std::uint64_t t = 0; t < 4; ++t) {
    check(ClassicalFunction(1, 1, {t & 1U, (t >> 1) & 1U}),
          (t & 1U) == ((t >> 1) & 1U));
  }
  for (int n = 2; n <= 6; ++n) {
    const std::size_t size = std::size_t{1} << n;
    for (std::uint64_t c = 0; c < 2; ++c) {
      check(ClassicalFunction(n, 1, std::vector<std::uint64_t>(size, c)), true);
    }
    for (int i = 0; i < 50; ++i) {
      std::vector<std::uint64_t> table(size, 0);
      std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(size / 2), 1);
      for (std::size_t j = size - 1; j > 0; --j) {
        std::swap(table[j], table[rng.uniform_int(0, j)]);
      }
      check(ClassicalFunction(n, 1, table), false);
    }
  }
  art["C02_deutsch_jozsa.csv"] = csv.str();
  return {failures == 0, std::to_string(runs) + " runs over N = 1..6 (all constant, 50 balanced per N): " +
                             std::to_string(failures) + " wrong verdicts, max |P(0..0) - {1,0}| " + fmt(worst)};
}

// C03 ------------------------------------------------------------------------
Outcome bernstein_vazirani_exhaustive(RngStream rng, Artifacts &art) {
  int failures = 0;
  std::ostringstream csv;
  csv << "a,recovered,queries\n";
  for (std::uint64_t a = 0; a < 32; ++a) {
    std::vector<std::uint64_t> table(32);
    for (std::uint64_t x = 0; x < 32; ++x) {
      table[x] = static_cast<std::uint64_t>(ref::dot_mod2(a, x));
    }
    const BvResult r = bernstein_vazirani(ClassicalFunction(5, 1, table), rng);
    failures += (r.secret == a && r.queries == 1) ? 0 : 1;
    csv << a << "," << r.secret << "," << r.queries << "\n";
  }
  art["C03_bernstein_vazirani.csv"] = csv.str();
  return {failures == 0, "all 32 secrets at N = 5, one query each: " +
                             std::to_string(failures) + " failures"};
}

// C04 ------------------------------------------------------------------------
Outcome simon_recovery(RngStream rng, Artifacts &art) {
  int failures = 0;
  int orthogonality = 0;
  bool mean_ok = true;
  std::ostringstream csv;
  csv << "n,mean_queries,bound\n";
  std::string summary;
  for (int n = 3; n <= 7; ++n) {
    std::size_t queries = 0;
    for (int run = 0; run < 50; ++run) {
      RngStream r = rng.split(static_cast<std::uint64_t>(n * 100 + run));
      const std::uint64_t p = r.uniform_int(1, (1ULL << n) - 1);
      const ClassicalFunction f = make_simon_function(n, p, r);
      std::set<std::uint64_t> values;
      bool promise = true;
      for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
        promise = promise && f(x) == f(x ^ p);
        values.insert(f(x));
      }
      if (!promise || values.size() != (1ULL << (n - 1))) {
        ++failures;
        continue;
      }
      const SimonResult res = simon(f, r);
      failures += res.period == p ? 0 : 1;
      for (auto y : res.samples) {
        orthogonality += ref::dot_mod2(y, p);
      }
      queries += res.queries;
    }
    const double mean = static_cast<double>(queries) / 50.0;
    mean_ok = mean_ok && mean <= 2.0 * (n - 1);
    csv << n << "," << fmt(mean) << "," << 2 * (n - 1) << "\n";
    summary += " N=" + std::to_string(n) + ":" + fmt(mean);
  }
  art["C04_simon.csv"] = csv.str();
  return {failures == 0 && orthogonality == 0 && mean_ok,
          "N = 3..7, 50 runs each: " + std::to_string(failures) +
              " wrong periods, " + std::to_string(orthogonality) +
              " samples with y.p != 0; mean queries" + summary +
              " (bound 2(N-1))"};
}

// C05 ------------------------------------------------------------------------
Outcome grover_exactness(RngStream rng, Artifacts &art) {
  double worst = 0.0;
  int cases = 0;
  for (int n = 1; n <= 10; ++n) {
    const std::uint64_t big_n = 1ULL << n;
    std::set<std::uint64_t> ms{1, 2, big_n / 4};
    for (std::uint64_t m : ms) {
      if (m < 1 || m >= big_n) {
        continue;
      }
      const GroverInstance inst = random_instance(n, m, rng);
      const std::uint64_t k_opt = grover_optimal_iterations(big_n, m);
      StateVector s = uniform_state(n);
      for (std::uint64_t k = 0; k <= 2 * k_opt; ++k) {
        double p = 0.0;
        for (auto x : inst.marked()) {
          p += std::norm(s[x]);
        }
        worst = std::max(worst, std::abs(p - ref::grover_analytic(
                                                 static_cast<double>(big_n),
                                                 static_cast<double>(m),
                                                 static_cast<double>(k))));
        ++cases;
        grover_oracle_apply(s, inst);
        diffusion_apply(s);
      }
    }
  }
  const std::uint64_t k_opt = grover_optimal_iterations(1024, 1);
  const double quarter_pi_root = std::numbers::pi * std::sqrt(1024.0) / 4.0;
  const GroverReport big = grover_search(GroverInstance(10, {700}), std::nullopt, rng);
  const std::string csv = run_cli({"grover", "--n", "6", "--marked", "5", "--format",
                                   "csv", "--trials", "50", "--seed",
                                   std::to_string(rng.next_u64())});
  art["C05_grover_sweep.csv"] = csv;
  const bool ok = worst < 1e-9 && k_opt == 25 && big.iterations == 25 &&
                  big.final_success_prob >= 0.999 &&
                  std::abs(quarter_pi_root - 25.13) < 0.01;
  return {ok, std::to_string(cases) + " (n, M, k) points: max |p - sin^2((2k+1)phi)| " +
                  fmt(worst) + "; N = 1024, M = 1: k_opt = " + std::to_string(k_opt) +
                  " (pi sqrt(N)/4 = " + fmt(quarter_pi_root) + "), success " +
                  fmt(big.final_success_prob)};
}

// C06 ------------------------------------------------------------------------
Outcome qft_checks(RngStream rng, Artifacts &art) {
  double worst = 0.0;
  bool counts_ok = true;
  const GateMatrix swap = gates::swap();
  for (int q = 1; q <= 8; ++q) {
    const Circuit circuit = qft_circuit(QftCircuitSpec{q, std::nullopt});
    std::size_t core = 0;
    for (const auto &step : circuit.steps()) {
      const auto &op = std::get<GateOp>(step);
      const bool is_swap = op.gate.arity() == 2 &&
                           (op.gate.matrix() - swap.matrix()).norm() < 1e-14;
      core += is_swap ? 0 : 1;
    }
    const auto want_count = static_cast<std::size_t>(q * (q + 1) / 2);
    counts_ok = counts_ok && core == want_count &&
                qft_core_gate_count(circuit) == want_count;
    const ref::Matrix dft = ref::dft_matrix(q);
    for (int t = 0; t < 200; ++t) {
      StateVector s = random_state(q, rng);
      const ref::Vector want = dft * to_ref(s);
      run_circuit(circuit, s, rng);
      for (std::size_t i = 0; i < s.size(); ++i) {
        worst = std::max(worst, std::abs(s[i] - want(static_cast<Eigen::Index>(i))));
      }
    }
  }
  std::ostringstream csv;
  csv << "q,m,sampled_error,operator_norm\n";
  bool monotone = true;
  std::string sampled_breaks;
  std::string exact_breaks;
  for (int q = 2; q <= 8; ++q) {
    const RngStream approx_rng = rng.split(static_cast<std::uint64_t>(100 + q));
    const Circuit exact = qft_circuit(QftCircuitSpec{q, std::nullopt});
    double previous = 1e300;
    double previous_op = 1e300;
    for (int m = 1; m <= q; ++m) {
      RngStream r = approx_rng;
      const double e = approx_qft_error(q, m, 200, r);
      const std::string where = " (q=" + std::to_string(q) + ",m=" + std::to_string(m - 1) +
                                "->" + std::to_string(m) + ")";
      if (e > previous + 1e-12) {
        monotone = false;
        sampled_breaks += where;
      }
      previous = e;
      // Exact operator 2-norm of the difference, column by column.
      const Circuit approx = qft_circuit(QftCircuitSpec{q, m});
      const auto dim = static_cast<Eigen::Index>(1) << q;
      ref::Matrix diff(dim, dim);
      for (Eigen::Index j = 0; j < dim; ++j) {
        StateVector a(q, static_cast<std::uint64_t>(j));
        StateVector b(q, static_cast<std::uint64_t>(j));
        run_circuit(approx, a, r);
        run_circuit(exact, b, r);
        diff.col(j) = to_ref(a) - to_ref(b);
      }
      const double op = Eigen::JacobiSVD<ref::Matrix>(diff).singularValues()(0);
      if (op > previous_op + 1e-12) {
        exact_breaks += where;
      }
      previous_op = op;
      csv << q << "," << m << "," << fmt(e) << "," << fmt(op) << "\n";
    }
  }
  art["C06_qft_cutoff.csv"] = csv.str();
  art["C06_qft_periodic.csv"] = run_cli({"qft", "--q", "5", "--period", "3", "--format",
                                         "csv", "--seed", "1"});
  return {worst < 1e-9 && counts_ok && monotone,
          "q = 1..8, 200 states each: max deviation from DFT matrix " + fmt(worst) +
              "; gate counts q(q+1)/2 " + (counts_ok ? "ok" : "WRONG") +
              "; cutoff error (max over 200 states) increases at" +
              (sampled_breaks.empty() ? std::string(" no m") : sampled_breaks) +
              "; exact operator norm increases at" +
              (exact_breaks.empty() ? std::string(" no m") : exact_breaks)};
}

// C07 ------------------------------------------------------------------------
double reference_peak_mass(std::uint64_t a, std::uint64_t n_mod, const RegisterPlan &plan,
                           const std::vector<double> &lib_dist, double &dist_error) {
  const std::uint64_t size = 1ULL << plan.q_in;
  // Group x by a^x mod N; P(y) = n^-2 sum_v |sum_{x in v} e^{2 pi i x y / n}|^2.
  std::map<std::uint64_t, std::vector<std::uint64_t>> classes;
  std::uint64_t value = 1;
  for (std::uint64_t x = 0; x < size; ++x) {
    classes[value].push_back(x);
    value = value * a % n_mod;
  }
  std::uint64_t period = 1;
  for (value = a % n_mod; value != 1; value = value * a % n_mod) {
    ++period;
  }
  double mass = 0.0;
  dist_error = 0.0;
  const double nd = static_cast<double>(size);
  for (std::uint64_t y = 0; y < size; ++y) {
    double p = 0.0;
    for (const auto &[v, xs] : classes) {
      ref::Complex acc{0.0, 0.0};
      for (auto x : xs) {
        acc += std::polar(1.0, 2.0 * std::numbers::pi *
                                   static_cast<double>((x * y) % size) / nd);
      }
      p += std::norm(acc);
    }
    p /= nd * nd;
    dist_error = std::max(dist_error, std::abs(p - lib_dist[y]));
    const double frac = static_cast<double>(y) * static_cast<double>(period) / nd;
    const double nearest = std::round(frac);
    if (std::abs(static_cast<double>(y) - nearest * nd / static_cast<double>(period)) <= 0.5) {
      mass += p;
    }
  }
  return mass;
}

Outcome shor_end_to_end(RngStream rng, Artifacts &art) {
  std::ostringstream runs_csv;
  runs_csv << "N,seed_index,outcome,factor,trials\n";
  std::ostringstream mass_csv;
  mass_csv << "N,a,period,q_in,peak_mass\n";
  bool ok = true;
  std::string detail;
  double min_mass = 1.0;
  double worst_dist = 0.0;
  for (std::uint64_t n_mod : {15ULL, 21ULL}) {
    int successes = 0;
    std::set<std::uint64_t> bases;
    for (int i = 0; i < 100; ++i) {
      RngStream r = rng.split(n_mod * 1000 + static_cast<std::uint64_t>(i));
      const ShorResult res = shor_factor(n_mod, r);
      const bool good = res.outcome == ShorOutcome::Factor && res.factor > 1 &&
                        res.factor < n_mod && n_mod % res.factor == 0 &&
                        res.trials <= 20;
      successes += good ? 1 : 0;
      bases.insert(res.sample_bases.begin(), res.sample_bases.end());
      runs_csv << n_mod << "," << i << "," << (good ? "factor" : "fail") << ","
               << res.factor << "," << res.trials << "\n";
    }
    const RegisterPlan plan = plan_registers(n_mod);
    double instance_min = 1.0;
    for (auto a : bases) {
      const auto dist = period_distribution(a, n_mod, plan);
      double dist_error = 0.0;
      const double mass = reference_peak_mass(a, n_mod, plan, dist, dist_error);
      worst_dist = std::max(worst_dist, dist_error);
      instance_min = std::min(instance_min, mass);
      mass_csv << n_mod << "," << a << "," << classical_order(a, n_mod) << ","
               << plan.q_in << "," << fmt(mass) << "\n";
    }
    min_mass = std::min(min_mass, instance_min);
    ok = ok && successes >= 95 && instance_min >= 0.8;
    detail += "N=" + std::to_string(n_mod) + ": " + std::to_string(successes) +
              "/100 factored, min peak mass " + fmt(instance_min) + " over " +
              std::to_string(bases.size()) + " bases; ";
  }
  ok = ok && worst_dist < 1e-9;
  art["C07_shor_runs.csv"] = runs_csv.str();
  art["C07_shor_peak_mass.csv"] = mass_csv.str();
  art["C07_shor_cli.json"] = run_cli({"shor", "--n", "21", "--seed", "7"});
  return {ok, detail + "distribution vs brute-force oracle " + fmt(worst_dist) +
                  " (need >= 95/100 and mass >= 0.8)"};
}

// C08 ------------------------------------------------------------------------
Outcome trotter_scaling(RngStream rng, Artifacts &art) {
  using namespace pauli;
  const std::vector<int> ks{16, 32, 64, 128, 256};
  std::ostringstream csv;
  csv << "model,k,error\n";
  auto sweep = [&](const std::string &name, const LocalHamiltonian &h,
                   const ref::Matrix &dense, const StateVector &psi) {
    const ref::Vector exact = ref::evolution(dense, 1.0) * to_ref(psi);
    std::vector<double> xs;
    std::vector<double> errs;
    for (int k : ks) {
      const StateVector s = trotter_evolve(h, 1.0, k, psi);
      const double e = (to_ref(s) - exact).norm();
      xs.push_back(k);
      errs.push_back(e);
      csv << name << "," << k << "," << fmt(e) << "\n";
    }
    return fit_slope(xs, errs);
  };

  LocalHamiltonian one(1);
  one.add_term(make_term({0}, X())).add_term(make_term({0}, Z()));
  const double slope1 = sweep("xz1", one, ref::pauli_string("X") + ref::pauli_string("Z"),
                              StateVector(1, 0));

  const int n = 6;
  LocalHamiltonian chain(n);
  ref::Matrix dense = ref::Matrix::Zero(64, 64);
  for (int i = 0; i + 1 < n; ++i) {
    chain.add_term(make_term({i, i + 1}, kron(X(), X()) + kron(Y(), Y()) + kron(Z(), Z())));
    for (char c : {'X', 'Y', 'Z'}) {
      std::string ops(static_cast<std::size_t>(n), 'I');
      ops[static_cast<std::size_t>(i)] = c;
      ops[static_cast<std::size_t>(i + 1)] = c;
      dense += ref::pauli_string(ops);
    }
  }
  const double slope6 = sweep("heisenberg6", chain, dense, StateVector(n, 0b101010));

  // Commuting terms: Z_i and Z_i Z_{i+1} on 4 qubits, random initial state.
  LocalHamiltonian comm(4);
  ref::Matrix comm_dense = ref::Matrix::Zero(16, 16);
  for (int i = 0; i < 4; ++i) {
    comm.add_term(make_term({i}, 0.7 * Z()));
    std::string ops(4, 'I');
    ops[static_cast<std::size_t>(i)] = 'Z';
    comm_dense += 0.7 * ref::pauli_string(ops);
    if (i + 1 < 4) {
      comm.add_term(make_term({i, i + 1}, 1.3 * kron(Z(), Z())));
      ops[static_cast<std::size_t>(i + 1)] = 'Z';
      comm_dense += 1.3 * ref::pauli_string(ops);
    }
  }
  const StateVector psi = random_state(4, rng);
  const ref::Vector exact = ref::evolution(comm_dense, 1.0) * to_ref(psi);
  double comm_err = 0.0;
  for (int k : {1, 2, 3, 10}) {
    comm_err = std::max(comm_err, (to_ref(trotter_evolve(comm, 1.0, k, psi)) - exact).norm());
  }
  art["C08_trotter.csv"] = csv.str();
  art["C08_trotter_cli.csv"] = run_cli({"trotter", "--model", "heisenberg", "--format",
                                        "csv", "--seed", "1"});
  const bool ok = slope1 >= -1.2 && slope1 <= -0.8 && slope6 >= -1.2 &&
                  slope6 <= -0.8 && comm_err < 1e-10;
  return {ok, "log-log slope over k = 16..256: 1-qubit X+Z " + fmt(slope1) +
                  ", 6-qubit Heisenberg " + fmt(slope6) +
                  " (need [-1.2, -0.8]); commuting case max error " + fmt(comm_err)};
}

// C09 ------------------------------------------------------------------------
Outcome adiabatic_bound_check(RngStream, Artifacts &art) {
  std::ostringstream csv;
  csv << "n,marked,delta_min,theta,bound_T,p\n";
  bool ok = true;
  std::string detail;
  const double eps = 0.3;
  for (auto [n, marked] : std::vector<std::pair<int, std::uint64_t>>{{2, 3}, {3, 5}}) {
    const std::vector<std::uint64_t> m{marked};
    const auto costs = grover_costs(n, m);
    const ProblemHamiltonian prob = problem_hamiltonian(costs);
    const LocalHamiltonian h0 = default_initial_hamiltonian(n);
    const GapReport gap = gap_scan(h0, prob.hamiltonian);
    // Independent gap on a fine grid from dense matrices built here.
    ref::Matrix a0 = ref::Matrix::Zero(1 << n, 1 << n);
    for (int q = 0; q < n; ++q) {
      std::string ops(static_cast<std::size_t>(n), 'I');
      ops[static_cast<std::size_t>(q)] = 'X';
      a0 += 0.5 * (ref::identity(n) - ref::pauli_string(ops));
    }
    ref::Matrix at = ref::Matrix::Zero(1 << n, 1 << n);
    for (int z = 0; z < (1 << n); ++z) {
      at(z, z) = costs[static_cast<std::size_t>(z)];
    }
    double ref_gap = 1e300;
    for (int i = 0; i <= 4000; ++i) {
      const double s = i / 4000.0;
      Eigen::SelfAdjointEigenSolver<ref::Matrix> es((1.0 - s) * a0 + s * at,
                                                    Eigen::EigenvaluesOnly);
      ref_gap = std::min(ref_gap, es.eigenvalues()(1) - es.eigenvalues()(0));
    }
    const double bound = adiabatic_bound(gap, eps);
    const StateVector start = ground_state(h0);
    const double p = adiabatic_run(h0, prob.hamiltonian, AdiabaticSchedule{bound, 0},
                                   start, prob.ground_states)
                         .success_probability;
    const bool gap_ok = gap.delta_min <= ref_gap + 1e-9 && gap.delta_min >= ref_gap - 1e-4;
    ok = ok && p >= 1.0 - eps * eps && gap_ok;
    csv << n << "," << marked << "," << fmt(gap.delta_min) << "," << fmt(gap.theta)
        << "," << fmt(bound) << "," << fmt(p) << "\n";
    detail += "n=" + std::to_string(n) + ": Delta " + fmt(gap.delta_min) + " (ref " +
              fmt(ref_gap) + "), Theta " + fmt(gap.theta) + ", T " + fmt(bound) +
              ", p " + fmt(p) + "; ";
  }
  double sudden = 0.0;
  for (int n : {2, 3}) {
    for (std::uint64_t mcount : {1ULL, 2ULL}) {
      std::vector<std::uint64_t> m;
      for (std::uint64_t i = 0; i < mcount; ++i) {
        m.push_back(i + 1);
      }
      const ProblemHamiltonian prob = problem_hamiltonian(grover_costs(n, m));
      const LocalHamiltonian h0 = default_initial_hamiltonian(n);
      const double p = adiabatic_run(h0, prob.hamiltonian, AdiabaticSchedule{1e-8, 0},
                                     ground_state(h0), prob.ground_states)
                           .success_probability;
      sudden = std::max(sudden, std::abs(p - static_cast<double>(mcount) / (1 << n)));
    }
  }
  ok = ok && sudden < 1e-6;
  art["C09_adiabatic.csv"] = csv.str();
  art["C09_adiabatic_cli.csv"] = run_cli({"adiabatic", "--n", "2", "--marked", "3",
                                          "--T-sweep", "0,1,4,16", "--format", "csv",
                                          "--seed", "1"});
  return {ok, detail + "sudden limit max |p - M/2^n| " + fmt(sudden) +
                  " (need p >= 0.91, < 1e-6)"};
}

// C10 ------------------------------------------------------------------------
Outcome qec_correctability(RngStream rng, Artifacts &art) {
  std::ostringstream csv;
  csv << "code,qubit,error,logical_fidelity,syndrome_dependence\n";
  bool ok = true;
  std::string detail;
  for (const CodeSpec &code : {repetition_code(), shor9_code(), steane7_code()}) {
    int cases = 0;
    int fid_fail = 0;
    int dep_fail = 0;
    double worst_fid = 1.0;
    for (int q = 0; q < code.n_physical; ++q) {
      std::vector<std::pair<std::string, NoiseEvent>> events;
      events.push_back({"x", NoiseEvent{NoiseKind::BitFlip, q, std::nullopt, -1}});
      events.push_back({"y", NoiseEvent{NoiseKind::PauliY, q, std::nullopt, -1}});
      events.push_back({"z", NoiseEvent{NoiseKind::PhaseFlip, q, std::nullopt, -1}});
      for (int u = 0; u < 5; ++u) {
        events.push_back({"u" + std::to_string(u),
                          NoiseEvent{NoiseKind::GeneralUnitary, q, random_unitary(1, rng), -1}});
      }
      events.push_back({"env", NoiseEvent{NoiseKind::EntanglingEnvironment, q, std::nullopt,
                                          code.n_physical + 1}});
      std::vector<StateVector> logicals{StateVector(1, 0), StateVector(1, 1)};
      for (int i = 0; i < 4; ++i) {
        logicals.push_back(random_state(1, rng));
      }
      for (const auto &[label, event] : events) {
        double fid = 1.0;
        for (const auto &logical : logicals) {
          StateVector s = prepare_block(code, logical, 1);
          apply_noise(s, event);
          correct(code, s, rng);
          fid = std::min(fid, logical_fidelity(code, s, logical));
        }
        const double dep = syndrome_dependence(code, event, logicals, 1);
        ++cases;
        fid_fail += fid > 1.0 - 1e-9 ? 0 : 1;
        dep_fail += dep < 1e-9 ? 0 : 1;
        worst_fid = std::min(worst_fid, fid);
        csv << code.name << "," << q << "," << label << "," << fmt(fid) << ","
            << fmt(dep) << "\n";
      }
    }
    ok = ok && fid_fail == 0 && dep_fail == 0;
    detail += code.name + ": " + std::to_string(cases) + " cases, " +
              std::to_string(fid_fail) + " below 1 - 1e-9 (min " + fmt(worst_fid) + "), " +
              std::to_string(dep_fail) + " state-dependent syndromes; ";
  }
  art["C10_qec_sweep.csv"] = csv.str();
  return {ok, detail};
}

// C11 ------------------------------------------------------------------------
Outcome qec_scaling(RngStream rng, Artifacts &art) {
  bool ok = true;
  std::string detail;
  for (const std::string code : {"shor9", "steane7"}) {
    const std::string csv = run_cli({"qec", "--code", code, "--epsilon-sweep",
                                     "0.01,0.02,0.04", "--trials", "2000", "--format",
                                     "csv", "--seed", std::to_string(rng.next_u64())});
    art["C11_qec_scaling_" + code + ".csv"] = csv;
    std::vector<double> eps;
    std::vector<double> unc;
    std::vector<double> cor;
    for (const auto &row : parse_csv(csv)) {
      eps.push_back(row.at(0));
      unc.push_back(row.at(1));
      cor.push_back(row.at(2));
    }
    const double su = fit_slope(eps, unc);
    const double sc = fit_slope(eps, cor);
    ok = ok && su >= 0.8 && su <= 1.2 && sc >= 1.8 && sc <= 2.2;
    detail += code + ": uncorrected slope " + fmt(su) + ", corrected slope " + fmt(sc) + "; ";
  }
  return {ok, detail + "eps = 0.01, 0.02, 0.04, 2000 trials (need [0.8, 1.2] and [1.8, 2.2])"};
}

// C12 ------------------------------------------------------------------------
Outcome hamming_checks(RngStream, Artifacts &art) {
  std::vector<unsigned> ref_words;
  for (unsigned w = 0; w < 128; ++w) {
    if (ref::hamming_syndrome(w) == 0) {
      ref_words.push_back(w);
    }
  }
  const auto words = hamming_codewords();
  int failures = words == ref_words && words.size() == 16 ? 0 : 1;
  for (unsigned w : words) {
    failures += hamming_syndrome(w) == 0 ? 0 : 1;
  }
  for (unsigned i = 1; i <= 7; ++i) {
    const unsigned e = 1U << (i - 1);
    failures += hamming_syndrome(e) == i && ref::hamming_syndrome(e) == i ? 0 : 1;
    for (unsigned w : words) {
      failures += hamming_syndrome(w ^ e) == i ? 0 : 1;
    }
  }
  art["C12_hamming.csv"] = run_cli({"qec", "--hamming", "--format", "csv", "--seed", "1"});
  return {failures == 0, std::to_string(words.size()) +
                             " codewords with zero syndrome; single-bit errors at positions "
                             "1..7 on every codeword give the binary position: " +
                             std::to_string(failures) + " failures"};
}

struct Criterion {
  std::string id;
  std::string title;
  std::function<Outcome(RngStream, Artifacts &)> run;
};

std::vector<Criterion> criteria() {
  return {
      {"C01", "kernel equivalence", kernel_equivalence},
      {"C02", "Deutsch/Deutsch-Jozsa determinism", deutsch_jozsa_determinism},
      {"C03", "Bernstein-Vazirani exhaustive", bernstein_vazirani_exhaustive},
      {"C04", "Simon period recovery", simon_recovery},
      {"C05", "Grover exactness", grover_exactness},
      {"C06", "QFT vs DFT, gate count, cutoff", qft_checks},
      {"C07", "Shor end-to-end", shor_end_to_end},
      {"C08", "Trotter scaling", trotter_scaling},
      {"C09", "adiabatic bound", adiabatic_bound_check},
      {"C10", "QEC correctability sweep", qec_correctability},
      {"C11", "QEC scaling", qec_scaling},
      {"C12", "Hamming syndromes", hamming_checks},
  };
}

Outcome run_one(const Criterion &c, std::uint64_t seed, Artifacts &art) {
  const RngStream master(seed);
  const auto index = static_cast<std::uint64_t>(std::stoi(c.id.substr(1)));
  try {
    return c.run(master.split(index), art);
  } catch (const std::exception &e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

// C13 ------------------------------------------------------------------------
Outcome reproducibility(std::uint64_t seed, Artifacts &art) {
  Artifacts first;
  Artifacts second;
  for (const auto &c : criteria()) {
    run_one(c, seed, first);
    run_one(c, seed, second);
  }
  const std::vector<std::vector<std::string>> commands{
      {"deutsch-jozsa", "--n", "4", "--trials", "5"},
      {"bernstein-vazirani", "--n", "5", "--trials", "3"},
      {"simon", "--n", "5", "--trials", "3"},
      {"grover", "--n", "5", "--random-marked", "2", "--iterations", "random"},
      {"shor", "--n", "15"},
      {"qft", "--q", "4", "--check"},
      {"qec", "--code", "steane7", "--error", "random-unitary", "--qubit", "3"},
  };
  for (const auto &cmd : commands) {
    std::vector<std::string> args = cmd;
    args.push_back("--seed");
    args.push_back(std::to_string(seed));
    first["cli_" + cmd[0] + ".json"] = run_cli(args);
    second["cli_" + cmd[0] + ".json"] = run_cli(args);
  }
  int differing = 0;
  for (const auto &[name, text] : first) {
    const auto it = second.find(name);
    differing += (it == second.end() || it->second != text) ? 1 : 0;
  }
  differing += first.size() == second.size() ? 0 : 1;
  std::ostringstream csv;
  csv << "artifact,bytes\n";
  for (const auto &[name, text] : first) {
    csv << name << "," << text.size() << "\n";
  }
  art["C13_artifacts.csv"] = csv.str();
  return {differing == 0 && !first.empty(),
          std::to_string(first.size()) + " CSV/JSON artifacts from two full runs with seed " +
              std::to_string(seed) + ": " + std::to_string(differing) + " differ"};
}

} // namespace

int main(int argc, char **argv) {
  std::string which = "all";
  std::uint64_t seed = 20261016;
  std::string artifact_dir;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      seed = std::stoull(argv[++i]);
    } else if (arg == "--artifacts" && i + 1 < argc) {
      artifact_dir = argv[++i];
    } else {
      which = arg;
    }
  }

  Artifacts art;
  int failures = 0;
  int ran = 0;
  auto report = [&](const std::string &id, const std::string &title, const Outcome &o) {
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << title << ": " << o.detail
              << std::endl;
    failures += o.pass ? 0 : 1;
    ++ran;
  };
  for (const auto &c : criteria()) {
    if (which == "all" || which == c.id) {
      report(c.id, c.title, run_one(c, seed, art));
    }
  }
  if (which == "all" || which == "C13") {
    Outcome o;
    try {
      o = reproducibility(seed, art);
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report("C13", "reproducibility", o);
  }
  if (ran == 0) {
    std::cerr << "unknown criterion '" << which << "'\n";
    return 2;
  }
  if (!artifact_dir.empty()) {
    std::filesystem::create_directories(artifact_dir);
    for (const auto &[name, text] : art) {
      std::ofstream(std::filesystem::path(artifact_dir) / name, std::ios::binary) << text;
    }
  }
  std::cout << (ran - failures) << "/" << ran << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
