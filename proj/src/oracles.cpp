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
#include "qsim/oracles.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "qsim/error.hpp"

namespace qsim {

namespace {

constexpr int kMaxTableBits = 24;

std::uint64_t low_mask(int bits) {
  return bits >= 64 ? ~0ULL : ((1ULL << bits) - 1ULL);
}

std::vector<std::uint64_t> random_permutation(std::size_t size,
                                              RngStream &rng) {
  std::vector<std::uint64_t> perm(size);
  std::iota(perm.begin(), perm.end(), 0ULL);
  // Fisher-Yates with the stream's own bounded draws.
  for (std::size_t i = size; i > 1; --i) {
    const std::size_t j = rng.uniform_int(0, i - 1);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

} // namespace

ClassicalFunction::ClassicalFunction(int n_in, int n_out,
                                     std::vector<std::uint64_t> table)
    : n_in_(n_in), n_out_(n_out), table_(std::move(table)) {
  if (n_in < 1 || n_in > kMaxTableBits || n_out < 1 || n_out > 32) {
    throw Error("classical function: unsupported register widths");
  }
  if (table_.size() != (std::size_t{1} << n_in)) {
    throw Error("classical function: table must have 2^n_in entries");
  }
  const std::uint64_t limit = 1ULL << n_out;
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (table_[x] >= limit) {
      throw Error("classical function: f(" + std::to_string(x) +
                  ") does not fit in " + std::to_string(n_out) + " bits");
    }
  }
}

bool ClassicalFunction::is_bijection() const {
  if (n_in_ != n_out_) {
    return false;
  }
  std::vector<bool> seen(table_.size(), false);
  for (auto v : table_) {
    if (seen[v]) {
      return false;
    }
    seen[v] = true;
  }
  return true;
}

int OracleUnitary::width() const {
  return kind_ == OracleKind::Standard ? n_in() + n_out() : n_in();
}

std::uint64_t OracleUnitary::map_basis(std::uint64_t index) const {
  const std::uint64_t in_mask = low_mask(n_in());
  const std::uint64_t x = index & in_mask;
  if (kind_ == OracleKind::Standard) {
    return index ^ (f_(x) << n_in());
  }
  return (index & ~in_mask) | f_(x);
}

void OracleUnitary::apply(StateVector &state, int input_first,
                          int output_first) const {
  if (output_first < 0) {
    output_first = input_first + n_in();
  }
  const int n = state.n_qubits();
  if (input_first < 0 || input_first + n_in() > n) {
    throw Error("oracle input register does not fit the state");
  }
  const std::uint64_t in_mask = low_mask(n_in()) << input_first;
  auto amps = state.mutable_amplitudes();
  if (kind_ == OracleKind::Standard) {
    if (output_first < 0 || output_first + n_out() > n) {
      throw Error("oracle output register does not fit the state");
    }
    const std::uint64_t out_mask = low_mask(n_out()) << output_first;
    if ((in_mask & out_mask) != 0) {
      throw Error("oracle registers overlap");
    }
    // XOR into the output register is an involution: swap each pair once.
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const std::uint64_t x = (i & in_mask) >> input_first;
      const std::uint64_t j = i ^ (f_(x) << output_first);
      if (j > i) {
        std::swap(amps[i], amps[j]);
      }
    }
    return;
  }
  std::vector<Complex> out(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::uint64_t x = (i & in_mask) >> input_first;
    const std::uint64_t j = (i & ~in_mask) | (f_(x) << input_first);
    out[j] = amps[i];
  }
  std::copy(out.begin(), out.end(), amps.begin());
}

OracleUnitary standard_oracle(ClassicalFunction f) {
  return OracleUnitary(OracleKind::Standard, std::move(f));
}

OracleUnitary minimal_oracle(ClassicalFunction f) {
  if (!f.is_bijection()) {
    throw Error("minimal oracle requires a bijective function");
  }
  return OracleUnitary(OracleKind::Minimal, std::move(f));
}

ClassicalFunction make_constant(int n, std::uint64_t value) {
  if (value > 1) {
    throw Error("constant promise function must output 0 or 1");
  }
  return ClassicalFunction(n, 1, std::vector<std::uint64_t>(1ULL << n, value));
}

ClassicalFunction make_balanced_parity(int n) {
  std::vector<std::uint64_t> table(1ULL << n);
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    table[x] = static_cast<std::uint64_t>(__builtin_popcountll(x) & 1);
  }
  return ClassicalFunction(n, 1, std::move(table));
}

ClassicalFunction make_balanced(int n, std::span<const std::uint64_t> ones) {
  if (n < 1 || n > kMaxTableBits) {
    throw Error("balanced function: unsupported width");
  }
  const std::size_t size = std::size_t{1} << n;
  if (ones.size() != size / 2) {
    throw Error("balanced function needs exactly " + std::to_string(size / 2) +
                " inputs mapping to 1, got " + std::to_string(ones.size()));
  }
  std::vector<std::uint64_t> table(size, 0);
  for (auto x : ones) {
    if (x >= size) {
      throw Error("balanced function: input out of range");
    }
    if (table[x] == 1) {
      throw Error("balanced function: repeated input");
    }
    table[x] = 1;
  }
  return ClassicalFunction(n, 1, std::move(table));
}

ClassicalFunction make_balanced_random(int n, RngStream &rng) {
  const auto perm = random_permutation(std::size_t{1} << n, rng);
  const std::vector<std::uint64_t> ones(perm.begin(),
                                        perm.begin() + (perm.size() / 2));
  return make_balanced(n, ones);
}

bool is_constant(const ClassicalFunction &f) {
  const auto t = f.table();
  return std::all_of(t.begin(), t.end(),
                     [&](std::uint64_t v) { return v == t.front(); });
}

bool is_balanced(const ClassicalFunction &f) {
  if (f.n_out() != 1) {
    return false;
  }
  const auto t = f.table();
  const auto ones = static_cast<std::size_t>(std::count(t.begin(), t.end(), 1ULL));
  return 2 * ones == t.size();
}

ClassicalFunction make_bv_function(int n, std::uint64_t a) {
  if (n < 1 || n > kMaxTableBits || a > low_mask(n)) {
    throw Error("Bernstein-Vazirani secret does not fit in n bits");
  }
  std::vector<std::uint64_t> table(1ULL << n);
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    table[x] = static_cast<std::uint64_t>(dot_mod2(a, x));
  }
  return ClassicalFunction(n, 1, std::move(table));
}

ClassicalFunction make_simon_function(int n, std::uint64_t p, RngStream &rng) {
  if (n < 1 || n > kMaxTableBits) {
    throw Error("Simon function: unsupported width");
  }
  if (p == 0) {
    throw Error("Simon period must be nonzero (use make_injective_function "
                "for the 1-to-1 case)");
  }
  if (p > low_mask(n)) {
    throw Error("Simon period does not fit in n bits");
  }
  const std::size_t size = std::size_t{1} << n;
  const auto labels = random_permutation(size / 2, rng);
  std::vector<std::uint64_t> table(size, 0);
  std::vector<bool> assigned(size, false);
  std::size_t next = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    if (assigned[x]) {
      continue;
    }
    table[x] = labels[next];
    table[x ^ p] = labels[next];
    assigned[x] = assigned[x ^ p] = true;
    ++next;
  }
  return ClassicalFunction(n, n, std::move(table));
}

ClassicalFunction make_injective_function(int n, RngStream &rng) {
  return ClassicalFunction(n, n, random_permutation(std::size_t{1} << n, rng));
}

bool validate_simon(const ClassicalFunction &f, std::uint64_t p) {
  const std::size_t size = f.table().size();
  if (p == 0 || p >= size) {
    return false;
  }
  for (std::uint64_t x = 0; x < size; ++x) {
    if (f(x) != f(x ^ p)) {
      return false;
    }
  }
  // With f(x) = f(x^p) everywhere, 2^(n-1) distinct values force every value
  // to have exactly the two preimages {x, x^p}.
  std::vector<std::uint64_t> values(f.table().begin(), f.table().end());
  std::sort(values.begin(), values.end());
  const auto distinct = static_cast<std::size_t>(
      std::unique(values.begin(), values.end()) - values.begin());
  return distinct == size / 2;
}

ClassicalFunction read_truth_table(std::istream &in) {
  std::string line;
  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') {
        continue;
      }
      line = line.substr(first);
      while (!line.empty() &&
             (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
        line.pop_back();
      }
      return true;
    }
    return false;
  };
  if (!next_content_line()) {
    throw Error("truth table: missing header line");
  }
  std::istringstream header(line);
  int n_in = 0;
  int n_out = 0;
  if (!(header >> n_in >> n_out)) {
    throw Error("truth table: header must be '<n_in> <n_out>'");
  }
  if (n_in < 1 || n_in > kMaxTableBits || n_out < 1 || n_out > 32) {
    throw Error("truth table: unsupported register widths");
  }
  const std::size_t size = std::size_t{1} << n_in;
  std::vector<std::uint64_t> table;
  table.reserve(size);
  while (table.size() < size && next_content_line()) {
    if (line.size() != static_cast<std::size_t>(n_out) ||
        line.find_first_not_of("01") != std::string::npos) {
      throw Error("truth table: line " + std::to_string(table.size() + 1) +
                  " is not a " + std::to_string(n_out) + "-digit binary word");
    }
    table.push_back(std::stoull(line, nullptr, 2));
  }
  if (table.size() != size) {
    throw Error("truth table: expected " + std::to_string(size) +
                " entries, found " + std::to_string(table.size()));
  }
  if (next_content_line()) {
    throw Error("truth table: trailing data after " + std::to_string(size) +
                " entries");
  }
  return ClassicalFunction(n_in, n_out, std::move(table));
}

ClassicalFunction load_truth_table(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open truth table file '" + path + "'");
  }
  return read_truth_table(in);
}

void write_truth_table(std::ostream &out, const ClassicalFunction &f) {
  out << "# qsim-format v1\n" << f.n_in() << ' ' << f.n_out() << '\n';
  for (auto v : f.table()) {
    for (int b = f.n_out() - 1; b >= 0; --b) {
      out << ((v >> b) & 1ULL);
    }
    out << '\n';
  }
}

} // namespace qsim
