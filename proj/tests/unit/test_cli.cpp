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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qsim/cli.hpp"

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = qsim::cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json json_of(const Run &r) { return nlohmann::json::parse(r.out); }

} // namespace

TEST_CASE("grover example") {
  const Run r = run({"grover", "--n", "4", "--marked", "7", "--iterations", "auto", "--seed", "1"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["found"] == 7);
  CHECK(j["success"] == true);
  CHECK(j["seed"] == 1);
}

TEST_CASE("shor example") {
  const Run r = run({"shor", "--n", "15", "--seed", "1"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  const auto f = j["factor"].get<std::uint64_t>();
  CHECK((f == 3 || f == 5));
  CHECK(j.contains("a"));
  CHECK(j.contains("period"));
  CHECK(j.contains("trials"));
  CHECK(j.contains("y_samples"));
}

TEST_CASE("qft check example") {
  const Run r = run({"qft", "--q", "3", "--check", "--seed", "2"});
  REQUIRE(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["gate_count"] == 6);
  CHECK(j["max_deviation"].get<double>() < 1e-9);
}

TEST_CASE("csv outputs carry the seed and fixed columns") {
  const Run r = run({"grover", "--n", "3", "--marked", "1", "--format", "csv", "--seed", "9"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("# seed=9\nk,analytic_prob,empirical_freq\n", 0) == 0);
  const Run t = run({"trotter", "--model", "xz", "--n", "1", "--k-sweep", "4,8", "--format",
                     "csv", "--seed", "1"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("k,error\n") != std::string::npos);
  const Run q = run({"qec", "--code", "steane7", "--epsilon-sweep", "0.01,0.02", "--trials", "20",
                     "--format", "csv", "--seed", "1"});
  REQUIRE(q.code == 0);
  CHECK(q.out.find("epsilon,uncorrected,corrected\n") != std::string::npos);
  const Run a = run({"adiabatic", "--n", "2", "--marked", "1", "--T-sweep", "0,2", "--format",
                     "csv", "--seed", "1"});
  REQUIRE(a.code == 0);
  CHECK(a.out.find("T,p,bound_T\n") != std::string::npos);
}

TEST_CASE("query algorithm subcommands") {
  const Run dj = run({"deutsch-jozsa", "--n", "3", "--function", "balanced", "--trials", "4",
                      "--format", "csv", "--seed", "3"});
  REQUIRE(dj.code == 0);
  CHECK(dj.out.find("outcome,count\n") != std::string::npos);
  const Run bv = run({"bernstein-vazirani", "--n", "4", "--secret", "5", "--seed", "3"});
  REQUIRE(bv.code == 0);
  CHECK(bv.out.find("5") != std::string::npos);
  const Run si = run({"simon", "--n", "4", "--period", "6", "--seed", "3"});
  REQUIRE(si.code == 0);
}

TEST_CASE("oracle files") {
  const auto path = std::filesystem::temp_directory_path() / "qsim_cli_test_table.txt";
  {
    std::ofstream f(path);
    f << "# qsim-format v1\n2 1\n0\n1\n1\n0\n";
  }
  const Run r = run({"deutsch-jozsa", "--oracle-file", path.string(), "--seed", "1"});
  std::filesystem::remove(path);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("balanced") != std::string::npos);
}

TEST_CASE("reproducible with a seed and from QSIM_SEED") {
  const std::vector<std::string> args{"simon", "--n", "5", "--trials", "3", "--seed", "77"};
  CHECK(run(args).out == run(args).out);
  setenv("QSIM_SEED", "77", 1);
  const Run env = run({"simon", "--n", "5", "--trials", "3"});
  unsetenv("QSIM_SEED");
  CHECK(env.out == run(args).out);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "qsim_cli_test_out.json";
  const Run r = run({"qft", "--q", "2", "--check", "--seed", "1", "--output", path.string()});
  REQUIRE(r.code == 0);
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::filesystem::remove(path);
  CHECK(nlohmann::json::parse(buf.str())["gate_count"] == 3);
}

TEST_CASE("exit codes") {
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code != 0);
  CHECK(run({"grover", "--n", "x"}).code == 2);
  CHECK(run({"shor", "--n", "13", "--seed", "1"}).code == 1);
  CHECK(run({"shor", "--help"}).code == 0);
  CHECK(run({"qec", "--code", "steane7", "--error", "x", "--format", "csv", "--seed", "1"}).code ==
        2);
}

TEST_CASE("manifest") {
  const Run text = run({"manifest"});
  REQUIRE(text.code == 0);
  CHECK(text.out.find("trotter\t") != std::string::npos);
  CHECK(text.out.find("qec\t") != std::string::npos);
  const auto j = json_of(run({"manifest", "--json"}));
  CHECK(j.is_object());
  CHECK(j.contains("trotter"));
  CHECK(j.contains("qec"));
  CHECK(qsim::cli::manifest_entries().size() == 10);
}
