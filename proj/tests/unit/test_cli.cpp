// Copyright 2026 The EHM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

std::string Path(const std::string& name) {
  return std::string(EHM_TEST_TMPDIR) + "/" + name;
}

std::string WriteConfig(const std::string& name, const std::string& json) {
  const std::string path = Path(name);
  std::ofstream(path) << json;
  return path;
}

Result Run(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + " " + std::string(EHM_CLI_PATH) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

// Data rows of a CSV as maps from column name to cell, skipping '#' lines.
std::vector<std::map<std::string, std::string>> Rows(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    if (header.empty()) {
      header = cells;
      continue;
    }
    REQUIRE(cells.size() == header.size());
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < cells.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(row);
  }
  return rows;
}

double Num(const std::map<std::string, std::string>& row,
           const std::string& key) {
  return std::stod(row.at(key));
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("exit codes") {
  const auto ok = WriteConfig("ok.json", R"({"seed": 1, "power_grid": [2],
      "capacity_multiples": [2], "horizon": 5000})");
  CHECK(Run("txprob --config " + ok).status == 0);
  CHECK(Run("txprob").status == 1);
  CHECK(Run("txprob --config " + Path("missing.json")).status == 1);
  CHECK(Run("frobnicate --config " + ok).status == 1);
  const auto noseed = WriteConfig("noseed.json", R"({"power_grid": [2]})");
  CHECK(Run("txprob --config " + noseed).status == 1);
  CHECK(Run("txprob --config " + noseed + " --seed 3").status == 0);
  const auto typo = WriteConfig("typo.json", R"({"seed": 1, "horizn": 10})");
  CHECK(Run("txprob --config " + typo).status == 1);
  const auto bad = WriteConfig("bad.json", "{ not json");
  CHECK(Run("tail-bound --config " + bad).status == 1);
  const auto unsorted =
      WriteConfig("unsorted.json", R"({"seed": 1, "x_grid": [3, 2]})");
  CHECK(Run("tail-bound --config " + unsorted).status == 1);
  CHECK(Run("txprob --config " + ok, "EHM_THREADS=lots").status == 1);
  CHECK(Run("txprob --config " + ok, "EHM_THREADS=3").status == 0);
}

TEST_CASE("missing calibration table") {
  const auto cfg = WriteConfig(
      "nocal.json",
      R"({"seed": 1, "calibration_table": "/nonexistent/table.csv"})");
  CHECK(Run("sweep-energy --config " + cfg).status == 2);
}

TEST_CASE("calibration with no resolvable target") {
  const auto cfg = WriteConfig("unres.json", R"({"seed": 1, "trials": 2000,
      "mu_grid": [0.001, 0.002], "epsilon_grid": [0.9]})");
  CHECK(Run("calibrate-mu --config " + cfg).status == 2);
}

TEST_CASE("calibration table feeds the sweep") {
  const auto cal = WriteConfig("cal.json", R"({"seed": 5, "trials": 20000,
      "mu_grid": [0.001, 0.002, 0.004, 0.008, 0.016, 0.032, 0.064]})");
  const std::string table = Path("cal_table.csv");
  REQUIRE(Run("calibrate-mu --config " + cal + " --out " + table).status == 0);
  const auto sweep = WriteConfig(
      "sweep_cal.json", R"({"seed": 1, "epsilon": 0.015, "lambda_e_grid": [1000],
      "calibration_table": ")" + table + R"("})");
  const auto r = Run("sweep-energy --config " + sweep);
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"mu_epsilon\":") != std::string::npos);
  CHECK(Rows(r.out).size() == 3);
}

TEST_CASE("metadata and seed override") {
  const auto cfg = WriteConfig("meta.json", R"({"seed": 1, "x_grid": [10],
      "horizon": 20000})");
  const auto a = Run("tail-bound --config " + cfg);
  const auto b = Run("tail-bound --config " + cfg + " --seed 2");
  REQUIRE(a.status == 0);
  REQUIRE(b.status == 0);
  CHECK(a.out.rfind("# ehm version=", 0) == 0);
  CHECK(a.out.find("\"seed\":1") != std::string::npos);
  CHECK(b.out.find("\"seed\":2") != std::string::npos);
  CHECK(a.out.find("thread") == std::string::npos);
  CHECK(a.out != b.out);
}

TEST_CASE("byte-identical output across thread counts") {
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"calibrate-mu",
       R"({"seed": 9, "trials": 20000, "mu_grid": [0.001, 0.01, 0.05]})"},
      {"sweep-energy",
       R"({"seed": 9, "mode": "finite", "lambda_e_grid": [1, 10],
           "horizon": 5000, "power_points_per_decade": 10})"},
      {"txprob",
       R"({"seed": 9, "sweep": "dof", "power_grid": [1, 2, 4],
           "horizon": 20000})"},
      {"tail-bound",
       R"({"seed": 9, "x_grid": [5, 10, 20], "horizon": 20000,
           "replications": 8})"},
  };
  for (const auto& [command, json] : runs) {
    const auto cfg = WriteConfig("det_" + command + ".json", json);
    const auto one = Run(command + " --config " + cfg + " --threads 1");
    REQUIRE(one.status == 0);
    for (const char* threads : {"4", "8"}) {
      const auto many =
          Run(command + " --config " + cfg + " --threads " + threads);
      CHECK_MESSAGE(many.out == one.out, command);
    }
    CHECK(Run(command + " --config " + cfg + " --threads 1").out == one.out);
  }
}

TEST_CASE("tail-bound dominance") {
  const auto cfg = WriteConfig("tail.json", R"({"seed": 3, "horizon": 1000000})");
  const auto r = Run("tail-bound --config " + cfg);
  REQUIRE(r.status == 0);
  const auto rows = Rows(r.out);
  REQUIRE(rows.size() == 40);
  double previous = 1.0;
  for (const auto& row : rows) {
    CHECK(Num(row, "tail_hat") <= Num(row, "tail_bound"));
    CHECK(Num(row, "overshoot_hat") <= Num(row, "overshoot_bound"));
    CHECK(Num(row, "tail_hat") <= previous);
    previous = Num(row, "tail_hat");
    if (Num(row, "x") == 10.0) {
      CHECK(Num(row, "tail_bound") == doctest::Approx(0.9016).epsilon(1e-4));
    }
  }
}

TEST_CASE("txprob capacity sweep") {
  const auto cfg = WriteConfig("tx.json", R"({"seed": 4,
      "power_grid": [1, 2.5, 4, 6, 8], "horizon": 1000000})");
  const auto r = Run("txprob --config " + cfg);
  REQUIRE(r.status == 0);
  const auto rows = Rows(r.out);
  REQUIRE(rows.size() == 20);
  for (const auto& row : rows) {
    const double rho = Num(row, "rho_hat");
    const double se = Num(row, "rho_stderr");
    CHECK(Num(row, "bound_lower") <= rho + 3.0 * se + 1e-12);
    CHECK(rho <= Num(row, "bound_upper") + 3.0 * se + 1e-12);
    if (Num(row, "B_over_P") == 10.0 && Num(row, "P") != 2.5) {
      CHECK(std::abs(rho - Num(row, "rho_infinite")) <= 3.0 * se + 1e-12);
    }
  }
}

TEST_CASE("txprob dof sweep: more degrees of freedom, higher rho") {
  const auto cfg = WriteConfig("dof.json", R"({"seed": 6, "sweep": "dof",
      "power_grid": [1, 2, 4, 8], "horizon": 1000000})");
  const auto r = Run("txprob --config " + cfg);
  REQUIRE(r.status == 0);
  std::map<double, std::map<int, std::pair<double, double>>> by_power;
  for (const auto& row : Rows(r.out)) {
    by_power[Num(row, "P")][std::stoi(row.at("d"))] = {Num(row, "rho_hat"),
                                                       Num(row, "rho_stderr")};
  }
  for (const auto& [p, by_dof] : by_power) {
    auto prev = by_dof.begin();
    for (auto it = std::next(prev); it != by_dof.end(); prev = it++) {
      const double joint = std::hypot(prev->second.second, it->second.second);
      // The ordering fades once overflow becomes rare (large P).
      if (p <= 4.0) {
        CHECK_MESSAGE(it->second.first > prev->second.first + 3.0 * joint,
                      "P=" << p << " d=" << it->first);
      } else {
        CHECK_MESSAGE(it->second.first > prev->second.first - 3.0 * joint,
                      "P=" << p << " d=" << it->first);
      }
    }
  }
}

TEST_CASE("sweep-energy analytic limits and finite-battery loss") {
  const auto analytic = WriteConfig("sweep_a.json", R"({"seed": 1,
      "lambda_e_grid": [0.5, 2, 8, 32, 128, 512]})");
  const auto finite = WriteConfig("sweep_f.json", R"({"seed": 1,
      "lambda_e_grid": [0.5, 2, 8, 32, 128, 512], "mode": "finite",
      "horizon": 20000, "power_points_per_decade": 20})");
  const auto a = Run("sweep-energy --config " + analytic);
  const auto f = Run("sweep-energy --config " + finite);
  REQUIRE(a.status == 0);
  REQUIRE(f.status == 0);
  const auto ra = Rows(a.out);
  const auto rf = Rows(f.out);
  REQUIRE(ra.size() == rf.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    CHECK(Num(rf[i], "R_star") <= Num(ra[i], "R_star") * (1 + 1e-12));
  }
  const auto high = WriteConfig("sweep_h.json", R"({"seed": 1,
      "lambda_e_grid": [1000]})");
  const auto rows = Rows(Run("sweep-energy --config " + high).out);
  REQUIRE(rows.size() == 3);
  CHECK(Num(rows[0], "R_star") == doctest::Approx(0.04).epsilon(0.01));
  CHECK(Num(rows[1], "R_star") == doctest::Approx(0.048).epsilon(0.01));
  CHECK(Num(rows[2], "R_star") == doctest::Approx(0.048).epsilon(0.01));
}

}  // TEST_SUITE
