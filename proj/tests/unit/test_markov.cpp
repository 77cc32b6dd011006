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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "ehm/arrivals.hpp"
#include "ehm/battery.hpp"
#include "ehm/error.hpp"
#include "ehm/markov.hpp"

using namespace ehm;

namespace {

// Transition matrix by direct enumeration of the battery recursion.
std::vector<double> EnumeratedTransition(const std::vector<double>& pmf,
                                         unsigned p, unsigned b) {
  const std::size_t n = b + 1;
  std::vector<double> t(n * n, 0.0);
  for (unsigned m = 0; m <= b; ++m) {
    for (std::size_t z = 0; z < pmf.size(); ++z) {
      const long next = std::min<long>(
          static_cast<long>(m) + static_cast<long>(z) - (m >= p ? p : 0), b);
      t[m * n + next] += pmf[z];
    }
  }
  return t;
}

std::vector<double> BinaryPmf(double rate) { return {1.0 - rate, rate}; }

double Mean(const std::vector<double>& pmf) {
  double m = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) m += k * pmf[k];
  return m;
}

}  // namespace

TEST_SUITE("markov") {

TEST_CASE("binary P=1 B=2 by hand") {
  const auto c = BuildTransition(BinaryPmf(0.5), 1, 2);
  const double expected[3][3] = {{0.5, 0.5, 0}, {0.5, 0.5, 0}, {0, 0.5, 0.5}};
  for (int m = 0; m < 3; ++m) {
    for (int n = 0; n < 3; ++n) CHECK(c.at(m, n) == expected[m][n]);
  }
  const auto pi = Stationary(c);
  CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pi[2] == 0.0);
}

TEST_CASE("zero arrivals") {
  const std::vector<double> pmf = {1.0};
  auto c = BuildTransition(pmf, 2, 5);
  for (unsigned m = 0; m <= 5; ++m) {
    if (m < 2) {
      CHECK(c.at(m, m) == 1.0);
    } else {
      CHECK(c.at(m, m - 2) == 1.0);
    }
  }
  SolveStationary(c);
  CHECK(c.stationary[0] == 1.0);
  CHECK(TxProbMarkov(c) == 0.0);
}

TEST_CASE("transition matches direct enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t support = 1 + trial % 7;
    std::vector<double> pmf(support);
    for (auto& p : pmf) p = u(rng);
    double total = 0.0;
    for (double p : pmf) total += p;
    for (auto& p : pmf) p /= total;
    const unsigned power = 1 + trial % 4;
    const unsigned cap = power + trial % 6;
    const auto c = BuildTransition(pmf, power, cap);
    const auto oracle = EnumeratedTransition(pmf, power, cap);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      REQUIRE(c.transition[i] == doctest::Approx(oracle[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("rows sum to one") {
  const std::vector<double> pmf = {0.25, 0.5, 0.25};
  const auto c = BuildTransition(pmf, 2, 4);
  for (unsigned m = 0; m <= 4; ++m) {
    double sum = 0.0;
    for (unsigned n = 0; n <= 4; ++n) sum += c.at(m, n);
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("invalid chains are rejected") {
  const std::vector<double> bad = {0.5, 0.4};
  CHECK_THROWS_AS(BuildTransition(bad, 1, 2), Error);
  CHECK_THROWS_AS(BuildTransition(BinaryPmf(0.5), 3, 2), Error);
  CHECK_THROWS_AS(BuildTransition(BinaryPmf(0.5), 0, 2), Error);
  const auto c = BuildTransition(BinaryPmf(0.5), 1, 2);
  CHECK_THROWS_AS(TxProbMarkov(c), Error);
}

TEST_CASE("binary closed form") {
  for (double rate : {0.1, 0.5, 0.9}) {
    for (unsigned p = 1; p <= 10; ++p) {
      for (unsigned b = p; b <= p + 5; ++b) {
        auto c = BuildTransition(BinaryPmf(rate), p, b);
        SolveStationary(c);
        const auto& pi = c.stationary;
        if (p == 1) {
          REQUIRE(std::abs(pi[0] - (1.0 - rate)) <= 1e-10);
        } else {
          REQUIRE(std::abs(pi[0] - (1.0 - rate) / p) <= 1e-10);
          for (unsigned m = 1; m < p; ++m) {
            REQUIRE(std::abs(pi[m] - 1.0 / p) <= 1e-10);
          }
        }
        REQUIRE(std::abs(pi[p] - rate / p) <= 1e-10);
        for (unsigned m = p + 1; m <= b; ++m) REQUIRE(pi[m] == 0.0);
        REQUIRE(std::abs(TxProbMarkov(c) - rate / p) <= 1e-10);
      }
    }
  }
}

TEST_CASE("stationary vector is invariant") {
  const std::vector<double> pmf = {0.3, 0.1, 0.2, 0.4};
  for (unsigned p = 1; p <= 3; ++p) {
    auto c = BuildTransition(pmf, p, 9);
    SolveStationary(c);
    const std::size_t n = c.states();
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v += c.stationary[i] * c.at(i, j);
      CHECK(std::abs(v - c.stationary[j]) <= 1e-10);
      CHECK(c.stationary[j] >= 0.0);
      total += c.stationary[j];
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
}

TEST_CASE("finite capacity never beats the infinite battery") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> pmf(1 + trial % 6);
    for (auto& p : pmf) p = u(rng);
    double total = 0.0;
    for (double p : pmf) total += p;
    for (auto& p : pmf) p /= total;
    const unsigned p = 1 + trial % 5;
    double previous = 0.0;
    for (unsigned mult : {1u, 2u, 4u, 8u, 16u}) {
      auto c = BuildTransition(pmf, p, p * mult);
      SolveStationary(c);
      const double rho = TxProbMarkov(c);
      CHECK(rho <= std::min(1.0, Mean(pmf) / p) + 1e-10);
      CHECK(rho >= previous - 1e-10);
      previous = rho;
    }
    CHECK(previous == doctest::Approx(std::min(1.0, Mean(pmf) / p)).epsilon(0.05));
  }
}

TEST_CASE("chain agrees with simulation") {
  {
    const std::vector<double> pmf = {0.25, 0.5, 0.25};
    auto c = BuildTransition(pmf, 1, 4);
    SolveStationary(c);
    const auto s = Simulate(DiscreteGeneric{pmf},
                            BatteryConfig::WithDefaultBurnIn(1.0, 4.0, 1000000, 3),
                            {});
    CHECK(std::abs(TxProbMarkov(c) - s.rho_hat) <= 3.0 * s.rho_stderr);
  }
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> pmf(1 + trial % 5);
    for (auto& p : pmf) p = u(rng);
    double total = 0.0;
    for (double p : pmf) total += p;
    for (auto& p : pmf) p /= total;
    const unsigned p = 1 + trial % 4;
    const unsigned b = std::min(12u, p + 1 + static_cast<unsigned>(trial % 9));
    auto c = BuildTransition(pmf, p, b);
    SolveStationary(c);
    const auto s = Simulate(
        DiscreteGeneric{pmf},
        BatteryConfig::WithDefaultBurnIn(p, b, 400000, 100 + trial), {});
    if (std::abs(TxProbMarkov(c) - s.rho_hat) > 3.0 * s.rho_stderr + 1e-12) {
      ++failures;
    }
  }
  // 3-sigma bands: allow a single excursion among 20 comparisons.
  CHECK(failures <= 1);
}

TEST_CASE("bounded arrivals") {
  const auto rho = BoundedArrivalRho(1.0, 0.5, 3.0, 7.0);
  REQUIRE(rho.has_value());
  CHECK(*rho == doctest::Approx(1.0 / 6.0));
  CHECK_FALSE(BoundedArrivalRho(5.0, 0.5, 3.0, 7.0).has_value());
  CHECK_FALSE(BoundedArrivalRho(1.0, 0.5, 3.0, 6.0).has_value());
  CHECK_THROWS_AS(BoundedArrivalRho(3.0, 3.5, 3.0, 7.0), Error);
}

TEST_CASE("bounded arrivals never overflow") {
  const auto s = Simulate(Binary{0.5},
                          BatteryConfig::WithDefaultBurnIn(3.0, 7.0, 1000000, 6),
                          {});
  CHECK(s.overflow_events == 0);
  CHECK(std::abs(s.rho_hat - 1.0 / 6.0) <= 0.005);
}

}  // TEST_SUITE
