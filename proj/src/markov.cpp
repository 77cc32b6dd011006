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

#include "ehm/markov.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "ehm/arrivals.hpp"
#include "ehm/error.hpp"

namespace ehm {
namespace {

double PmfAt(std::span<const double> pmf, long k) {
  if (k < 0 || k >= static_cast<long>(pmf.size())) return 0.0;
  return pmf[static_cast<std::size_t>(k)];
}

double PmfTailFrom(std::span<const double> pmf, long k) {
  double sum = 0.0;
  for (long j = std::max(k, 0L); j < static_cast<long>(pmf.size()); ++j) {
    sum += pmf[static_cast<std::size_t>(j)];
  }
  return sum;
}

// reach[i * n + j] != 0 iff j is reachable from i in zero or more steps.
std::vector<char> Reachability(const MarkovBattery& chain) {
  const std::size_t n = chain.states();
  std::vector<char> reach(n * n, 0);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    char* row = &reach[s * n];
    row[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (!row[v] && chain.at(u, v) > 0.0) {
          row[v] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  return reach;
}

}  // namespace

MarkovBattery BuildTransition(std::span<const double> pmf, unsigned power,
                              unsigned capacity) {
  Require(power >= 1 && power <= capacity, ErrorCode::kInvalidArgument,
          "Markov battery needs 1 <= P <= B");
  Require(!pmf.empty(), ErrorCode::kInvalidArgument, "pmf is empty");
  double total = 0.0;
  for (double p : pmf) {
    Require(std::isfinite(p) && p >= 0.0, ErrorCode::kInvalidArgument,
            "pmf entries must be finite and >= 0");
    total += p;
  }
  Require(std::abs(total - 1.0) <= kPmfTolerance, ErrorCode::kInvalidArgument,
          "pmf does not sum to 1 within 1e-12");
  const double deficit = std::max(0.0, 1.0 - total);

  MarkovBattery chain;
  chain.power = power;
  chain.capacity = capacity;
  chain.pmf.assign(pmf.begin(), pmf.end());
  const std::size_t n = chain.states();
  chain.transition.assign(n * n, 0.0);
  const long p = power;
  const long b = capacity;
  for (long m = 0; m <= b; ++m) {
    const long spent = m >= p ? p : 0;
    double* row = &chain.transition[static_cast<std::size_t>(m) * n];
    for (long to = 0; to < b; ++to) {
      row[to] = PmfAt(pmf, to - m + spent);
    }
    row[b] = PmfTailFrom(pmf, b - m + spent) + deficit;
  }
  return chain;
}

std::vector<double> Stationary(const MarkovBattery& chain) {
  const std::size_t n = chain.states();
  Require(chain.transition.size() == n * n, ErrorCode::kInvalidArgument,
          "transition matrix not built");
  const std::vector<char> reach = Reachability(chain);
  const auto reaches = [&](std::size_t i, std::size_t j) {
    return reach[i * n + j] != 0;
  };

  // A reachable state is recurrent iff everything it reaches reaches it back.
  std::vector<std::size_t> recurrent;
  for (std::size_t i = 0; i < n; ++i) {
    if (!reaches(0, i)) continue;
    bool closed = true;
    for (std::size_t j = 0; j < n && closed; ++j) {
      if (reaches(i, j) && !reaches(j, i)) closed = false;
    }
    if (closed) recurrent.push_back(i);
  }
  for (std::size_t k = 1; k < recurrent.size(); ++k) {
    if (!reaches(recurrent.front(), recurrent[k])) {
      Fail(ErrorCode::kAmbiguous,
           "several closed classes reachable from the empty battery");
    }
  }

  // (Q^T - I) pi = 0 on the closed class, last equation replaced by sum = 1.
  const auto k = static_cast<Eigen::Index>(recurrent.size());
  Eigen::MatrixXd a(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      a(r, c) = chain.at(recurrent[c], recurrent[r]) - (r == c ? 1.0 : 0.0);
    }
  }
  a.row(k - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k);
  rhs(k - 1) = 1.0;
  const Eigen::VectorXd sol = a.partialPivLu().solve(rhs);

  std::vector<double> pi(n, 0.0);
  double sum = 0.0;
  for (Eigen::Index r = 0; r < k; ++r) {
    const double v = std::max(0.0, sol(r));
    pi[recurrent[r]] = v;
    sum += v;
  }
  for (double& v : pi) v /= sum;
  return pi;
}

void SolveStationary(MarkovBattery& chain) { chain.stationary = Stationary(chain); }

double TxProbMarkov(const MarkovBattery& chain) {
  Require(chain.stationary.size() == chain.states(),
          ErrorCode::kInvalidArgument, "stationary vector not solved");
  return std::accumulate(chain.stationary.begin() + chain.power,
                         chain.stationary.end(), 0.0);
}

std::optional<double> BoundedArrivalRho(double z_max, double rate,
                                        double power, double capacity) {
  Require(z_max >= 0.0, ErrorCode::kInvalidArgument, "z_max must be >= 0");
  Require(power > 0.0, ErrorCode::kInvalidArgument, "power must be > 0");
  if (!(z_max <= power && capacity > 2.0 * power)) return std::nullopt;
  Require(rate <= power, ErrorCode::kInvalidArgument,
          "bounded arrivals with z_max <= P imply rate <= P");
  return rate / power;
}

}  // namespace ehm
