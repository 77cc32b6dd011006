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

#include "ehm/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ehm/error.hpp"
#include "ehm/geometry.hpp"

namespace ehm {
namespace {

void RequirePositive(double v, const char* name) {
  Require(std::isfinite(v) && v > 0.0, ErrorCode::kInvalidArgument,
          std::string(name) + " must be finite and > 0");
}

}  // namespace

const char* RegimeName(Regime regime) {
  return regime == Regime::kSparseAllOn ? "sparse_all_on" : "dense_rationed";
}

double Throughput(double lambda0, double rho, double theta) {
  Require(rho >= 0.0 && rho <= 1.0, ErrorCode::kInvalidArgument,
          "rho must lie in [0, 1]");
  return lambda0 * rho * std::log2(1.0 + theta);
}

PolynomialRoot SolvePolynomialRoot(double theta, double alpha, double c) {
  RequirePositive(theta, "theta");
  Require(alpha > 2.0, ErrorCode::kInvalidArgument, "alpha must be > 2");
  Require(std::isfinite(c) && c >= 0.0, ErrorCode::kInvalidArgument,
          "c must be finite and >= 0");
  const auto f = [&](double x) {
    return std::pow(x, alpha - 2.0) * (x * x - theta) - theta * c;
  };
  const auto scale = [&](double x) {
    return std::pow(x, alpha) + theta * std::pow(x, alpha - 2.0) + theta * c;
  };
  const double root_theta = std::sqrt(theta);
  if (c == 0.0) return {root_theta, 0.0};

  // f < 0 on (0, sqrt(theta)] and strictly increasing beyond it.
  double lo = root_theta * (1.0 + 1e-12);
  double hi = 2.0 * root_theta;
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    Require(std::isfinite(hi), ErrorCode::kNoRoot,
            "polynomial root bracket overflowed");
  }
  if (f(lo) > 0.0) lo = root_theta;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (f(mid) > 0.0 ? hi : lo) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double df = alpha * std::pow(x, alpha - 1.0) -
                      theta * (alpha - 2.0) * std::pow(x, alpha - 3.0);
    Require(df > 0.0, ErrorCode::kNoRoot,
            "polynomial not increasing at root; uniqueness violated");
    const double next = x - f(x) / df;
    if (!(next > root_theta) || std::abs(f(next)) > std::abs(f(x))) break;
    x = next;
  }
  return {x, f(x) / scale(x)};
}

double ClosedFormAlpha4(double theta, double lambda0, double rate, double mu) {
  RequirePositive(theta, "theta");
  RequirePositive(mu, "mu");
  const double k = lambda0 * rate / mu;
  return 0.5 * (theta + std::sqrt(theta * theta + 4.0 * theta * k * k));
}

double SparsePowerFloor(double lambda0, double mu, double theta,
                        double alpha) {
  const double denom = 1.0 - theta * std::pow(lambda0 / mu, 0.5 * alpha);
  if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
  return theta / denom;
}

PolynomialRoot DensePower(double lambda0, double rate, double mu,
                          double theta, double alpha) {
  const double c = std::pow(lambda0 * rate / mu, 0.5 * alpha);
  PolynomialRoot root = SolvePolynomialRoot(theta, alpha, c);
  root.x *= root.x;
  return root;
}

ThroughputSolution Optimize(double lambda0, double rate, double mu,
                            double theta, double alpha) {
  RequirePositive(lambda0, "lambda0");
  RequirePositive(rate, "energy rate");
  RequirePositive(mu, "mu");
  RequirePositive(theta, "theta");
  Require(alpha > 2.0, ErrorCode::kInvalidArgument, "alpha must be > 2");
  const double bits = std::log2(1.0 + theta);

  // zeta(rate) is undefined below theta; treat it as 0 there.
  const double zeta_rate =
      rate >= theta ? InterferenceTemperature(mu, theta, alpha, rate) : 0.0;
  ThroughputSolution sol;
  if (lambda0 <= zeta_rate) {
    sol.regime = Regime::kSparseAllOn;
    sol.power_low = std::min(SparsePowerFloor(lambda0, mu, theta, alpha), rate);
    sol.power_high = rate;
    sol.power_star = 0.5 * (sol.power_low + sol.power_high);
    sol.rho_star = 1.0;
    sol.rate_star = lambda0 * bits;
    return sol;
  }
  const PolynomialRoot root = DensePower(lambda0, rate, mu, theta, alpha);
  sol.regime = Regime::kDenseRationed;
  sol.power_low = sol.power_high = sol.power_star = root.x;
  sol.rho_star = std::min(1.0, rate / root.x);
  sol.rate_star = lambda0 * sol.rho_star * bits;
  sol.residual = root.residual;
  return sol;
}

double LimitHighEnergy(double lambda0, double mu, double theta, double alpha) {
  return std::min(lambda0, mu * std::pow(theta, -2.0 / alpha)) *
         std::log2(1.0 + theta);
}

double LimitDense(double mu, double theta, double alpha) {
  return mu * std::pow(theta, -2.0 / alpha) * std::log2(1.0 + theta);
}

}  // namespace ehm
