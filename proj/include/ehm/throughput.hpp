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

#ifndef EHM_THROUGHPUT_HPP_
#define EHM_THROUGHPUT_HPP_

// Spatial throughput R = lambda0 * rho * log2(1 + theta) maximized over the
// transmission power under the outage constraint, for an infinite battery.

namespace ehm {

enum class Regime {
  kSparseAllOn,    // every transmitter on; any P in [P_0, rate] is optimal
  kDenseRationed,  // rho < 1 and lambda0 rho(P*) = zeta(P*)
};

const char* RegimeName(Regime regime);

struct ThroughputSolution {
  Regime regime = Regime::kDenseRationed;
  double power_low = 0.0;   // P_0 (sparse) or P* (dense)
  double power_high = 0.0;  // rate (sparse) or P* (dense)
  double power_star = 0.0;  // interval midpoint (sparse) or P* (dense)
  double rho_star = 0.0;
  double rate_star = 0.0;   // R*, bit/s/Hz per unit area
  double residual = 0.0;    // scaled polynomial residual, 0 for sparse
};

double Throughput(double lambda0, double rho, double theta);

struct PolynomialRoot {
  double x = 0.0;
  double residual = 0.0;  // f(x) / (x^a + theta x^{a-2} + theta c)
};

// Unique root x > sqrt(theta) of x^a - theta x^{a-2} - theta c = 0.
PolynomialRoot SolvePolynomialRoot(double theta, double alpha, double c);

// Quadratic-in-P solution for alpha = 4:
//   P* = (theta + sqrt(theta^2 + 4 theta (lambda0 rate / mu)^2)) / 2.
double ClosedFormAlpha4(double theta, double lambda0, double rate, double mu);

// P_0 with zeta(P_0) = lambda0, i.e. theta / (1 - theta (lambda0/mu)^{a/2}).
// Returns +inf when lambda0 >= mu theta^{-2/a} (no finite P reaches it).
double SparsePowerFloor(double lambda0, double mu, double theta, double alpha);

// Power on the admissibility boundary lambda0 rate / P = zeta(P), i.e. the
// squared polynomial root with c = (lambda0 rate / mu)^{a/2}.
PolynomialRoot DensePower(double lambda0, double rate, double mu,
                          double theta, double alpha);

ThroughputSolution Optimize(double lambda0, double rate, double mu,
                            double theta, double alpha);

// min(lambda0, mu theta^{-2/a}) log2(1 + theta).
double LimitHighEnergy(double lambda0, double mu, double theta, double alpha);

// mu theta^{-2/a} log2(1 + theta).
double LimitDense(double mu, double theta, double alpha);

}  // namespace ehm

#endif  // EHM_THROUGHPUT_HPP_
