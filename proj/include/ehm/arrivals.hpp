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

#ifndef EHM_ARRIVALS_HPP_
#define EHM_ARRIVALS_HPP_

// Per-slot harvested-energy distributions and their cumulant machinery.
//
// Every model exposes mean(), its cumulant generating function
//   cgf(r, beta) = ln E[exp(r (Z - beta))]
// and the nonzero root r*(beta) of that function, which parameterizes all
// exponential battery bounds in battery.hpp.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace ehm {

// Z = (rate / dof) * W with W chi-squared on `dof` degrees of freedom.
struct ScaledChiSquared {
  unsigned dof = 1;
  double rate = 0.0;
};

struct Exponential {
  double rate = 0.0;
};

// Z in {0, 1} with Pr(Z = 1) = rate.
struct Binary {
  double rate = 0.0;
};

// Integer-valued arrivals; pmf[k] = Pr(Z = k).
struct DiscreteGeneric {
  std::vector<double> pmf;
};

// Z == rate. Violates the root assumption; simulation reference only.
struct Deterministic {
  double rate = 0.0;
};

using ArrivalModel = std::variant<ScaledChiSquared, Exponential, Binary,
                                  DiscreteGeneric, Deterministic>;

// Tolerance on the total mass of a DiscreteGeneric pmf.
inline constexpr double kPmfTolerance = 1e-12;

// Throws Error(kInvalidArgument) on negative rates, dof < 1, negative or
// unnormalized pmf entries.
void Validate(const ArrivalModel& model);

double Mean(const ArrivalModel& model);
double Variance(const ArrivalModel& model);
std::string Describe(const ArrivalModel& model);

// Largest value Z can take, or +inf for unbounded support.
double SupportMax(const ArrivalModel& model);

// Supremum of the MGF domain: cgf is finite for r < MgfDomainEdge(model).
// +inf when the MGF exists everywhere.
double MgfDomainEdge(const ArrivalModel& model);

// ln E[exp(r (Z - beta))]. cgf(model, 0, beta) == 0 exactly. Throws
// Error(kDomain) naming the finite bound when r is outside the domain.
double Cgf(const ArrivalModel& model, double r, double beta);

struct CumulantRoot {
  enum class Sign { kPositive, kNegative };
  double beta = 0.0;
  double r_star = 0.0;
  Sign sign = Sign::kPositive;
  double residual = 0.0;  // cgf(model, r_star, beta)
};

// Nonzero root of r -> cgf(model, r, beta). Positive for beta > mean,
// negative for beta < mean. Throws Error(kNoRoot) at zero drift, for
// degenerate models, and when no sign change exists inside the MGF domain.
CumulantRoot FindCumulantRoot(const ArrivalModel& model, double beta);

// Streaming i.i.d. draws from a model with a private engine.
class ArrivalStream {
 public:
  ArrivalStream(const ArrivalModel& model, std::uint64_t seed);

  double Next();

 private:
  ArrivalModel model_;
  std::mt19937_64 engine_;
  std::chi_squared_distribution<double> chi2_;
  std::exponential_distribution<double> exp_;
  std::bernoulli_distribution bernoulli_;
  std::discrete_distribution<int> discrete_;
  double scale_ = 1.0;
};

// n i.i.d. draws, deterministic for fixed (model, seed).
std::vector<double> Sample(const ArrivalModel& model, std::uint64_t seed,
                           std::size_t n);

}  // namespace ehm

#endif  // EHM_ARRIVALS_HPP_
