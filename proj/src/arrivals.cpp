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

#include "ehm/arrivals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "ehm/error.hpp"

namespace ehm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void RequireRate(double rate, const char* what) {
  Require(std::isfinite(rate) && rate >= 0.0, ErrorCode::kInvalidArgument,
          std::string(what) + " rate must be finite and >= 0");
}

double PmfTotal(const std::vector<double>& pmf) {
  return std::accumulate(pmf.begin(), pmf.end(), 0.0);
}

// ln sum_k p_k e^{r k} - ln sum_k p_k over the nonzero entries.
double LogMgfDiscrete(std::span<const double> pmf, double r) {
  double peak = -kInf;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    if (pmf[k] > 0.0) {
      peak = std::max(peak, std::log(pmf[k]) + r * static_cast<double>(k));
    }
  }
  double sum = 0.0;
  double total = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    if (pmf[k] > 0.0) {
      sum += std::exp(std::log(pmf[k]) + r * static_cast<double>(k) - peak);
      total += pmf[k];
    }
  }
  return peak + std::log(sum) - std::log(total);
}

std::string FormatBound(double bound) {
  std::ostringstream out;
  out.precision(17);
  out << bound;
  return out.str();
}

}  // namespace

void Validate(const ArrivalModel& model) {
  std::visit(
      Overloaded{
          [](const ScaledChiSquared& m) {
            Require(m.dof >= 1, ErrorCode::kInvalidArgument,
                    "chi-squared dof must be >= 1");
            RequireRate(m.rate, "chi-squared");
          },
          [](const Exponential& m) {
            RequireRate(m.rate, "exponential");
            Require(m.rate > 0.0, ErrorCode::kInvalidArgument,
                    "exponential rate must be > 0");
          },
          [](const Binary& m) {
            RequireRate(m.rate, "binary");
            Require(m.rate <= 1.0, ErrorCode::kInvalidArgument,
                    "binary rate is a probability and must be <= 1");
          },
          [](const DiscreteGeneric& m) {
            Require(!m.pmf.empty(), ErrorCode::kInvalidArgument,
                    "discrete pmf is empty");
            for (double p : m.pmf) {
              Require(std::isfinite(p) && p >= 0.0,
                      ErrorCode::kInvalidArgument,
                      "discrete pmf entries must be finite and >= 0");
            }
            Require(std::abs(PmfTotal(m.pmf) - 1.0) <= kPmfTolerance,
                    ErrorCode::kInvalidArgument,
                    "discrete pmf does not sum to 1 within 1e-12");
          },
          [](const Deterministic& m) { RequireRate(m.rate, "deterministic"); },
      },
      model);
}

double Mean(const ArrivalModel& model) {
  return std::visit(
      Overloaded{
          [](const DiscreteGeneric& m) {
            double mean = 0.0;
            for (std::size_t k = 0; k < m.pmf.size(); ++k) {
              mean += static_cast<double>(k) * m.pmf[k];
            }
            return mean / PmfTotal(m.pmf);
          },
          [](const auto& m) { return m.rate; },
      },
      model);
}

double Variance(const ArrivalModel& model) {
  return std::visit(
      Overloaded{
          [](const ScaledChiSquared& m) {
            return 2.0 * m.rate * m.rate / static_cast<double>(m.dof);
          },
          [](const Exponential& m) { return m.rate * m.rate; },
          [](const Binary& m) { return m.rate * (1.0 - m.rate); },
          [&](const DiscreteGeneric& m) {
            const double mean = Mean(model);
            double var = 0.0;
            for (std::size_t k = 0; k < m.pmf.size(); ++k) {
              const double dev = static_cast<double>(k) - mean;
              var += dev * dev * m.pmf[k];
            }
            return var / PmfTotal(m.pmf);
          },
          [](const Deterministic&) { return 0.0; },
      },
      model);
}

std::string Describe(const ArrivalModel& model) {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const ScaledChiSquared& m) {
                   out << "chi2(dof=" << m.dof << ",rate=" << m.rate << ")";
                 },
                 [&](const Exponential& m) {
                   out << "exponential(rate=" << m.rate << ")";
                 },
                 [&](const Binary& m) {
                   out << "binary(rate=" << m.rate << ")";
                 },
                 [&](const DiscreteGeneric& m) {
                   out << "discrete(";
                   for (std::size_t k = 0; k < m.pmf.size(); ++k) {
                     out << (k ? ";" : "") << m.pmf[k];
                   }
                   out << ")";
                 },
                 [&](const Deterministic& m) {
                   out << "deterministic(rate=" << m.rate << ")";
                 },
             },
             model);
  return out.str();
}

double SupportMax(const ArrivalModel& model) {
  return std::visit(
      Overloaded{
          [](const ScaledChiSquared&) { return kInf; },
          [](const Exponential&) { return kInf; },
          [](const Binary& m) { return m.rate > 0.0 ? 1.0 : 0.0; },
          [](const DiscreteGeneric& m) {
            for (std::size_t k = m.pmf.size(); k-- > 0;) {
              if (m.pmf[k] > 0.0) return static_cast<double>(k);
            }
            return 0.0;
          },
          [](const Deterministic& m) { return m.rate; },
      },
      model);
}

double MgfDomainEdge(const ArrivalModel& model) {
  return std::visit(
      Overloaded{
          [](const ScaledChiSquared& m) {
            return m.rate > 0.0 ? static_cast<double>(m.dof) / (2.0 * m.rate)
                                : kInf;
          },
          [](const Exponential& m) { return 1.0 / m.rate; },
          [](const auto&) { return kInf; },
      },
      model);
}

double Cgf(const ArrivalModel& model, double r, double beta) {
  if (r == 0.0) return 0.0;
  const double edge = MgfDomainEdge(model);
  if (!(r < edge)) {
    Fail(ErrorCode::kDomain, "cgf argument r=" + FormatBound(r) +
                                 " outside MGF domain r < " +
                                 FormatBound(edge));
  }
  const double log_mgf = std::visit(
      Overloaded{
          [&](const ScaledChiSquared& m) {
            const double d = static_cast<double>(m.dof);
            return -0.5 * d * std::log1p(-2.0 * r * m.rate / d);
          },
          [&](const Exponential& m) { return -std::log1p(-r * m.rate); },
          [&](const Binary& m) {
            const double pmf[2] = {1.0 - m.rate, m.rate};
            return LogMgfDiscrete(pmf, r);
          },
          [&](const DiscreteGeneric& m) { return LogMgfDiscrete(m.pmf, r); },
          [&](const Deterministic& m) { return r * m.rate; },
      },
      model);
  return log_mgf - r * beta;
}

CumulantRoot FindCumulantRoot(const ArrivalModel& model, double beta) {
  Validate(model);
  const double mean = Mean(model);
  Require(std::isfinite(beta), ErrorCode::kInvalidArgument,
          "beta must be finite");
  if (beta == mean) {
    Fail(ErrorCode::kNoRoot, "root undefined at drift zero (beta == mean)");
  }
  if (!(Variance(model) > 0.0)) {
    Fail(ErrorCode::kNoRoot, "degenerate arrival model has no cumulant root");
  }
  const auto f = [&](double r) { return Cgf(model, r, beta); };

  // Bracket [lo, hi] with f(inner end) <= 0 < f(outer end).
  double inner = 0.0;
  double outer = 0.0;
  if (beta > mean) {
    const double edge = MgfDomainEdge(model);
    bool found = false;
    if (std::isfinite(edge)) {
      for (int k = 9; k <= 15 && !found; ++k) {
        outer = edge * (1.0 - std::pow(10.0, -k));
        found = f(outer) > 0.0;
      }
    } else {
      for (outer = 1.0; outer < 1e12 && !found; outer *= 2.0) {
        const double v = f(outer);
        if (!std::isfinite(v)) break;
        found = v > 0.0;
        if (found) break;
      }
    }
    if (!found) {
      Fail(ErrorCode::kNoRoot,
           "cumulant root not bracketable inside the MGF domain for beta=" +
               FormatBound(beta));
    }
  } else {
    bool found = false;
    for (double radius = 1.0; radius < 1e12; radius *= 2.0) {
      const double v = f(-radius);
      if (!std::isfinite(v)) break;
      if (v > 0.0) {
        outer = -radius;
        found = true;
        break;
      }
    }
    if (!found) {
      Fail(ErrorCode::kNoRoot,
           "cumulant root not bracketable for beta=" + FormatBound(beta));
    }
  }

  // The cgf is convex with cgf(0) = 0, so it is negative strictly between 0
  // and the root and positive beyond it.
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (inner + outer);
    if (mid == inner || mid == outer) break;
    if (f(mid) > 0.0) {
      outer = mid;
    } else {
      inner = mid;
    }
  }
  const double f_inner = inner == 0.0 ? kInf : std::abs(f(inner));
  const double f_outer = std::abs(f(outer));
  CumulantRoot root;
  root.beta = beta;
  root.r_star = f_inner < f_outer ? inner : outer;
  root.residual = f(root.r_star);
  root.sign = root.r_star > 0.0 ? CumulantRoot::Sign::kPositive
                                : CumulantRoot::Sign::kNegative;
  return root;
}

ArrivalStream::ArrivalStream(const ArrivalModel& model, std::uint64_t seed)
    : model_(model), engine_(seed) {
  Validate(model_);
  std::visit(Overloaded{
                 [&](const ScaledChiSquared& m) {
                   chi2_ = std::chi_squared_distribution<double>(m.dof);
                   scale_ = m.rate / static_cast<double>(m.dof);
                 },
                 [&](const Exponential& m) {
                   exp_ = std::exponential_distribution<double>(1.0 / m.rate);
                 },
                 [&](const Binary& m) {
                   bernoulli_ = std::bernoulli_distribution(m.rate);
                 },
                 [&](const DiscreteGeneric& m) {
                   discrete_ = std::discrete_distribution<int>(m.pmf.begin(),
                                                               m.pmf.end());
                 },
                 [&](const Deterministic&) {},
             },
             model_);
}

double ArrivalStream::Next() {
  switch (model_.index()) {
    case 0:
      return scale_ * chi2_(engine_);
    case 1:
      return exp_(engine_);
    case 2:
      return bernoulli_(engine_) ? 1.0 : 0.0;
    case 3:
      return static_cast<double>(discrete_(engine_));
    default:
      return std::get<Deterministic>(model_).rate;
  }
}

std::vector<double> Sample(const ArrivalModel& model, std::uint64_t seed,
                           std::size_t n) {
  Require(n >= 1, ErrorCode::kInvalidArgument, "sample count must be >= 1");
  ArrivalStream stream(model, seed);
  std::vector<double> out(n);
  for (auto& v : out) v = stream.Next();
  return out;
}

}  // namespace ehm
