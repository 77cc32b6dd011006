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
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "ehm/arrivals.hpp"
#include "ehm/error.hpp"
#include "ehm/lambert.hpp"

using namespace ehm;

namespace {

// Composite Simpson for E[e^{rZ}] of Z = (rate/d) W, W ~ chi-squared(d).
double ChiSquaredMgfByQuadrature(unsigned d, double rate, double r) {
  const double k = d / 2.0;
  auto pdf = [&](double w) {
    if (w <= 0.0) return d == 2 ? 0.5 : 0.0;
    return std::exp((k - 1.0) * std::log(w) - w / 2.0 - k * std::log(2.0) -
                    std::lgamma(k));
  };
  const int n = 200000;
  const double hi = 400.0;
  const double h = hi / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = i * h;
    const double f = pdf(w) * std::exp(r * rate / d * w);
    sum += (i == 0 || i == n) ? f : (i % 2 ? 4.0 * f : 2.0 * f);
  }
  return sum * h / 3.0;
}

// Independent fixed point for the shared transcendental equation
// 1 - r = exp(-2 r) (chi-squared d=4 rate 2 at beta 4; exponential 1 at 2).
double FixedPointRoot() {
  double r = 1.0;
  for (int i = 0; i < 500; ++i) r = 1.0 - std::exp(-2.0 * r);
  return r;
}

double SampleMean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double SampleVariance(const std::vector<double>& v) {
  const double m = SampleMean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

}  // namespace

TEST_SUITE("arrivals") {

TEST_CASE("validation rejects bad parameters") {
  CHECK_THROWS_AS(Validate(ScaledChiSquared{0, 1.0}), Error);
  CHECK_THROWS_AS(Validate(Exponential{-1.0}), Error);
  CHECK_THROWS_AS(Validate(Binary{1.5}), Error);
  CHECK_THROWS_AS(Validate(DiscreteGeneric{{0.5, 0.4}}), Error);
  CHECK_THROWS_AS(Validate(DiscreteGeneric{{1.2, -0.2}}), Error);
  CHECK_NOTHROW(Validate(DiscreteGeneric{{0.25, 0.5, 0.25}}));
  try {
    Sample(Binary{-0.1}, 1, 3);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
}

TEST_CASE("moments") {
  CHECK(Mean(ScaledChiSquared{4, 2.0}) == doctest::Approx(2.0));
  CHECK(Variance(ScaledChiSquared{4, 2.0}) == doctest::Approx(2.0));
  CHECK(Mean(DiscreteGeneric{{0.25, 0.5, 0.25}}) == doctest::Approx(1.0));
  CHECK(Variance(DiscreteGeneric{{0.25, 0.5, 0.25}}) == doctest::Approx(0.5));
  CHECK(Variance(Binary{0.3}) == doctest::Approx(0.21));
  CHECK(Variance(Exponential{3.0}) == doctest::Approx(9.0));
  CHECK(Variance(Deterministic{2.0}) == 0.0);
}

TEST_CASE("deterministic sample is constant") {
  const auto v = Sample(Deterministic{2.0}, 99, 3);
  CHECK(v == std::vector<double>{2.0, 2.0, 2.0});
  CHECK_THROWS_AS(Sample(Deterministic{2.0}, 99, 0), Error);
}

TEST_CASE("sampling is reproducible per seed") {
  CHECK(Sample(ScaledChiSquared{4, 2.0}, 7, 100) ==
        Sample(ScaledChiSquared{4, 2.0}, 7, 100));
  CHECK(Sample(ScaledChiSquared{4, 2.0}, 7, 100) !=
        Sample(ScaledChiSquared{4, 2.0}, 8, 100));
}

TEST_CASE("binary sample mean") {
  const auto v = Sample(Binary{0.5}, 2024, 1000000);
  CHECK(std::abs(SampleMean(v) - 0.5) <= 0.002);
}

TEST_CASE("chi-squared sample variance") {
  const auto v = Sample(ScaledChiSquared{4, 2.0}, 2025, 1000000);
  CHECK(std::abs(SampleVariance(v) - 2.0) <= 0.02);
  CHECK(*std::min_element(v.begin(), v.end()) >= 0.0);
}

TEST_CASE("sample means within five standard errors") {
  const std::vector<ArrivalModel> models = {
      ScaledChiSquared{2, 1.5}, ScaledChiSquared{16, 3.0}, Exponential{0.7},
      Binary{0.2}, DiscreteGeneric{{0.1, 0.2, 0.3, 0.4}}};
  const std::size_t n = 1000000;
  for (const auto& m : models) {
    const auto v = Sample(m, 11, n);
    const double se = std::sqrt(Variance(m) / n);
    CHECK(std::abs(SampleMean(v) - Mean(m)) <= 5.0 * se);
  }
}

TEST_CASE("cgf is zero at r = 0") {
  const std::vector<ArrivalModel> models = {
      ScaledChiSquared{4, 2.0}, Exponential{1.0}, Binary{0.5},
      DiscreteGeneric{{0.5, 0.5}}, Deterministic{3.0}};
  for (const auto& m : models) CHECK(Cgf(m, 0.0, 5.0) == 0.0);
}

TEST_CASE("cgf closed forms") {
  CHECK(Cgf(ScaledChiSquared{4, 2.0}, 0.5, 4.0) ==
        doctest::Approx(-2.0 * std::log(0.5) - 2.0).epsilon(1e-14));
  CHECK(Cgf(ScaledChiSquared{4, 2.0}, 0.5, 4.0) ==
        doctest::Approx(-0.6137).epsilon(1e-4));
  CHECK(Cgf(Exponential{1.0}, 0.5, 1.0) ==
        doctest::Approx(std::log(2.0) - 0.5).epsilon(1e-14));
  CHECK(Cgf(Binary{0.25}, 1.0, 0.5) ==
        doctest::Approx(std::log(0.75 + 0.25 * std::exp(1.0)) - 0.5));
  CHECK(Cgf(Deterministic{2.0}, 0.3, 1.0) == doctest::Approx(0.3));
}

TEST_CASE("chi-squared cgf matches quadrature") {
  for (unsigned d : {2u, 4u, 8u}) {
    for (double r : {-1.0, 0.2, 0.5, 0.9}) {
      const double rate = 2.0;
      if (r >= d / (2.0 * rate)) continue;
      const double beta = 3.0;
      const double oracle =
          std::log(ChiSquaredMgfByQuadrature(d, rate, r)) - r * beta;
      CHECK(Cgf(ScaledChiSquared{d, rate}, r, beta) ==
            doctest::Approx(oracle).epsilon(1e-7));
    }
  }
}

TEST_CASE("cgf domain errors name the bound") {
  try {
    Cgf(ScaledChiSquared{4, 2.0}, 1.0, 4.0);
    FAIL("expected a domain error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomain);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
  CHECK_THROWS_AS(Cgf(Exponential{1.0}, 1.0, 1.0), Error);
  CHECK(MgfDomainEdge(ScaledChiSquared{4, 2.0}) == doctest::Approx(1.0));
  CHECK(MgfDomainEdge(Exponential{0.5}) == doctest::Approx(2.0));
  CHECK(std::isinf(MgfDomainEdge(Binary{0.5})));
}

TEST_CASE("cgf is convex in r") {
  const std::vector<ArrivalModel> models = {
      ScaledChiSquared{4, 2.0}, Exponential{1.0}, Binary{0.3},
      DiscreteGeneric{{0.2, 0.0, 0.5, 0.3}}};
  for (const auto& m : models) {
    const double edge = std::min(MgfDomainEdge(m), 5.0);
    const double h = 0.01;
    for (double r = -3.0; r + 2 * h < edge; r += 0.05) {
      const double second =
          Cgf(m, r, 1.0) - 2 * Cgf(m, r + h, 1.0) + Cgf(m, r + 2 * h, 1.0);
      REQUIRE(second >= -1e-12);
    }
  }
}

TEST_CASE("cumulant root matches the fixed-point oracle") {
  const double oracle = FixedPointRoot();
  CHECK(oracle == doctest::Approx(0.7968).epsilon(1e-4));
  const auto chi = FindCumulantRoot(ScaledChiSquared{4, 2.0}, 4.0);
  CHECK(chi.r_star == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(chi.sign == CumulantRoot::Sign::kPositive);
  const auto expo = FindCumulantRoot(Exponential{1.0}, 2.0);
  CHECK(expo.r_star == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("cumulant root sign follows the drift") {
  const std::vector<ArrivalModel> models = {
      ScaledChiSquared{4, 2.0}, ScaledChiSquared{2, 0.5}, Exponential{1.0},
      Binary{0.4}, DiscreteGeneric{{0.3, 0.3, 0.4}}};
  for (const auto& m : models) {
    const double mean = Mean(m);
    for (double factor : {0.1, 0.5, 0.9, 1.1, 1.5, 1.9}) {
      const double beta = factor * mean;
      if (beta >= SupportMax(m)) continue;
      const auto root = FindCumulantRoot(m, beta);
      if (beta > mean) {
        CHECK(root.r_star > 0.0);
      } else {
        CHECK(root.r_star < 0.0);
      }
      CHECK(std::abs(Cgf(m, root.r_star, beta)) < 1e-12);
    }
  }
}

TEST_CASE("cumulant root errors") {
  CHECK_THROWS_AS(FindCumulantRoot(ScaledChiSquared{4, 2.0}, 2.0), Error);
  try {
    FindCumulantRoot(Exponential{1.0}, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoRoot);
    CHECK(std::string(e.what()).find("drift zero") != std::string::npos);
  }
  CHECK_THROWS_AS(FindCumulantRoot(Deterministic{2.0}, 3.0), Error);
  // Binary arrivals never exceed 1, so beta >= 1 has no positive root.
  CHECK_THROWS_AS(FindCumulantRoot(Binary{0.5}, 1.5), Error);
}

TEST_CASE("Lambert W0") {
  CHECK(LambertW0(0.0) == 0.0);
  CHECK(LambertW0(1.0) == doctest::Approx(0.5671432904097838).epsilon(1e-15));
  CHECK(LambertW0(-std::exp(-1.0)) == doctest::Approx(-1.0).epsilon(1e-7));
  CHECK(LambertW0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  for (double x : {-0.36, -0.3, -0.1, -1e-5, 1e-5, 0.5, 3.0, 100.0, 1e10}) {
    const double w = LambertW0(x);
    CHECK(w * std::exp(w) == doctest::Approx(x).epsilon(1e-13));
  }
  CHECK_THROWS_AS(LambertW0(-0.5), Error);
}

TEST_CASE("Lambert root for unit exponential arrivals") {
  CHECK(LambertRootExponential(0.0) == 0.0);
  CHECK(LambertRootExponential(1.0) == doctest::Approx(0.7968).epsilon(1e-4));
  CHECK(LambertW0(-2.0 * std::exp(-2.0)) ==
        doctest::Approx(-0.4064).epsilon(1e-3));
  double previous = -1.0;
  for (double x : {0.0, 0.5, 1.0, 2.0}) {
    const double r = LambertRootExponential(x);
    CHECK(r > previous);
    previous = r;
  }
  for (double x = 0.05; x <= 3.0 + 1e-12; x += 0.05) {
    const double numeric = FindCumulantRoot(Exponential{1.0}, 1.0 + x).r_star;
    CHECK(std::abs(LambertRootExponential(x) - numeric) <= 1e-10);
  }
  CHECK_THROWS_AS(LambertRootExponential(-0.1), Error);
}

TEST_CASE("root tends to zero as the drift vanishes") {
  CHECK(LambertRootExponential(1e-6) < 1e-5);
  CHECK(FindCumulantRoot(Exponential{1.0}, 1.0 + 1e-6).r_star < 1e-5);
}

}  // TEST_SUITE
