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

#include "ehm/lambert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ehm/error.hpp"

namespace ehm {
namespace {

constexpr double kInvE = 0.36787944117144232;  // 1/e

double InitialGuess(double x) {
  // Branch-point series in p = sqrt(2 (e x + 1)).
  if (x < -0.32) {
    const double p = std::sqrt(2.0 * (M_E * x + 1.0));
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }
  if (x < 1.0) return x * (1.0 + x * (-1.0 + x * 1.5));
  if (x < 3.0) return std::log1p(x) * 0.8;
  const double l = std::log(x);
  const double ll = std::log(l);
  return l - ll + ll / l;
}

}  // namespace

double LambertW0(double x) {
  if (std::isnan(x)) return x;
  if (x < -kInvE) {
    if (x > -kInvE - 1e-15) return -1.0;
    Fail(ErrorCode::kDomain, "LambertW0 argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;

  double w = InitialGuess(x);
  for (int it = 0; it < 64; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  // Halley stalls once the residual hits rounding; never leave the branch.
  return std::max(w, -1.0);
}

double LambertRootExponential(double x) {
  Require(x >= 0.0, ErrorCode::kInvalidArgument,
          "offset x must be >= 0, got " + std::to_string(x));
  if (x == 0.0) return 0.0;
  const double beta = 1.0 + x;
  return LambertW0(-beta * std::exp(-beta)) / beta + 1.0;
}

}  // namespace ehm
