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

#ifndef EHM_LAMBERT_HPP_
#define EHM_LAMBERT_HPP_

namespace ehm {

// Principal branch W0 of the Lambert W function on [-1/e, inf), by Halley
// iteration. Arguments below -1/e by less than 1e-15 are snapped to the
// branch point; anything further below throws Error(kDomain).
double LambertW0(double x);

// Closed-form cumulant root for unit-mean exponential arrivals:
//   r*(1 + x) = W0(-(1 + x) e^{-(1 + x)}) / (1 + x) + 1,   x >= 0.
double LambertRootExponential(double x);

}  // namespace ehm

#endif  // EHM_LAMBERT_HPP_
