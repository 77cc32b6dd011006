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

#ifndef EHM_MARKOV_HPP_
#define EHM_MARKOV_HPP_

// Exact finite-battery analysis for integer arrivals, integer P and B. The
// battery level is a Markov chain on {0, ..., B}.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ehm {

struct MarkovBattery {
  unsigned power = 1;
  unsigned capacity = 1;
  std::vector<double> pmf;         // pmf[k] = Pr(Z = k)
  std::vector<double> transition;  // row-major, states() x states()
  std::vector<double> stationary;  // empty until solved

  std::size_t states() const { return static_cast<std::size_t>(capacity) + 1; }
  double at(std::size_t from, std::size_t to) const {
    return transition[from * states() + to];
  }
};

// Fills p_mn = Pr(S_t = n | S_{t-1} = m). Mass missing from a truncated pmf
// (at most 1e-12) lands in the saturating column n = B.
MarkovBattery BuildTransition(std::span<const double> pmf, unsigned power,
                              unsigned capacity);

// Stationary vector of the closed class reached from the empty battery.
// Transient states get 0. Throws Error(kAmbiguous) if several closed classes
// are reachable from state 0.
std::vector<double> Stationary(const MarkovBattery& chain);

// Solves and stores chain.stationary.
void SolveStationary(MarkovBattery& chain);

// Stationary mass at levels >= P. Requires a solved chain.
double TxProbMarkov(const MarkovBattery& chain);

// rate / P when arrivals never exceed P and B > 2P (no overflow possible),
// std::nullopt otherwise. Throws Error(kInvalidArgument) if the hypothesis
// holds but rate > P.
std::optional<double> BoundedArrivalRho(double z_max, double rate,
                                        double power, double capacity);

}  // namespace ehm

#endif  // EHM_MARKOV_HPP_
