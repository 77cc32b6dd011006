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

#ifndef EHM_BATTERY_HPP_
#define EHM_BATTERY_HPP_

// Slotted battery dynamics
//   S_t = min(S_{t-1} + Z_t - P * 1{S_{t-1} >= P}, B),   S_0 = 0,
// its Monte Carlo estimators, and the closed-form transmission probability
// and battery-level bounds built on the cumulant root r*(P).

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ehm/arrivals.hpp"

namespace ehm {

inline constexpr double kInfiniteCapacity =
    std::numeric_limits<double>::infinity();

// Minimum post-burn-in window before BatteryStats::short_horizon is raised.
inline constexpr std::uint64_t kMinWindow = 1000;

struct BatteryConfig {
  double power = 1.0;                    // P, energy per transmission
  double capacity = kInfiniteCapacity;   // B
  std::uint64_t horizon = 1'000'000;     // slots simulated
  std::uint64_t burn_in = 100'000;       // leading slots excluded from stats
  std::uint64_t seed = 0;

  bool infinite() const { return capacity == kInfiniteCapacity; }

  // Config with burn_in set to 10% of the horizon.
  static BatteryConfig WithDefaultBurnIn(double power, double capacity,
                                         std::uint64_t horizon,
                                         std::uint64_t seed);
};

void Validate(const BatteryConfig& cfg);

struct BatteryStats {
  double rho_hat = 0.0;
  double rho_stderr = 0.0;  // batch means (one trace) or across replications
  std::vector<double> thresholds;
  std::vector<double> tail_hat;       // time-averaged Pr(S_t > x)
  std::vector<double> low_tail_hat;   // time-averaged Pr(S_t < x)
  std::vector<double> overshoot_hat;  // time average of max(S_t - x, 0)
  double overflow_rate = 0.0;         // discarded energy per window slot
  std::uint64_t overflow_events = 0;  // whole-trace slots that discarded energy
  std::uint64_t window = 0;           // post-burn-in slots
  unsigned replications = 1;
  bool short_horizon = false;

  // Whole-trace energy ledger (slots 1..horizon of the first replication).
  double energy_harvested = 0.0;
  double energy_transmitted = 0.0;
  double energy_discarded = 0.0;
  double final_level = 0.0;
  std::uint64_t transmissions = 0;
};

// One step of the battery recursion. capacity may be kInfiniteCapacity.
double EvolveStep(double level, double arrival, double power, double capacity);

BatteryStats Simulate(const ArrivalModel& model, const BatteryConfig& cfg,
                      std::span<const double> thresholds);

// Independent replications with seeds derived from cfg.seed. Averages are
// taken over replications in index order; rho_stderr is the standard error
// across replications when there is more than one.
BatteryStats SimulateReplicated(const ArrivalModel& model,
                                const BatteryConfig& cfg,
                                std::span<const double> thresholds,
                                unsigned replications, unsigned threads);

// Battery level alongside the auxiliary processes used to dominate it:
//   G_t  = max(G_{t-1} + Z_t - P, 0)            (capped at B - P when finite)
//   G'_t = S_t at up-crossings of P, else G'_{t-1}
// with G_0 = 0 and G'_0 = P. Entry t holds slot t, for t = 0..horizon.
struct OracleSlot {
  double level = 0.0;
  double g = 0.0;
  double g_prime = 0.0;
};

std::vector<OracleSlot> ProofOracleTrace(const ArrivalModel& model,
                                         const BatteryConfig& cfg);

// min(1, rate / power) for an infinite battery.
double TxProbInfinite(double rate, double power);

struct ProbabilityBounds {
  double lower = 0.0;
  double upper = 1.0;
};

// Transmission probability sandwich for a finite battery. Three regimes by
// the sign of mean - P; at zero drift the lower bound is maximized over a
// virtual power offset x > 0. lower is clamped into [0, upper].
ProbabilityBounds TxProbBoundsFinite(const ArrivalModel& model, double power,
                                     double capacity);

// Pr(S_t > x) <= 2 exp(-r*(P) (x - 2P) / 2), clamped to 1. Requires mean < P.
double TailBound(const ArrivalModel& model, double power, double x);

// D_t(x) <= (4 / r*(P)) exp(-r*(P) (x - 2P) / 2). Requires mean < P. At x = B
// this also bounds the expected discarded energy of a finite battery.
double OvershootBound(const ArrivalModel& model, double power, double x);

// Time-averaged Pr(S_t < x) <= exp(r*(P) (B - x)), clamped to 1, for a finite
// battery with mean > P and x in [0, B].
double LowTailBoundFinite(const ArrivalModel& model, double power,
                          double capacity, double x);

}  // namespace ehm

#endif  // EHM_BATTERY_HPP_
