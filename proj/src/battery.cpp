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

#include "ehm/battery.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "ehm/error.hpp"
#include "ehm/parallel.hpp"

namespace ehm {
namespace {

constexpr unsigned kBatches = 32;
constexpr std::uint64_t kReplicationStream = 0xba77e41ULL;

// Sign of the drift mean - P, with exact ties within relative 1e-12.
int DriftSign(double mean, double power) {
  if (std::abs(mean - power) <= 1e-12 * std::max(1.0, power)) return 0;
  return mean < power ? -1 : 1;
}

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Raw lower bound of the mean < P regime; may be negative.
double SubcriticalLower(double mean, double power, double capacity,
                        double r_star) {
  if (!std::isfinite(capacity)) return mean / power;
  return (mean / power) *
         (1.0 - 4.0 / (mean * r_star) *
                    std::exp(-0.5 * r_star * (capacity - 2.0 * power)));
}

double GoldenMax(const std::function<double(double)>& f, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

BatteryConfig BatteryConfig::WithDefaultBurnIn(double power, double capacity,
                                               std::uint64_t horizon,
                                               std::uint64_t seed) {
  BatteryConfig cfg;
  cfg.power = power;
  cfg.capacity = capacity;
  cfg.horizon = horizon;
  cfg.burn_in = horizon / 10;
  cfg.seed = seed;
  return cfg;
}

void Validate(const BatteryConfig& cfg) {
  Require(std::isfinite(cfg.power) && cfg.power > 0.0,
          ErrorCode::kInvalidArgument, "transmission power must be > 0");
  Require(!std::isnan(cfg.capacity) && cfg.capacity >= cfg.power,
          ErrorCode::kInvalidArgument,
          "battery capacity must be >= transmission power");
  Require(cfg.horizon > cfg.burn_in, ErrorCode::kInvalidArgument,
          "horizon must exceed burn_in");
}

double EvolveStep(double level, double arrival, double power,
                  double capacity) {
  const double spent = level >= power ? power : 0.0;
  return std::min(level + arrival - spent, capacity);
}

BatteryStats Simulate(const ArrivalModel& model, const BatteryConfig& cfg,
                      std::span<const double> thresholds) {
  Validate(cfg);
  for (double x : thresholds) {
    Require(!std::isnan(x) && (cfg.infinite() || x <= cfg.capacity),
            ErrorCode::kInvalidArgument,
            "thresholds must not exceed a finite capacity");
  }
  ArrivalStream stream(model, cfg.seed);

  BatteryStats stats;
  stats.window = cfg.horizon - cfg.burn_in;
  stats.short_horizon = stats.window < kMinWindow;
  stats.thresholds.assign(thresholds.begin(), thresholds.end());
  const std::size_t nx = thresholds.size();
  std::vector<std::uint64_t> above(nx, 0);
  std::vector<std::uint64_t> below(nx, 0);
  std::vector<double> excess(nx, 0.0);
  std::vector<std::uint64_t> batch_tx(kBatches, 0);
  std::vector<std::uint64_t> batch_len(kBatches, 0);

  double level = 0.0;
  double window_discarded = 0.0;
  std::uint64_t window_tx = 0;
  for (std::uint64_t t = 1; t <= cfg.horizon; ++t) {
    const double z = stream.Next();
    const bool tx = level >= cfg.power;
    double next = level + z - (tx ? cfg.power : 0.0);
    double discarded = 0.0;
    if (next > cfg.capacity) {
      discarded = next - cfg.capacity;
      next = cfg.capacity;
      ++stats.overflow_events;
    }
    stats.energy_harvested += z;
    stats.energy_discarded += discarded;
    if (tx) {
      stats.energy_transmitted += cfg.power;
      ++stats.transmissions;
    }
    level = next;

    if (t <= cfg.burn_in) continue;
    const std::uint64_t k = t - cfg.burn_in - 1;
    const auto batch = static_cast<std::size_t>((k * kBatches) / stats.window);
    ++batch_len[batch];
    if (tx) {
      ++window_tx;
      ++batch_tx[batch];
    }
    window_discarded += discarded;
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = thresholds[i];
      if (level > x) {
        ++above[i];
        excess[i] += level - x;
      } else if (level < x) {
        ++below[i];
      }
    }
  }
  stats.final_level = level;

  const double w = static_cast<double>(stats.window);
  stats.rho_hat = static_cast<double>(window_tx) / w;
  stats.overflow_rate = window_discarded / w;
  stats.tail_hat.resize(nx);
  stats.low_tail_hat.resize(nx);
  stats.overshoot_hat.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) {
    stats.tail_hat[i] = static_cast<double>(above[i]) / w;
    stats.low_tail_hat[i] = static_cast<double>(below[i]) / w;
    stats.overshoot_hat[i] = excess[i] / w;
  }

  // Batch-means standard error over the batches that received slots.
  std::vector<double> means;
  for (unsigned b = 0; b < kBatches; ++b) {
    if (batch_len[b] > 0) {
      means.push_back(static_cast<double>(batch_tx[b]) /
                      static_cast<double>(batch_len[b]));
    }
  }
  if (means.size() > 1) {
    double m = 0.0;
    for (double v : means) m += v;
    m /= static_cast<double>(means.size());
    double ss = 0.0;
    for (double v : means) ss += (v - m) * (v - m);
    const double n = static_cast<double>(means.size());
    stats.rho_stderr = std::sqrt(ss / (n - 1.0) / n);
  }
  return stats;
}

BatteryStats SimulateReplicated(const ArrivalModel& model,
                                const BatteryConfig& cfg,
                                std::span<const double> thresholds,
                                unsigned replications, unsigned threads) {
  Require(replications >= 1, ErrorCode::kInvalidArgument,
          "replications must be >= 1");
  if (replications == 1) return Simulate(model, cfg, thresholds);

  std::vector<BatteryStats> runs(replications);
  ParallelFor(replications, threads, [&](std::size_t i) {
    BatteryConfig rep = cfg;
    rep.seed = DeriveSeed(cfg.seed, kReplicationStream, i);
    runs[i] = Simulate(model, rep, thresholds);
  });

  BatteryStats out = runs.front();
  const std::size_t nx = thresholds.size();
  const double n = static_cast<double>(replications);
  out.replications = replications;
  out.rho_hat = 0.0;
  out.overflow_rate = 0.0;
  out.overflow_events = 0;
  std::fill(out.tail_hat.begin(), out.tail_hat.end(), 0.0);
  std::fill(out.low_tail_hat.begin(), out.low_tail_hat.end(), 0.0);
  std::fill(out.overshoot_hat.begin(), out.overshoot_hat.end(), 0.0);
  for (const auto& r : runs) {
    out.rho_hat += r.rho_hat / n;
    out.overflow_rate += r.overflow_rate / n;
    out.overflow_events += r.overflow_events;
    for (std::size_t i = 0; i < nx; ++i) {
      out.tail_hat[i] += r.tail_hat[i] / n;
      out.low_tail_hat[i] += r.low_tail_hat[i] / n;
      out.overshoot_hat[i] += r.overshoot_hat[i] / n;
    }
  }
  double ss = 0.0;
  for (const auto& r : runs) ss += (r.rho_hat - out.rho_hat) * (r.rho_hat - out.rho_hat);
  out.rho_stderr = std::sqrt(ss / (n - 1.0) / n);
  return out;
}

std::vector<OracleSlot> ProofOracleTrace(const ArrivalModel& model,
                                         const BatteryConfig& cfg) {
  Validate(cfg);
  ArrivalStream stream(model, cfg.seed);
  const double cap_g =
      cfg.infinite() ? kInfiniteCapacity : cfg.capacity - cfg.power;
  std::vector<OracleSlot> trace(cfg.horizon + 1);
  trace[0] = {0.0, 0.0, cfg.power};
  for (std::uint64_t t = 1; t <= cfg.horizon; ++t) {
    const OracleSlot& prev = trace[t - 1];
    const double z = stream.Next();
    OracleSlot& cur = trace[t];
    cur.level = EvolveStep(prev.level, z, cfg.power, cfg.capacity);
    cur.g = std::min(std::max(prev.g + z - cfg.power, 0.0), cap_g);
    const bool up_crossing = prev.level < cfg.power && cur.level >= cfg.power;
    cur.g_prime = up_crossing ? cur.level : prev.g_prime;
  }
  return trace;
}

double TxProbInfinite(double rate, double power) {
  Require(rate >= 0.0, ErrorCode::kInvalidArgument, "rate must be >= 0");
  Require(power > 0.0, ErrorCode::kInvalidArgument, "power must be > 0");
  return std::min(1.0, rate / power);
}

ProbabilityBounds TxProbBoundsFinite(const ArrivalModel& model, double power,
                                     double capacity) {
  Require(power > 0.0, ErrorCode::kInvalidArgument, "power must be > 0");
  Require(capacity >= power, ErrorCode::kInvalidArgument,
          "capacity must be >= power");
  Validate(model);
  const double mean = Mean(model);
  ProbabilityBounds bounds;
  switch (DriftSign(mean, power)) {
    case -1: {
      const double r = FindCumulantRoot(model, power).r_star;
      bounds.upper = mean / power;
      bounds.lower = SubcriticalLower(mean, power, capacity, r);
      break;
    }
    case 1: {
      const double r = FindCumulantRoot(model, power).r_star;
      bounds.upper = 1.0;
      bounds.lower = std::isfinite(capacity)
                         ? 1.0 - std::exp(r * (capacity - power))
                         : 1.0;
      break;
    }
    default: {
      // Lower bound through a virtual power mean + x, maximized over x.
      const auto lower_at = [&](double x) {
        try {
          const double p = mean + x;
          const double r = FindCumulantRoot(model, p).r_star;
          return SubcriticalLower(mean, p, capacity, r);
        } catch (const Error&) {
          return -std::numeric_limits<double>::infinity();
        }
      };
      constexpr int kGrid = 200;
      const double lo = std::log(1e-3 * mean);
      const double hi = std::log(10.0 * mean);
      const auto x_at = [&](int i) {
        return std::exp(lo + (hi - lo) * i / (kGrid - 1));
      };
      int best = 0;
      double best_value = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < kGrid; ++i) {
        const double v = lower_at(x_at(i));
        if (v > best_value) {
          best_value = v;
          best = i;
        }
      }
      if (std::isfinite(best_value)) {
        const double a = std::log(x_at(std::max(best - 1, 0)));
        const double b = std::log(x_at(std::min(best + 1, kGrid - 1)));
        const double log_x =
            GoldenMax([&](double u) { return lower_at(std::exp(u)); }, a, b);
        best_value = std::max(best_value, lower_at(std::exp(log_x)));
      }
      bounds.upper = 1.0;
      bounds.lower = std::isfinite(best_value) ? best_value : 0.0;
      break;
    }
  }
  bounds.upper = Clamp01(bounds.upper);
  bounds.lower = std::clamp(bounds.lower, 0.0, bounds.upper);
  return bounds;
}

double TailBound(const ArrivalModel& model, double power, double x) {
  Require(x >= 0.0, ErrorCode::kInvalidArgument, "threshold must be >= 0");
  Require(Mean(model) < power, ErrorCode::kPrecondition,
          "tail bound requires mean arrival < power");
  const double r = FindCumulantRoot(model, power).r_star;
  return std::min(1.0, 2.0 * std::exp(-0.5 * r * (x - 2.0 * power)));
}

double OvershootBound(const ArrivalModel& model, double power, double x) {
  Require(x >= 0.0, ErrorCode::kInvalidArgument, "threshold must be >= 0");
  Require(Mean(model) < power, ErrorCode::kPrecondition,
          "overshoot bound requires mean arrival < power");
  const double r = FindCumulantRoot(model, power).r_star;
  return 4.0 / r * std::exp(-0.5 * r * (x - 2.0 * power));
}

double LowTailBoundFinite(const ArrivalModel& model, double power,
                          double capacity, double x) {
  Require(std::isfinite(capacity) && capacity >= power,
          ErrorCode::kInvalidArgument,
          "low-tail bound needs a finite capacity >= power");
  Require(x >= 0.0 && x <= capacity, ErrorCode::kInvalidArgument,
          "threshold must lie in [0, capacity]");
  Require(Mean(model) > power, ErrorCode::kPrecondition,
          "low-tail bound requires mean arrival > power");
  const double r = FindCumulantRoot(model, power).r_star;
  return std::min(1.0, std::exp(r * (capacity - x)));
}

}  // namespace ehm
