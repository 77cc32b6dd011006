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

#include "commands.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <vector>

#include "ehm/ehm.h"
#include "ehm/format.hpp"
#include "ehm/parallel.hpp"

namespace ehm::cli {
namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kTxProbStream = 0x7e9b;
constexpr std::uint64_t kSweepStream = 0x5a3e;

void Check(ehm_status status, const std::string& what) {
  if (status == EHM_OK) return;
  const std::string msg = what + ": " + ehm_last_error();
  if (status == EHM_ERR_INVALID_ARGUMENT || status == EHM_ERR_DOMAIN) {
    throw ConfigError(msg);
  }
  throw RunError(msg);
}

struct ArrivalDeleter {
  void operator()(ehm_arrival* a) const { ehm_arrival_free(a); }
};
struct StatsDeleter {
  void operator()(ehm_battery_stats* s) const { ehm_battery_stats_free(s); }
};
struct TableDeleter {
  void operator()(ehm_density_table* t) const { ehm_density_table_free(t); }
};
using ArrivalPtr = std::unique_ptr<ehm_arrival, ArrivalDeleter>;
using StatsPtr = std::unique_ptr<ehm_battery_stats, StatsDeleter>;
using TablePtr = std::unique_ptr<ehm_density_table, TableDeleter>;

std::string Num(double v) { return FormatDouble(v); }

std::uint64_t ResolveSeed(ConfigReader& config, const RunOptions& run) {
  const auto from_config = config.OptionalSeed("seed");
  if (run.seed) return *run.seed;
  if (!from_config) {
    throw ConfigError("a seed is required: set \"seed\" in the config or "
                      "pass --seed");
  }
  return *from_config;
}

std::string Header(const std::string& command, const ordered_json& resolved) {
  return "# ehm version=" + std::string(ehm_version()) +
         " command=" + command + " config=" + resolved.dump() + "\n";
}

ordered_json GridJson(const std::vector<double>& grid) {
  ordered_json arr = ordered_json::array();
  for (double v : grid) arr.push_back(v);
  return arr;
}

struct ArrivalSpec {
  std::string family;
  unsigned dof = 0;
  double rate = 0.0;
};

ArrivalPtr MakeArrival(const ArrivalSpec& spec) {
  ehm_arrival* raw = nullptr;
  ehm_status status = EHM_ERR_INVALID_ARGUMENT;
  if (spec.family == "chi2") {
    status = ehm_arrival_create_chi2(spec.dof, spec.rate, &raw);
  } else if (spec.family == "exponential") {
    status = ehm_arrival_create_exponential(spec.rate, &raw);
  } else if (spec.family == "binary") {
    status = ehm_arrival_create_binary(spec.rate, &raw);
  } else if (spec.family == "deterministic") {
    status = ehm_arrival_create_deterministic(spec.rate, &raw);
  } else {
    throw ConfigError("unknown arrival family '" + spec.family +
                      "' (chi2, exponential, binary, deterministic)");
  }
  Check(status, "arrival model");
  return ArrivalPtr(raw);
}

unsigned ReadDof(ConfigReader& config, const std::string& key,
                 unsigned fallback) {
  const std::uint64_t d = config.Count(key, fallback);
  if (d < 1 || d > 1u << 20) throw ConfigError("'" + key + "' must be >= 1");
  return static_cast<unsigned>(d);
}

struct Horizon {
  std::uint64_t horizon;
  std::uint64_t burn_in;
  unsigned replications;
};

Horizon ReadHorizon(ConfigReader& config, std::uint64_t default_horizon) {
  Horizon h;
  h.horizon = config.Count("horizon", default_horizon);
  h.burn_in = config.Count("burn_in", h.horizon / 10);
  const std::uint64_t reps = config.Count("replications", 1);
  if (reps < 1 || reps > 100000) {
    throw ConfigError("'replications' must be in [1, 100000]");
  }
  h.replications = static_cast<unsigned>(reps);
  if (h.burn_in >= h.horizon) {
    throw ConfigError("'burn_in' must be smaller than 'horizon'");
  }
  return h;
}

void PutHorizon(ordered_json& resolved, const Horizon& h) {
  resolved["horizon"] = h.horizon;
  resolved["burn_in"] = h.burn_in;
  resolved["replications"] = h.replications;
}

ehm_battery_summary Simulate(const ehm_arrival* arrival, double power,
                             double capacity, const Horizon& h,
                             std::uint64_t seed, unsigned threads,
                             const std::vector<double>& thresholds,
                             StatsPtr* keep = nullptr) {
  ehm_battery_config cfg;
  cfg.power = power;
  cfg.capacity = capacity;
  cfg.horizon = h.horizon;
  cfg.burn_in = h.burn_in;
  cfg.seed = seed;
  ehm_battery_stats* raw = nullptr;
  Check(ehm_battery_simulate(arrival, &cfg, thresholds.data(),
                             thresholds.size(), h.replications, threads, &raw),
        "battery simulation");
  StatsPtr stats(raw);
  ehm_battery_summary summary;
  Check(ehm_battery_stats_summary(stats.get(), &summary), "battery summary");
  if (keep) *keep = std::move(stats);
  return summary;
}

struct Network {
  double theta;
  double alpha;
  double mu;
};

// mu_epsilon comes either from the config directly or from a calibration
// table produced by calibrate-mu.
Network ReadNetwork(ConfigReader& config, ordered_json& resolved) {
  Network net;
  net.theta = config.PositiveNumber("theta", 3.0);
  net.alpha = config.Number("alpha", 3.0);
  if (!(net.alpha > 2.0)) throw ConfigError("'alpha' must be > 2");
  resolved["theta"] = net.theta;
  resolved["alpha"] = net.alpha;
  const auto table_path = config.OptionalString("calibration_table");
  if (table_path) {
    if (config.Has("mu_epsilon")) {
      throw ConfigError("give either 'mu_epsilon' or 'calibration_table', "
                        "not both");
    }
    const double eps = config.Number("epsilon", 0.015);
    if (!(eps > 0.0 && eps < 1.0)) {
      throw ConfigError("'epsilon' must lie in (0, 1)");
    }
    ehm_density_table* raw = nullptr;
    if (ehm_density_table_load(table_path->c_str(), &raw) != EHM_OK) {
      throw MissingArtifact("calibration table '" + *table_path +
                            "' is missing or unreadable (" +
                            ehm_last_error() +
                            "); run `ehm calibrate-mu` first");
    }
    TablePtr table(raw);
    if (ehm_density_table_mu_for_epsilon(table.get(), eps, &net.mu) !=
        EHM_OK) {
      throw ConfigError("epsilon " + Num(eps) +
                        " lies outside the calibration table");
    }
    resolved["calibration_table"] = *table_path;
    resolved["epsilon"] = eps;
  } else {
    net.mu = config.PositiveNumber("mu_epsilon", 0.05);
  }
  resolved["mu_epsilon"] = net.mu;
  return net;
}

}  // namespace

std::string CalibrateMu(ConfigReader& config, const RunOptions& run) {
  ordered_json resolved;
  resolved["seed"] = ResolveSeed(config, run);
  const double alpha = config.Number("alpha", 3.0);
  if (!(alpha > 2.0)) throw ConfigError("'alpha' must be > 2");
  resolved["alpha"] = alpha;
  const double mean_count = config.PositiveNumber("mean_count", 200.0);
  resolved["mean_count"] = mean_count;
  const std::uint64_t trials = config.Count("trials", 100000);
  if (trials < 1) throw ConfigError("'trials' must be >= 1");
  resolved["trials"] = trials;
  const auto mu_grid = config.Grid("mu_grid", LogGrid(1e-4, 0.1, 61));
  resolved["mu_grid"] = GridJson(mu_grid);
  std::vector<double> targets;
  if (config.Has("epsilon_grid")) {
    targets = config.Grid("epsilon_grid", {});
    if (targets.back() >= 1.0) {
      throw ConfigError("'epsilon_grid' values must lie in (0, 1)");
    }
    resolved["epsilon_grid"] = GridJson(targets);
  }
  config.RejectUnknown();

  ehm_mc_options opts;
  ehm_mc_options_init(&opts, trials, resolved["seed"].get<std::uint64_t>());
  opts.mean_count = mean_count;
  opts.threads = run.threads;

  TablePtr table;
  if (targets.empty()) {
    ehm_density_table* raw = nullptr;
    Check(ehm_calibrate_outage_curve(mu_grid.data(), mu_grid.size(), alpha,
                                     &opts, &raw),
          "calibration");
    table.reset(raw);
  } else {
    ehm_density_table* raw = nullptr;
    std::vector<double> unresolved(targets.size());
    std::size_t n_unresolved = 0;
    Check(ehm_estimate_nominal_density(targets.data(), targets.size(), alpha,
                                       &opts, mu_grid.data(), mu_grid.size(),
                                       &raw, nullptr, unresolved.data(),
                                       &n_unresolved),
          "nominal density");
    table.reset(raw);
    for (std::size_t i = 0; i < n_unresolved; ++i) {
      std::cerr << "warning: epsilon target " << Num(unresolved[i])
                << " is outside the calibrated mu range\n";
    }
    if (n_unresolved == targets.size()) {
      throw MissingArtifact("no epsilon target could be resolved; widen "
                            "'mu_grid'");
    }
  }
  std::size_t needed = 0;
  Check(ehm_density_table_csv(table.get(), nullptr, 0, &needed), "table CSV");
  std::string csv(needed, '\0');
  Check(ehm_density_table_csv(table.get(), csv.data(), csv.size(), &needed),
        "table CSV");
  csv.resize(needed - 1);
  return Header("calibrate-mu", resolved) + csv;
}

std::string SweepEnergy(ConfigReader& config, const RunOptions& run) {
  ordered_json resolved;
  const std::uint64_t seed = ResolveSeed(config, run);
  resolved["seed"] = seed;
  const Network net = ReadNetwork(config, resolved);
  const auto lambda0 = config.Grid("lambda_0", {0.02, 0.05, 0.5});
  resolved["lambda_0"] = GridJson(lambda0);
  const auto rates = config.Grid("lambda_e_grid", LogGrid(0.1, 1000.0, 21));
  resolved["lambda_e_grid"] = GridJson(rates);
  const std::string mode = config.String("mode", "analytic");
  resolved["mode"] = mode;

  std::ostringstream out;
  const double gain = std::log2(1.0 + net.theta);
  if (mode == "analytic") {
    config.RejectUnknown();
    out << Header("sweep-energy", resolved);
    out << "lambda_e,lambda_0,regime,P_star,R_star\n";
    for (double rate : rates) {
      for (double l0 : lambda0) {
        ehm_throughput_solution sol;
        Check(ehm_optimize_throughput(l0, rate, net.mu, net.theta, net.alpha,
                                      &sol),
              "throughput optimization");
        out << Num(rate) << ',' << Num(l0) << ','
            << ehm_regime_name(sol.regime) << ',' << Num(sol.power_star)
            << ',' << Num(sol.rate_star) << '\n';
      }
    }
    return out.str();
  }
  if (mode != "finite") {
    throw ConfigError("'mode' must be \"analytic\" or \"finite\"");
  }

  // Finite battery: simulate rho on a log-spaced power grid and keep the
  // best admissible power for each (lambda_e, lambda_0).
  const double multiple = config.Number("capacity_multiple", 1.5);
  if (!(multiple >= 1.0)) throw ConfigError("'capacity_multiple' must be >= 1");
  resolved["capacity_multiple"] = multiple;
  ArrivalSpec spec{"chi2", ReadDof(config, "dof", 4), 0.0};
  resolved["dof"] = spec.dof;
  const std::uint64_t per_decade = config.Count("power_points_per_decade", 50);
  if (per_decade < 1 || per_decade > 10000) {
    throw ConfigError("'power_points_per_decade' must be in [1, 10000]");
  }
  resolved["power_points_per_decade"] = per_decade;
  const double span = config.Number("power_span", 100.0);
  if (!(span > 1.0)) throw ConfigError("'power_span' must be > 1");
  resolved["power_span"] = span;
  const Horizon h = ReadHorizon(config, 100000);
  PutHorizon(resolved, h);
  config.RejectUnknown();

  // Grid from theta up to power_span * max(lambda_e, theta).
  std::vector<std::vector<double>> powers(rates.size());
  std::vector<std::pair<std::size_t, std::size_t>> items;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    const double hi = span * std::max(rates[i], net.theta);
    const int points = std::max<int>(
        2, static_cast<int>(std::ceil(std::log10(hi / net.theta) *
                                      static_cast<double>(per_decade))) + 1);
    powers[i] = LogGrid(net.theta, hi, points);
    for (std::size_t j = 0; j < powers[i].size(); ++j) items.push_back({i, j});
  }
  std::vector<double> rho(items.size());
  ParallelFor(items.size(), run.threads, [&](std::size_t k) {
    const auto [i, j] = items[k];
    ArrivalSpec s = spec;
    s.rate = rates[i];
    const auto arrival = MakeArrival(s);
    const double p = powers[i][j];
    rho[k] = Simulate(arrival.get(), p, multiple * p, h,
                      DeriveSeed(seed, kSweepStream, k), 1, {})
                 .rho_hat;
  });

  out << Header("sweep-energy", resolved);
  out << "lambda_e,lambda_0,regime,P_star,R_star\n";
  std::size_t offset = 0;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    for (double l0 : lambda0) {
      ehm_throughput_solution analytic;
      Check(ehm_optimize_throughput(l0, rates[i], net.mu, net.theta, net.alpha,
                                    &analytic),
            "throughput optimization");
      double best_rate = 0.0;
      double best_power = std::numeric_limits<double>::quiet_NaN();
      for (std::size_t j = 0; j < powers[i].size(); ++j) {
        const double active = l0 * rho[offset + j];
        int ok = 0;
        Check(ehm_is_admissible(active, powers[i][j], net.mu, net.theta,
                                net.alpha, &ok),
              "admissibility");
        if (ok && active * gain > best_rate) {
          best_rate = active * gain;
          best_power = powers[i][j];
        }
      }
      out << Num(rates[i]) << ',' << Num(l0) << ','
          << ehm_regime_name(analytic.regime) << ',' << Num(best_power)
          << ',' << Num(best_rate) << '\n';
    }
    offset += powers[i].size();
  }
  return out.str();
}

std::string TxProb(ConfigReader& config, const RunOptions& run) {
  ordered_json resolved;
  const std::uint64_t seed = ResolveSeed(config, run);
  resolved["seed"] = seed;
  const std::string sweep = config.String("sweep", "capacity");
  resolved["sweep"] = sweep;
  ArrivalSpec base;
  base.family = config.String("family", "chi2");
  base.rate = config.PositiveNumber("rate", 2.0);
  resolved["family"] = base.family;
  resolved["rate"] = base.rate;

  std::vector<double> multiples;
  std::vector<unsigned> dofs;
  if (sweep == "capacity") {
    multiples = config.Grid("capacity_multiples", {1.5, 2.0, 4.0, 10.0});
    if (multiples.front() < 1.0) {
      throw ConfigError("'capacity_multiples' must be >= 1");
    }
    resolved["capacity_multiples"] = GridJson(multiples);
    if (base.family == "chi2") {
      dofs.push_back(ReadDof(config, "dof", 4));
      resolved["dof"] = dofs.front();
    } else {
      dofs.push_back(0);
    }
  } else if (sweep == "dof") {
    if (base.family != "chi2") {
      throw ConfigError("sweep \"dof\" requires family \"chi2\"");
    }
    for (double d : config.Grid("dof_grid", {2, 4, 8, 16})) {
      if (std::floor(d) != d) throw ConfigError("'dof_grid' must be integers");
      dofs.push_back(static_cast<unsigned>(d));
    }
    resolved["dof_grid"] = dofs;
    multiples.push_back(config.Number("capacity_multiple", 1.5));
    if (multiples.front() < 1.0) {
      throw ConfigError("'capacity_multiple' must be >= 1");
    }
    resolved["capacity_multiple"] = multiples.front();
  } else {
    throw ConfigError("'sweep' must be \"capacity\" or \"dof\"");
  }
  const auto powers = config.Grid("power_grid", LinearGrid(0.5, 10.0, 20));
  resolved["power_grid"] = GridJson(powers);
  const Horizon h = ReadHorizon(config, 1000000);
  PutHorizon(resolved, h);
  config.RejectUnknown();

  struct Item {
    double multiple;
    unsigned dof;
    double power;
  };
  std::vector<Item> items;
  for (unsigned d : dofs) {
    for (double m : multiples) {
      for (double p : powers) items.push_back({m, d, p});
    }
  }
  // Validate every arrival model before spawning workers.
  for (unsigned d : dofs) {
    ArrivalSpec s = base;
    s.dof = d;
    MakeArrival(s);
  }
  struct Row {
    ehm_battery_summary summary;
    double lower;
    double upper;
  };
  std::vector<Row> rows(items.size());
  ParallelFor(items.size(), run.threads, [&](std::size_t k) {
    ArrivalSpec s = base;
    s.dof = items[k].dof;
    const auto arrival = MakeArrival(s);
    const double p = items[k].power;
    const double b = items[k].multiple * p;
    rows[k].summary = Simulate(arrival.get(), p, b, h,
                               DeriveSeed(seed, kTxProbStream, k), 1, {});
    Check(ehm_tx_prob_bounds_finite(arrival.get(), p, b, &rows[k].lower,
                                    &rows[k].upper),
          "transmission probability bounds");
  });

  std::ostringstream out;
  out << Header("txprob", resolved);
  out << "B_over_P,d,P,rho_hat,rho_stderr,rho_infinite,bound_lower,"
         "bound_upper\n";
  for (std::size_t k = 0; k < items.size(); ++k) {
    double rho_inf = 0.0;
    Check(ehm_tx_prob_infinite(base.rate, items[k].power, &rho_inf),
          "transmission probability");
    out << Num(items[k].multiple) << ','
        << (base.family == "chi2" ? std::to_string(items[k].dof) : "")
        << ',' << Num(items[k].power) << ','
        << Num(rows[k].summary.rho_hat) << ','
        << Num(rows[k].summary.rho_stderr) << ',' << Num(rho_inf) << ','
        << Num(rows[k].lower) << ',' << Num(rows[k].upper) << '\n';
  }
  return out.str();
}

std::string TailBound(ConfigReader& config, const RunOptions& run) {
  ordered_json resolved;
  const std::uint64_t seed = ResolveSeed(config, run);
  resolved["seed"] = seed;
  ArrivalSpec spec;
  spec.family = config.String("family", "chi2");
  resolved["family"] = spec.family;
  if (spec.family == "chi2") {
    spec.dof = ReadDof(config, "dof", 4);
    resolved["dof"] = spec.dof;
  }
  spec.rate = config.PositiveNumber("rate", 2.0);
  resolved["rate"] = spec.rate;
  const double power = config.PositiveNumber("power", 4.0);
  resolved["power"] = power;
  const auto xs = config.Grid("x_grid", LinearGrid(1.0, 40.0, 40));
  resolved["x_grid"] = GridJson(xs);
  const Horizon h = ReadHorizon(config, 1000000);
  PutHorizon(resolved, h);
  config.RejectUnknown();

  const auto arrival = MakeArrival(spec);
  StatsPtr stats;
  Simulate(arrival.get(), power, HUGE_VAL, h, seed, run.threads, xs, &stats);

  std::ostringstream out;
  out << Header("tail-bound", resolved);
  out << "x,tail_hat,tail_bound,overshoot_hat,overshoot_bound\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double x = 0.0, tail = 0.0, overshoot = 0.0;
    Check(ehm_battery_stats_threshold(stats.get(), i, &x, &tail, nullptr,
                                      &overshoot),
          "tail estimate");
    double tail_bound = 0.0, overshoot_bound = 0.0;
    Check(ehm_tail_bound(arrival.get(), power, x, &tail_bound), "tail bound");
    Check(ehm_overshoot_bound(arrival.get(), power, x, &overshoot_bound),
          "overshoot bound");
    out << Num(x) << ',' << Num(tail) << ',' << Num(tail_bound) << ','
        << Num(overshoot) << ',' << Num(overshoot_bound) << '\n';
  }
  return out.str();
}

}  // namespace ehm::cli
