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

#include "ehm/ehm.h"

#include <cmath>
#include <cstring>
#include <new>
#include <sstream>
#include <string>
#include <utility>

#include "ehm/arrivals.hpp"
#include "ehm/battery.hpp"
#include "ehm/error.hpp"
#include "ehm/geometry.hpp"
#include "ehm/lambert.hpp"
#include "ehm/markov.hpp"
#include "ehm/throughput.hpp"

#ifndef EHM_VERSION_STRING
#define EHM_VERSION_STRING "0.1.0"
#endif

struct ehm_arrival {
  ehm::ArrivalModel model;
};

struct ehm_battery_stats {
  ehm::BatteryStats stats;
};

struct ehm_markov {
  ehm::MarkovBattery chain;
};

struct ehm_density_table {
  ehm::NominalDensityTable table;
};

namespace {

thread_local std::string g_last_error;

ehm_status ToStatus(ehm::ErrorCode code) {
  switch (code) {
    case ehm::ErrorCode::kInvalidArgument:
      return EHM_ERR_INVALID_ARGUMENT;
    case ehm::ErrorCode::kDomain:
      return EHM_ERR_DOMAIN;
    case ehm::ErrorCode::kPrecondition:
      return EHM_ERR_PRECONDITION;
    case ehm::ErrorCode::kNoRoot:
      return EHM_ERR_NO_ROOT;
    case ehm::ErrorCode::kAmbiguous:
      return EHM_ERR_AMBIGUOUS;
    case ehm::ErrorCode::kIo:
      return EHM_ERR_IO;
    case ehm::ErrorCode::kFormat:
      return EHM_ERR_FORMAT;
  }
  return EHM_ERR_INTERNAL;
}

ehm_status Report(ehm_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
ehm_status Guard(F&& body) {
  try {
    return body();
  } catch (const ehm::Error& e) {
    return Report(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Report(EHM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Report(EHM_ERR_INTERNAL, e.what());
  } catch (...) {
    return Report(EHM_ERR_INTERNAL, "unknown failure");
  }
}

#define EHM_REQUIRE_PTR(p)                                            \
  do {                                                                \
    if ((p) == nullptr) {                                             \
      return Report(EHM_ERR_INVALID_ARGUMENT, #p " must not be NULL"); \
    }                                                                 \
  } while (0)

ehm_status MakeArrival(ehm::ArrivalModel model, ehm_arrival** out) {
  EHM_REQUIRE_PTR(out);
  return Guard([&] {
    ehm::Validate(model);
    *out = new ehm_arrival{std::move(model)};
    return EHM_OK;
  });
}

ehm::BatteryConfig ToConfig(const ehm_battery_config& c) {
  ehm::BatteryConfig cfg;
  cfg.power = c.power;
  cfg.capacity = c.capacity;
  cfg.horizon = c.horizon;
  cfg.burn_in = c.burn_in;
  cfg.seed = c.seed;
  return cfg;
}

ehm::MonteCarloOptions ToOptions(const ehm_mc_options& o) {
  ehm::MonteCarloOptions opts;
  opts.trials = o.trials;
  opts.seed = o.seed;
  opts.mean_count = o.mean_count;
  opts.threads = o.threads;
  return opts;
}

template <class F>
ehm_status Scalar(double* out, F&& f) {
  EHM_REQUIRE_PTR(out);
  return Guard([&] {
    *out = f();
    return EHM_OK;
  });
}

}  // namespace

extern "C" {

const char* ehm_version(void) { return EHM_VERSION_STRING; }

const char* ehm_last_error(void) { return g_last_error.c_str(); }

const char* ehm_status_name(ehm_status status) {
  switch (status) {
    case EHM_OK:
      return "ok";
    case EHM_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case EHM_ERR_DOMAIN:
      return "domain error";
    case EHM_ERR_PRECONDITION:
      return "precondition failed";
    case EHM_ERR_NO_ROOT:
      return "no root";
    case EHM_ERR_AMBIGUOUS:
      return "ambiguous stationary distribution";
    case EHM_ERR_IO:
      return "i/o error";
    case EHM_ERR_FORMAT:
      return "format error";
    case EHM_ERR_NOT_APPLICABLE:
      return "not applicable";
    case EHM_ERR_RESAMPLE:
      return "resample";
    case EHM_ERR_BUFFER_TOO_SMALL:
      return "buffer too small";
    case EHM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

// ---- arrivals

ehm_status ehm_arrival_create_chi2(unsigned dof, double rate,
                                   ehm_arrival** out) {
  return MakeArrival(ehm::ScaledChiSquared{dof, rate}, out);
}

ehm_status ehm_arrival_create_exponential(double rate, ehm_arrival** out) {
  return MakeArrival(ehm::Exponential{rate}, out);
}

ehm_status ehm_arrival_create_binary(double rate, ehm_arrival** out) {
  return MakeArrival(ehm::Binary{rate}, out);
}

ehm_status ehm_arrival_create_deterministic(double rate, ehm_arrival** out) {
  return MakeArrival(ehm::Deterministic{rate}, out);
}

ehm_status ehm_arrival_create_discrete(const double* pmf, size_t n,
                                       ehm_arrival** out) {
  EHM_REQUIRE_PTR(pmf);
  return MakeArrival(ehm::DiscreteGeneric{std::vector<double>(pmf, pmf + n)},
                     out);
}

void ehm_arrival_free(ehm_arrival* arrival) { delete arrival; }

ehm_status ehm_arrival_mean(const ehm_arrival* arrival, double* out) {
  EHM_REQUIRE_PTR(arrival);
  return Scalar(out, [&] { return ehm::Mean(arrival->model); });
}

ehm_status ehm_arrival_variance(const ehm_arrival* arrival, double* out) {
  EHM_REQUIRE_PTR(arrival);
  return Scalar(out, [&] { return ehm::Variance(arrival->model); });
}

ehm_status ehm_arrival_sample(const ehm_arrival* arrival, uint64_t seed,
                              size_t n, double* out) {
  EHM_REQUIRE_PTR(arrival);
  EHM_REQUIRE_PTR(out);
  return Guard([&] {
    const auto draws = ehm::Sample(arrival->model, seed, n);
    std::copy(draws.begin(), draws.end(), out);
    return EHM_OK;
  });
}

ehm_status ehm_cgf(const ehm_arrival* arrival, double r, double beta,
                   double* out) {
  EHM_REQUIRE_PTR(arrival);
  return Scalar(out, [&] { return ehm::Cgf(arrival->model, r, beta); });
}

ehm_status ehm_cumulant_root(const ehm_arrival* arrival, double beta,
                             double* r_star, double* residual) {
  EHM_REQUIRE_PTR(arrival);
  EHM_REQUIRE_PTR(r_star);
  return Guard([&] {
    const auto root = ehm::FindCumulantRoot(arrival->model, beta);
    *r_star = root.r_star;
    if (residual != nullptr) *residual = root.residual;
    return EHM_OK;
  });
}

ehm_status ehm_lambert_w0(double x, double* out) {
  return Scalar(out, [&] { return ehm::LambertW0(x); });
}

ehm_status ehm_lambert_root_exponential(double x, double* out) {
  return Scalar(out, [&] { return ehm::LambertRootExponential(x); });
}

// ---- battery

void ehm_battery_config_init(ehm_battery_config* cfg, double power,
                             double capacity, uint64_t horizon,
                             uint64_t seed) {
  if (cfg == nullptr) return;
  cfg->power = power;
  cfg->capacity = capacity;
  cfg->horizon = horizon;
  cfg->burn_in = horizon / 10;
  cfg->seed = seed;
}

ehm_status ehm_battery_simulate(const ehm_arrival* arrival,
                                const ehm_battery_config* cfg,
                                const double* thresholds, size_t n_thresholds,
                                unsigned replications, unsigned threads,
                                ehm_battery_stats** out) {
  EHM_REQUIRE_PTR(arrival);
  EHM_REQUIRE_PTR(cfg);
  EHM_REQUIRE_PTR(out);
  if (n_thresholds > 0) EHM_REQUIRE_PTR(thresholds);
  return Guard([&] {
    const std::span<const double> xs(thresholds, n_thresholds);
    *out = new ehm_battery_stats{ehm::SimulateReplicated(
        arrival->model, ToConfig(*cfg), xs, replications, threads)};
    return EHM_OK;
  });
}

void ehm_battery_stats_free(ehm_battery_stats* stats) { delete stats; }

ehm_status ehm_battery_stats_summary(const ehm_battery_stats* stats,
                                     ehm_battery_summary* out) {
  EHM_REQUIRE_PTR(stats);
  EHM_REQUIRE_PTR(out);
  const auto& s = stats->stats;
  out->rho_hat = s.rho_hat;
  out->rho_stderr = s.rho_stderr;
  out->overflow_rate = s.overflow_rate;
  out->overflow_events = s.overflow_events;
  out->window = s.window;
  out->transmissions = s.transmissions;
  out->replications = s.replications;
  out->short_horizon = s.short_horizon ? 1 : 0;
  out->energy_harvested = s.energy_harvested;
  out->energy_transmitted = s.energy_transmitted;
  out->energy_discarded = s.energy_discarded;
  out->final_level = s.final_level;
  return EHM_OK;
}

ehm_status ehm_battery_stats_threshold(const ehm_battery_stats* stats,
                                       size_t index, double* x, double* tail,
                                       double* low_tail, double* overshoot) {
  EHM_REQUIRE_PTR(stats);
  const auto& s = stats->stats;
  if (index >= s.thresholds.size()) {
    return Report(EHM_ERR_INVALID_ARGUMENT, "threshold index out of range");
  }
  if (x) *x = s.thresholds[index];
  if (tail) *tail = s.tail_hat[index];
  if (low_tail) *low_tail = s.low_tail_hat[index];
  if (overshoot) *overshoot = s.overshoot_hat[index];
  return EHM_OK;
}

ehm_status ehm_evolve_step(double level, double arrival, double power,
                           double capacity, double* out) {
  return Scalar(out, [&] {
    ehm::Require(level >= 0.0 && level <= capacity && arrival >= 0.0,
                 ehm::ErrorCode::kInvalidArgument,
                 "need 0 <= level <= capacity and arrival >= 0");
    return ehm::EvolveStep(level, arrival, power, capacity);
  });
}

ehm_status ehm_proof_oracle_trace(const ehm_arrival* arrival,
                                  const ehm_battery_config* cfg,
                                  ehm_oracle_slot* out, size_t out_len) {
  EHM_REQUIRE_PTR(arrival);
  EHM_REQUIRE_PTR(cfg);
  EHM_REQUIRE_PTR(out);
  if (out_len < cfg->horizon + 1) {
    return Report(EHM_ERR_BUFFER_TOO_SMALL, "need horizon + 1 slots");
  }
  return Guard([&] {
    const auto trace = ehm::ProofOracleTrace(arrival->model, ToConfig(*cfg));
    for (std::size_t t = 0; t < trace.size(); ++t) {
      out[t] = {trace[t].level, trace[t].g, trace[t].g_prime};
    }
    return EHM_OK;
  });
}

ehm_status ehm_tx_prob_infinite(double rate, double power, double* out) {
  return Scalar(out, [&] { return ehm::TxProbInfinite(rate, power); });
}

ehm_status ehm_tx_prob_bounds_finite(const ehm_arrival* arrival, double power,
                                     double capacity, double* lower,
                                     double* upper) {
  EHM_REQUIRE_PTR(arrival);
  EHM_REQUIRE_PTR(lower);
  EHM_REQUIRE_PTR(upper);
  return Guard([&] {
    const auto b = ehm::TxProbBoundsFinite(arrival->model, power, capacity);
    *lower = b.lower;
    *upper = b.upper;
    return EHM_OK;
  });
}

ehm_status ehm_tail_bound(const ehm_arrival* arrival, double power, double x,
                          double* out) {
  EHM_REQUIRE_PTR(arrival);
  return Scalar(out, [&] { return ehm::TailBound(arrival->model, power, x); });
}

ehm_status ehm_overshoot_bound(const ehm_arrival* arrival, double power,
                               double x, double* out) {
  EHM_REQUIRE_PTR(arrival);
  return Scalar(out,
                [&] { return ehm::OvershootBound(arrival->model, power, x); });
}

ehm_status ehm_low_tail_bound_finite(const ehm_arrival* arrival, double power,
                                     double capacity, double x, double* out) {
  EHM_REQUIRE_PTR(arrival);
  return Scalar(out, [&] {
    return ehm::LowTailBoundFinite(arrival->model, power, capacity, x);
  });
}

// ---- Markov

ehm_status ehm_markov_build(const double* pmf, size_t n, unsigned power,
                            unsigned capacity, ehm_markov** out) {
  EHM_REQUIRE_PTR(pmf);
  EHM_REQUIRE_PTR(out);
  return Guard([&] {
    *out = new ehm_markov{
        ehm::BuildTransition(std::span<const double>(pmf, n), power, capacity)};
    return EHM_OK;
  });
}

void ehm_markov_free(ehm_markov* chain) { delete chain; }

ehm_status ehm_markov_states(const ehm_markov* chain, size_t* out) {
  EHM_REQUIRE_PTR(chain);
  EHM_REQUIRE_PTR(out);
  *out = chain->chain.states();
  return EHM_OK;
}

ehm_status ehm_markov_transition(const ehm_markov* chain, size_t from,
                                 size_t to, double* out) {
  EHM_REQUIRE_PTR(chain);
  EHM_REQUIRE_PTR(out);
  const std::size_t n = chain->chain.states();
  if (from >= n || to >= n) {
    return Report(EHM_ERR_INVALID_ARGUMENT, "state index out of range");
  }
  *out = chain->chain.at(from, to);
  return EHM_OK;
}

ehm_status ehm_markov_solve(ehm_markov* chain) {
  EHM_REQUIRE_PTR(chain);
  return Guard([&] {
    ehm::SolveStationary(chain->chain);
    return EHM_OK;
  });
}

ehm_status ehm_markov_stationary(const ehm_markov* chain, double* out,
                                 size_t out_len) {
  EHM_REQUIRE_PTR(chain);
  EHM_REQUIRE_PTR(out);
  const auto& pi = chain->chain.stationary;
  if (pi.empty()) {
    return Report(EHM_ERR_INVALID_ARGUMENT, "stationary vector not solved");
  }
  if (out_len < pi.size()) {
    return Report(EHM_ERR_BUFFER_TOO_SMALL, "need B + 1 entries");
  }
  std::copy(pi.begin(), pi.end(), out);
  return EHM_OK;
}

ehm_status ehm_markov_tx_prob(const ehm_markov* chain, double* out) {
  EHM_REQUIRE_PTR(chain);
  return Scalar(out, [&] { return ehm::TxProbMarkov(chain->chain); });
}

ehm_status ehm_bounded_arrival_rho(double z_max, double rate, double power,
                                   double capacity, double* out) {
  EHM_REQUIRE_PTR(out);
  return Guard([&] {
    const auto rho = ehm::BoundedArrivalRho(z_max, rate, power, capacity);
    if (!rho) {
      return Report(EHM_ERR_NOT_APPLICABLE,
                    "requires z_max <= P and B > 2P");
    }
    *out = *rho;
    return EHM_OK;
  });
}

// ---- geometry

void ehm_mc_options_init(ehm_mc_options* opts, uint64_t trials,
                         uint64_t seed) {
  if (opts == nullptr) return;
  opts->trials = trials;
  opts->seed = seed;
  opts->mean_count = ehm::kDefaultMeanCount;
  opts->threads = 1;
}

ehm_status ehm_disk_radius(double density, double mean_count, double* out) {
  return Scalar(out, [&] { return ehm::DiskRadius(density, mean_count); });
}

ehm_status ehm_sample_ppp_disk(double density, double mean_count,
                               uint64_t seed, double* xy, size_t xy_len,
                               size_t* count) {
  EHM_REQUIRE_PTR(count);
  return Guard([&] {
    const auto points = ehm::SamplePppDisk(density, mean_count, seed);
    *count = points.size();
    if (xy == nullptr) return EHM_OK;
    if (xy_len < 2 * points.size()) {
      return Report(EHM_ERR_BUFFER_TOO_SMALL, "need 2 * count doubles");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      xy[2 * i] = points[i].x;
      xy[2 * i + 1] = points[i].y;
    }
    return EHM_OK;
  });
}

ehm_status ehm_interference_at_origin(const double* xy, size_t n_points,
                                      double alpha, double* out) {
  EHM_REQUIRE_PTR(out);
  if (n_points > 0) EHM_REQUIRE_PTR(xy);
  return Guard([&] {
    std::vector<ehm::Point> points(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
      points[i] = {xy[2 * i], xy[2 * i + 1]};
    }
    const auto value = ehm::InterferenceAtOrigin(points, alpha);
    if (!value) return Report(EHM_ERR_RESAMPLE, "point at the receiver");
    *out = *value;
    return EHM_OK;
  });
}

ehm_status ehm_estimate_exceedance(double density, double threshold,
                                   double alpha, const ehm_mc_options* opts,
                                   double* value, double* std_error) {
  EHM_REQUIRE_PTR(opts);
  EHM_REQUIRE_PTR(value);
  return Guard([&] {
    const auto est =
        ehm::EstimateExceedance(density, threshold, alpha, ToOptions(*opts));
    *value = est.value;
    if (std_error) *std_error = est.std_error;
    return EHM_OK;
  });
}

ehm_status ehm_estimate_outage(double active_density, double power,
                               double theta, double alpha,
                               const ehm_mc_options* opts, double* value,
                               double* std_error) {
  EHM_REQUIRE_PTR(opts);
  EHM_REQUIRE_PTR(value);
  return Guard([&] {
    const auto est = ehm::EstimateOutage(active_density, power, theta, alpha,
                                         ToOptions(*opts));
    *value = est.value;
    if (std_error) *std_error = est.std_error;
    return EHM_OK;
  });
}

ehm_status ehm_calibrate_outage_curve(const double* mu_grid, size_t n_mu,
                                      double alpha,
                                      const ehm_mc_options* opts,
                                      ehm_density_table** out) {
  EHM_REQUIRE_PTR(mu_grid);
  EHM_REQUIRE_PTR(opts);
  EHM_REQUIRE_PTR(out);
  return Guard([&] {
    *out = new ehm_density_table{ehm::CalibrateOutageCurve(
        std::span<const double>(mu_grid, n_mu), alpha, ToOptions(*opts))};
    return EHM_OK;
  });
}

ehm_status ehm_estimate_nominal_density(
    const double* epsilon_targets, size_t n_targets, double alpha,
    const ehm_mc_options* opts, const double* mu_grid, size_t n_mu,
    ehm_density_table** table, ehm_density_table** curve, double* unresolved,
    size_t* n_unresolved) {
  EHM_REQUIRE_PTR(epsilon_targets);
  EHM_REQUIRE_PTR(opts);
  EHM_REQUIRE_PTR(table);
  EHM_REQUIRE_PTR(n_unresolved);
  if (n_targets > 0) EHM_REQUIRE_PTR(unresolved);
  return Guard([&] {
    const std::span<const double> grid =
        mu_grid ? std::span<const double>(mu_grid, n_mu)
                : std::span<const double>();
    auto result = ehm::EstimateNominalDensity(
        std::span<const double>(epsilon_targets, n_targets), alpha,
        ToOptions(*opts), grid);
    std::copy(result.unresolved.begin(), result.unresolved.end(), unresolved);
    *n_unresolved = result.unresolved.size();
    *table = new ehm_density_table{std::move(result.table)};
    if (curve) *curve = new ehm_density_table{std::move(result.curve)};
    return EHM_OK;
  });
}

ehm_status ehm_density_table_load(const char* path, ehm_density_table** out) {
  EHM_REQUIRE_PTR(path);
  EHM_REQUIRE_PTR(out);
  return Guard([&] {
    *out = new ehm_density_table{ehm::NominalDensityTable::Load(path)};
    return EHM_OK;
  });
}

ehm_status ehm_density_table_save(const ehm_density_table* table,
                                  const char* path) {
  EHM_REQUIRE_PTR(table);
  EHM_REQUIRE_PTR(path);
  return Guard([&] {
    table->table.Save(path);
    return EHM_OK;
  });
}

ehm_status ehm_density_table_csv(const ehm_density_table* table, char* buf,
                                 size_t buf_len, size_t* needed) {
  EHM_REQUIRE_PTR(table);
  return Guard([&] {
    std::ostringstream text;
    table->table.WriteCsv(text);
    const std::string s = text.str();
    if (needed) *needed = s.size() + 1;
    if (buf == nullptr) return EHM_OK;
    if (buf_len < s.size() + 1) {
      return Report(EHM_ERR_BUFFER_TOO_SMALL, "CSV buffer too small");
    }
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return EHM_OK;
  });
}

void ehm_density_table_free(ehm_density_table* table) { delete table; }

ehm_status ehm_density_table_rows(const ehm_density_table* table,
                                  size_t* out) {
  EHM_REQUIRE_PTR(table);
  EHM_REQUIRE_PTR(out);
  *out = table->table.rows().size();
  return EHM_OK;
}

ehm_status ehm_density_table_row(const ehm_density_table* table, size_t index,
                                 double* epsilon, double* mu,
                                 uint64_t* trials, double* std_error) {
  EHM_REQUIRE_PTR(table);
  const auto& rows = table->table.rows();
  if (index >= rows.size()) {
    return Report(EHM_ERR_INVALID_ARGUMENT, "row index out of range");
  }
  if (epsilon) *epsilon = rows[index].epsilon;
  if (mu) *mu = rows[index].mu;
  if (trials) *trials = rows[index].trials;
  if (std_error) *std_error = rows[index].std_error;
  return EHM_OK;
}

ehm_status ehm_density_table_mu_for_epsilon(const ehm_density_table* table,
                                            double epsilon, double* out) {
  EHM_REQUIRE_PTR(table);
  EHM_REQUIRE_PTR(out);
  const auto mu = table->table.MuForEpsilon(epsilon);
  if (!mu) return Report(EHM_ERR_NOT_APPLICABLE, "epsilon outside table");
  *out = *mu;
  return EHM_OK;
}

ehm_status ehm_density_table_epsilon_for_mu(const ehm_density_table* table,
                                            double mu, double* out) {
  EHM_REQUIRE_PTR(table);
  EHM_REQUIRE_PTR(out);
  const auto eps = table->table.EpsilonForMu(mu);
  if (!eps) return Report(EHM_ERR_NOT_APPLICABLE, "mu outside table");
  *out = *eps;
  return EHM_OK;
}

ehm_status ehm_interference_temperature(double mu, double theta, double alpha,
                                        double power, double* out) {
  return Scalar(out, [&] {
    return ehm::InterferenceTemperature(mu, theta, alpha, power);
  });
}

ehm_status ehm_is_admissible(double active_density, double power, double mu,
                             double theta, double alpha, int* out) {
  EHM_REQUIRE_PTR(out);
  return Guard([&] {
    *out = ehm::IsAdmissible(active_density, power, mu, theta, alpha) ? 1 : 0;
    return EHM_OK;
  });
}

// ---- throughput

const char* ehm_regime_name(ehm_regime regime) {
  return ehm::RegimeName(regime == EHM_REGIME_SPARSE_ALL_ON
                             ? ehm::Regime::kSparseAllOn
                             : ehm::Regime::kDenseRationed);
}

ehm_status ehm_throughput(double lambda0, double rho, double theta,
                          double* out) {
  return Scalar(out, [&] { return ehm::Throughput(lambda0, rho, theta); });
}

ehm_status ehm_polynomial_root(double theta, double alpha, double c,
                               double* x, double* residual) {
  EHM_REQUIRE_PTR(x);
  return Guard([&] {
    const auto root = ehm::SolvePolynomialRoot(theta, alpha, c);
    *x = root.x;
    if (residual) *residual = root.residual;
    return EHM_OK;
  });
}

ehm_status ehm_closed_form_alpha4(double theta, double lambda0, double rate,
                                  double mu, double* out) {
  return Scalar(out, [&] {
    return ehm::ClosedFormAlpha4(theta, lambda0, rate, mu);
  });
}

ehm_status ehm_optimize_throughput(double lambda0, double rate, double mu,
                                   double theta, double alpha,
                                   ehm_throughput_solution* out) {
  EHM_REQUIRE_PTR(out);
  return Guard([&] {
    const auto sol = ehm::Optimize(lambda0, rate, mu, theta, alpha);
    out->regime = sol.regime == ehm::Regime::kSparseAllOn
                      ? EHM_REGIME_SPARSE_ALL_ON
                      : EHM_REGIME_DENSE_RATIONED;
    out->power_low = sol.power_low;
    out->power_high = sol.power_high;
    out->power_star = sol.power_star;
    out->rho_star = sol.rho_star;
    out->rate_star = sol.rate_star;
    out->residual = sol.residual;
    return EHM_OK;
  });
}

ehm_status ehm_limit_high_energy(double lambda0, double mu, double theta,
                                 double alpha, double* out) {
  return Scalar(out, [&] {
    return ehm::LimitHighEnergy(lambda0, mu, theta, alpha);
  });
}

ehm_status ehm_limit_dense(double mu, double theta, double alpha,
                           double* out) {
  return Scalar(out, [&] { return ehm::LimitDense(mu, theta, alpha); });
}

}  // extern "C"
