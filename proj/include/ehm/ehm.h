/*
 * Copyright 2026 The EHM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the energy-harvesting MANET library.
 *
 * Every fallible function returns an ehm_status. ehm_last_error() returns
 * the message of the most recent failure on the calling thread.
 * Objects are opaque handles created by ehm_*_create/build/load functions
 * and released by the matching ehm_*_free, which accept NULL.
 *
 * Infinite battery capacity is passed as HUGE_VAL (INFINITY).
 */

#ifndef EHM_EHM_H_
#define EHM_EHM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EHM_BUILDING_LIBRARY)
#    define EHM_API __declspec(dllexport)
#  else
#    define EHM_API __declspec(dllimport)
#  endif
#else
#  define EHM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ehm_status {
  EHM_OK = 0,
  EHM_ERR_INVALID_ARGUMENT = 1,
  EHM_ERR_DOMAIN = 2,
  EHM_ERR_PRECONDITION = 3,
  EHM_ERR_NO_ROOT = 4,
  EHM_ERR_AMBIGUOUS = 5,
  EHM_ERR_IO = 6,
  EHM_ERR_FORMAT = 7,
  EHM_ERR_NOT_APPLICABLE = 8, /* hypothesis fails or value out of range */
  EHM_ERR_RESAMPLE = 9,       /* a point sits on the receiver */
  EHM_ERR_BUFFER_TOO_SMALL = 10,
  EHM_ERR_INTERNAL = 99
} ehm_status;

EHM_API const char* ehm_version(void);
EHM_API const char* ehm_last_error(void);
EHM_API const char* ehm_status_name(ehm_status status);

/* ---- energy arrivals ---------------------------------------------------- */

typedef struct ehm_arrival ehm_arrival;

EHM_API ehm_status ehm_arrival_create_chi2(unsigned dof, double rate,
                                           ehm_arrival** out);
EHM_API ehm_status ehm_arrival_create_exponential(double rate,
                                                  ehm_arrival** out);
EHM_API ehm_status ehm_arrival_create_binary(double rate, ehm_arrival** out);
EHM_API ehm_status ehm_arrival_create_deterministic(double rate,
                                                    ehm_arrival** out);
/* pmf[k] = Pr(Z = k), k = 0..n-1. */
EHM_API ehm_status ehm_arrival_create_discrete(const double* pmf, size_t n,
                                               ehm_arrival** out);
EHM_API void ehm_arrival_free(ehm_arrival* arrival);

EHM_API ehm_status ehm_arrival_mean(const ehm_arrival* arrival, double* out);
EHM_API ehm_status ehm_arrival_variance(const ehm_arrival* arrival,
                                        double* out);
EHM_API ehm_status ehm_arrival_sample(const ehm_arrival* arrival,
                                      uint64_t seed, size_t n, double* out);

/* ln E[exp(r (Z - beta))]. */
EHM_API ehm_status ehm_cgf(const ehm_arrival* arrival, double r, double beta,
                           double* out);
/* Nonzero root r*(beta); residual may be NULL. */
EHM_API ehm_status ehm_cumulant_root(const ehm_arrival* arrival, double beta,
                                     double* r_star, double* residual);

EHM_API ehm_status ehm_lambert_w0(double x, double* out);
EHM_API ehm_status ehm_lambert_root_exponential(double x, double* out);

/* ---- battery ------------------------------------------------------------ */

typedef struct ehm_battery_config {
  double power;
  double capacity; /* HUGE_VAL for an infinite battery */
  uint64_t horizon;
  uint64_t burn_in;
  uint64_t seed;
} ehm_battery_config;

/* Fills a config with burn_in = horizon / 10. */
EHM_API void ehm_battery_config_init(ehm_battery_config* cfg, double power,
                                     double capacity, uint64_t horizon,
                                     uint64_t seed);

typedef struct ehm_battery_summary {
  double rho_hat;
  double rho_stderr;
  double overflow_rate;
  uint64_t overflow_events;
  uint64_t window;
  uint64_t transmissions;
  unsigned replications;
  int short_horizon;
  double energy_harvested;
  double energy_transmitted;
  double energy_discarded;
  double final_level;
} ehm_battery_summary;

typedef struct ehm_battery_stats ehm_battery_stats;

EHM_API ehm_status ehm_battery_simulate(const ehm_arrival* arrival,
                                        const ehm_battery_config* cfg,
                                        const double* thresholds,
                                        size_t n_thresholds,
                                        unsigned replications,
                                        unsigned threads,
                                        ehm_battery_stats** out);
EHM_API void ehm_battery_stats_free(ehm_battery_stats* stats);
EHM_API ehm_status ehm_battery_stats_summary(const ehm_battery_stats* stats,
                                             ehm_battery_summary* out);
EHM_API ehm_status ehm_battery_stats_threshold(const ehm_battery_stats* stats,
                                               size_t index, double* x,
                                               double* tail, double* low_tail,
                                               double* overshoot);

EHM_API ehm_status ehm_evolve_step(double level, double arrival, double power,
                                   double capacity, double* out);

typedef struct ehm_oracle_slot {
  double level;
  double g;
  double g_prime;
} ehm_oracle_slot;

/* Writes cfg->horizon + 1 slots into out (out_len must be large enough). */
EHM_API ehm_status ehm_proof_oracle_trace(const ehm_arrival* arrival,
                                          const ehm_battery_config* cfg,
                                          ehm_oracle_slot* out,
                                          size_t out_len);

EHM_API ehm_status ehm_tx_prob_infinite(double rate, double power,
                                        double* out);
EHM_API ehm_status ehm_tx_prob_bounds_finite(const ehm_arrival* arrival,
                                             double power, double capacity,
                                             double* lower, double* upper);
EHM_API ehm_status ehm_tail_bound(const ehm_arrival* arrival, double power,
                                  double x, double* out);
EHM_API ehm_status ehm_overshoot_bound(const ehm_arrival* arrival,
                                       double power, double x, double* out);
EHM_API ehm_status ehm_low_tail_bound_finite(const ehm_arrival* arrival,
                                             double power, double capacity,
                                             double x, double* out);

/* ---- Markov battery ----------------------------------------------------- */

typedef struct ehm_markov ehm_markov;

EHM_API ehm_status ehm_markov_build(const double* pmf, size_t n,
                                    unsigned power, unsigned capacity,
                                    ehm_markov** out);
EHM_API void ehm_markov_free(ehm_markov* chain);
EHM_API ehm_status ehm_markov_states(const ehm_markov* chain, size_t* out);
EHM_API ehm_status ehm_markov_transition(const ehm_markov* chain, size_t from,
                                         size_t to, double* out);
EHM_API ehm_status ehm_markov_solve(ehm_markov* chain);
EHM_API ehm_status ehm_markov_stationary(const ehm_markov* chain, double* out,
                                         size_t out_len);
EHM_API ehm_status ehm_markov_tx_prob(const ehm_markov* chain, double* out);

/* EHM_ERR_NOT_APPLICABLE when z_max > P or B <= 2P. */
EHM_API ehm_status ehm_bounded_arrival_rho(double z_max, double rate,
                                           double power, double capacity,
                                           double* out);

/* ---- geometry ----------------------------------------------------------- */

typedef struct ehm_mc_options {
  uint64_t trials;
  uint64_t seed;
  double mean_count; /* expected points per disk; 200 by default */
  unsigned threads;  /* 0 = hardware concurrency */
} ehm_mc_options;

EHM_API void ehm_mc_options_init(ehm_mc_options* opts, uint64_t trials,
                                 uint64_t seed);

EHM_API ehm_status ehm_disk_radius(double density, double mean_count,
                                   double* out);
/* Interleaved x,y coordinates. Call with xy == NULL to query *count. */
EHM_API ehm_status ehm_sample_ppp_disk(double density, double mean_count,
                                       uint64_t seed, double* xy,
                                       size_t xy_len, size_t* count);
EHM_API ehm_status ehm_interference_at_origin(const double* xy,
                                              size_t n_points, double alpha,
                                              double* out);
EHM_API ehm_status ehm_estimate_exceedance(double density, double threshold,
                                           double alpha,
                                           const ehm_mc_options* opts,
                                           double* value, double* std_error);
EHM_API ehm_status ehm_estimate_outage(double active_density, double power,
                                       double theta, double alpha,
                                       const ehm_mc_options* opts,
                                       double* value, double* std_error);

typedef struct ehm_density_table ehm_density_table;

EHM_API ehm_status ehm_calibrate_outage_curve(const double* mu_grid,
                                              size_t n_mu, double alpha,
                                              const ehm_mc_options* opts,
                                              ehm_density_table** out);
/* mu_grid may be NULL for the default grid. unresolved must hold n_targets
 * entries; curve may be NULL. */
EHM_API ehm_status ehm_estimate_nominal_density(
    const double* epsilon_targets, size_t n_targets, double alpha,
    const ehm_mc_options* opts, const double* mu_grid, size_t n_mu,
    ehm_density_table** table, ehm_density_table** curve, double* unresolved,
    size_t* n_unresolved);
EHM_API ehm_status ehm_density_table_load(const char* path,
                                          ehm_density_table** out);
EHM_API ehm_status ehm_density_table_save(const ehm_density_table* table,
                                          const char* path);
/* CSV text including the trailing NUL; *needed reports the full size. */
EHM_API ehm_status ehm_density_table_csv(const ehm_density_table* table,
                                         char* buf, size_t buf_len,
                                         size_t* needed);
EHM_API void ehm_density_table_free(ehm_density_table* table);
EHM_API ehm_status ehm_density_table_rows(const ehm_density_table* table,
                                          size_t* out);
EHM_API ehm_status ehm_density_table_row(const ehm_density_table* table,
                                         size_t index, double* epsilon,
                                         double* mu, uint64_t* trials,
                                         double* std_error);
EHM_API ehm_status ehm_density_table_mu_for_epsilon(
    const ehm_density_table* table, double epsilon, double* out);
EHM_API ehm_status ehm_density_table_epsilon_for_mu(
    const ehm_density_table* table, double mu, double* out);

EHM_API ehm_status ehm_interference_temperature(double mu, double theta,
                                                double alpha, double power,
                                                double* out);
EHM_API ehm_status ehm_is_admissible(double active_density, double power,
                                     double mu, double theta, double alpha,
                                     int* out);

/* ---- throughput --------------------------------------------------------- */

typedef enum ehm_regime {
  EHM_REGIME_SPARSE_ALL_ON = 0,
  EHM_REGIME_DENSE_RATIONED = 1
} ehm_regime;

typedef struct ehm_throughput_solution {
  ehm_regime regime;
  double power_low;
  double power_high;
  double power_star;
  double rho_star;
  double rate_star;
  double residual;
} ehm_throughput_solution;

EHM_API const char* ehm_regime_name(ehm_regime regime);
EHM_API ehm_status ehm_throughput(double lambda0, double rho, double theta,
                                  double* out);
EHM_API ehm_status ehm_polynomial_root(double theta, double alpha, double c,
                                       double* x, double* residual);
EHM_API ehm_status ehm_closed_form_alpha4(double theta, double lambda0,
                                          double rate, double mu,
                                          double* out);
EHM_API ehm_status ehm_optimize_throughput(double lambda0, double rate,
                                           double mu, double theta,
                                           double alpha,
                                           ehm_throughput_solution* out);
EHM_API ehm_status ehm_limit_high_energy(double lambda0, double mu,
                                         double theta, double alpha,
                                         double* out);
EHM_API ehm_status ehm_limit_dense(double mu, double theta, double alpha,
                                   double* out);

#ifdef __cplusplus
}
#endif

#endif /* EHM_EHM_H_ */
