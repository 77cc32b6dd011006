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

#ifndef EHM_GEOMETRY_HPP_
#define EHM_GEOMETRY_HPP_

// Poisson-field interference at a receiver at the origin, outage estimation,
// nominal-density calibration and the interference temperature
//   zeta(P) = mu_eps (1/theta - 1/P)^{2/alpha},   P >= theta.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ehm {

inline constexpr double kDefaultMeanCount = 200.0;
inline constexpr double kMinDistance = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct NetworkParams {
  double lambda0 = 0.02;  // transmitters per unit area
  double rate = 1.0;      // energy arrivals per slot
  double theta = 3.0;     // target SINR
  double alpha = 3.0;     // path-loss exponent
  double epsilon = 0.015; // outage constraint
  double mu = 0.05;       // nominal density matching epsilon
};

void Validate(const NetworkParams& params);

// Radius of the disk holding `mean_count` expected points at `density`.
double DiskRadius(double density, double mean_count);

// N ~ Poisson(mean_count) points uniform in the disk of DiskRadius centred
// at the origin. Points closer than kMinDistance to the origin are redrawn.
std::vector<Point> SamplePppDisk(double density, double mean_count,
                                 std::uint64_t seed);

// Sum of |T|^{-alpha} with unit transmit power, or std::nullopt if a point
// sits within kMinDistance of the origin (the caller should resample).
std::optional<double> InterferenceAtOrigin(std::span<const Point> points,
                                           double alpha);

struct MonteCarloOptions {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
  double mean_count = kDefaultMeanCount;
  unsigned threads = 1;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // binomial standard error
  std::uint64_t trials = 0;
};

// Pr(interference from a PPP of `density` > threshold) by explicit point
// sampling.
Estimate EstimateExceedance(double density, double threshold, double alpha,
                            const MonteCarloOptions& opts);

// Outage probability at active density `active_density` and power `power`:
// Pr(interference > 1/theta - 1/P). Exactly 1 when P <= theta. power may be
// +inf (interference-limited threshold 1/theta).
Estimate EstimateOutage(double active_density, double power, double theta,
                        double alpha, const MonteCarloOptions& opts);

// Fritsch-Carlson monotone cubic interpolant through (xs, ys), xs strictly
// increasing and ys monotone. Evaluates inside [xs.front(), xs.back()].
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;
  double lo() const { return xs_.front(); }
  double hi() const { return xs_.back(); }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::vector<double> slopes_;
};

struct CalibrationRow {
  double epsilon = 0.0;
  double mu = 0.0;
  std::uint64_t trials = 0;
  double std_error = 0.0;
};

// Rows of (epsilon, mu) sorted by mu, with run metadata. Persists as CSV
// with columns `epsilon,mu,trials,stderr` and `#`-prefixed metadata lines.
class NominalDensityTable {
 public:
  NominalDensityTable() = default;
  NominalDensityTable(std::vector<CalibrationRow> rows, double alpha,
                      double mean_count, std::uint64_t seed);

  const std::vector<CalibrationRow>& rows() const { return rows_; }
  double alpha() const { return alpha_; }
  double mean_count() const { return mean_count_; }
  std::uint64_t seed() const { return seed_; }

  // Monotone (PCHIP) interpolation of log epsilon against log mu through rows
  // with epsilon > 0; MuForEpsilon inverts that same curve. std::nullopt
  // outside the tabulated range.
  std::optional<double> MuForEpsilon(double epsilon) const;
  std::optional<double> EpsilonForMu(double mu) const;

  void WriteCsv(std::ostream& out) const;
  static NominalDensityTable ReadCsv(std::istream& in);
  void Save(const std::string& path) const;
  static NominalDensityTable Load(const std::string& path);

 private:
  std::optional<MonotoneCubic> LogCurve() const;
  std::optional<double> SingleRow(double value, bool by_mu) const;

  std::vector<CalibrationRow> rows_;
  double alpha_ = 3.0;
  double mean_count_ = kDefaultMeanCount;
  std::uint64_t seed_ = 0;
};

// epsilon(mu) = Pr(sum |T|^{-alpha} > 1) for each mu in the grid. All grid
// points share the same trials (disk sampling is scale-free), so the
// returned curve is nondecreasing in mu by construction.
NominalDensityTable CalibrateOutageCurve(std::span<const double> mu_grid,
                                         double alpha,
                                         const MonteCarloOptions& opts);

struct NominalDensityResult {
  NominalDensityTable table;        // one row per resolved target
  NominalDensityTable curve;        // the measured grid behind the inversion
  std::vector<double> unresolved;   // targets outside the measured range
};

// Inverts a measured epsilon(mu) curve at the requested targets. An empty
// mu_grid selects 61 log-spaced points on [1e-4, 0.1].
NominalDensityResult EstimateNominalDensity(
    std::span<const double> epsilon_targets, double alpha,
    const MonteCarloOptions& opts, std::span<const double> mu_grid = {});

// zeta(P). power may be +inf. Throws Error(kDomain) for P < theta.
double InterferenceTemperature(double mu, double theta, double alpha,
                               double power);

// True iff P >= theta and active_density <= zeta(P).
bool IsAdmissible(double active_density, double power, double mu,
                  double theta, double alpha);


}  // namespace ehm

#endif  // EHM_GEOMETRY_HPP_
