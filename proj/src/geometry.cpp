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

#include "ehm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "ehm/error.hpp"
#include "ehm/format.hpp"
#include "ehm/parallel.hpp"

namespace ehm {
namespace {

constexpr std::uint64_t kOutageStream = 0x0a7a6eULL;
constexpr std::uint64_t kCalibrationStream = 0xca11b7aULL;

double BinomialStdError(double p, std::uint64_t trials) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

void RequireOptions(const MonteCarloOptions& opts) {
  Require(opts.trials >= 1, ErrorCode::kInvalidArgument, "trials must be >= 1");
  Require(opts.mean_count > 0.0, ErrorCode::kInvalidArgument,
          "mean_count must be > 0");
}

}  // namespace

void Validate(const NetworkParams& p) {
  Require(p.lambda0 > 0.0, ErrorCode::kInvalidArgument, "lambda0 must be > 0");
  Require(p.rate >= 0.0, ErrorCode::kInvalidArgument, "rate must be >= 0");
  Require(p.theta > 0.0, ErrorCode::kInvalidArgument, "theta must be > 0");
  Require(p.alpha > 2.0, ErrorCode::kInvalidArgument, "alpha must be > 2");
  Require(p.epsilon > 0.0 && p.epsilon < 1.0, ErrorCode::kInvalidArgument,
          "epsilon must lie in (0, 1)");
  Require(p.mu > 0.0, ErrorCode::kInvalidArgument, "mu must be > 0");
}

double DiskRadius(double density, double mean_count) {
  Require(density > 0.0 && mean_count > 0.0, ErrorCode::kInvalidArgument,
          "density and mean_count must be > 0");
  return std::sqrt(mean_count / (std::numbers::pi * density));
}

std::vector<Point> SamplePppDisk(double density, double mean_count,
                                 std::uint64_t seed) {
  const double radius = DiskRadius(density, mean_count);
  std::mt19937_64 engine(seed);
  std::poisson_distribution<long> count(mean_count);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long n = count(engine);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    double dist = 0.0;
    do {
      dist = radius * std::sqrt(unit(engine));
    } while (dist < kMinDistance);
    const double angle = 2.0 * std::numbers::pi * unit(engine);
    points.push_back({dist * std::cos(angle), dist * std::sin(angle)});
  }
  return points;
}

std::optional<double> InterferenceAtOrigin(std::span<const Point> points,
                                           double alpha) {
  double sum = 0.0;
  for (const Point& p : points) {
    const double dist = std::hypot(p.x, p.y);
    if (dist < kMinDistance) return std::nullopt;
    sum += std::pow(dist, -alpha);
  }
  return sum;
}

Estimate EstimateExceedance(double density, double threshold, double alpha,
                            const MonteCarloOptions& opts) {
  Require(density > 0.0, ErrorCode::kInvalidArgument, "density must be > 0");
  RequireOptions(opts);
  std::vector<char> hit(opts.trials, 0);
  ParallelFor(opts.trials, opts.threads, [&](std::size_t i) {
    std::uint64_t seed = DeriveSeed(opts.seed, kOutageStream, i);
    for (;;) {
      const auto points = SamplePppDisk(density, opts.mean_count, seed);
      const auto interference = InterferenceAtOrigin(points, alpha);
      if (interference) {
        hit[i] = *interference > threshold ? 1 : 0;
        return;
      }
      seed = SplitMix64(seed);
    }
  });
  const auto hits = std::count(hit.begin(), hit.end(), 1);
  Estimate est;
  est.trials = opts.trials;
  est.value = static_cast<double>(hits) / static_cast<double>(opts.trials);
  est.std_error = BinomialStdError(est.value, opts.trials);
  return est;
}

Estimate EstimateOutage(double active_density, double power, double theta,
                        double alpha, const MonteCarloOptions& opts) {
  Require(active_density > 0.0, ErrorCode::kInvalidArgument,
          "active density must be > 0");
  Require(theta > 0.0 && alpha > 2.0, ErrorCode::kInvalidArgument,
          "need theta > 0 and alpha > 2");
  if (power <= theta) return {1.0, 0.0, opts.trials};
  const double threshold = 1.0 / theta - 1.0 / power;
  return EstimateExceedance(active_density, threshold, alpha, opts);
}

NominalDensityTable::NominalDensityTable(std::vector<CalibrationRow> rows,
                                         double alpha, double mean_count,
                                         std::uint64_t seed)
    : rows_(std::move(rows)),
      alpha_(alpha),
      mean_count_(mean_count),
      seed_(seed) {
  std::stable_sort(rows_.begin(), rows_.end(),
                   [](const auto& a, const auto& b) { return a.mu < b.mu; });
}

std::optional<MonotoneCubic> NominalDensityTable::LogCurve() const {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& row : rows_) {
    if (!(row.epsilon > 0.0) || !(row.mu > 0.0)) continue;
    const double x = std::log(row.mu);
    if (!xs.empty() && x <= xs.back()) continue;
    xs.push_back(x);
    ys.push_back(std::log(row.epsilon));
  }
  if (xs.size() < 2) return std::nullopt;
  return MonotoneCubic(std::move(xs), std::move(ys));
}

std::optional<double> NominalDensityTable::EpsilonForMu(double mu) const {
  if (!(mu > 0.0)) return std::nullopt;
  const auto curve = LogCurve();
  if (!curve) return SingleRow(mu, true);
  const double x = std::log(mu);
  if (x < curve->lo() || x > curve->hi()) return std::nullopt;
  return std::exp((*curve)(x));
}

// Inverts the same interpolant EpsilonForMu evaluates, so the two are
// mutually consistent. On flat stretches the smallest mu is returned.
std::optional<double> NominalDensityTable::MuForEpsilon(double epsilon) const {
  if (!(epsilon > 0.0)) return std::nullopt;
  const auto curve = LogCurve();
  if (!curve) return SingleRow(epsilon, false);
  const double y = std::log(epsilon);
  double lo = curve->lo();
  double hi = curve->hi();
  if (y < (*curve)(lo) || y > (*curve)(hi)) return std::nullopt;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((*curve)(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::exp((*curve)(lo) >= y ? lo : hi);
}

std::optional<double> NominalDensityTable::SingleRow(double value,
                                                     bool by_mu) const {
  for (const auto& row : rows_) {
    if (!(row.epsilon > 0.0) || !(row.mu > 0.0)) continue;
    if (by_mu && row.mu == value) return row.epsilon;
    if (!by_mu && row.epsilon == value) return row.mu;
  }
  return std::nullopt;
}

void NominalDensityTable::WriteCsv(std::ostream& out) const {
  out << "# alpha=" << FormatDouble(alpha_) << "\n";
  out << "# mean_count=" << FormatDouble(mean_count_) << "\n";
  out << "# seed=" << seed_ << "\n";
  out << "epsilon,mu,trials,stderr\n";
  for (const auto& row : rows_) {
    out << FormatDouble(row.epsilon) << ',' << FormatDouble(row.mu) << ','
        << row.trials << ',' << FormatDouble(row.std_error) << '\n';
  }
}

NominalDensityTable NominalDensityTable::ReadCsv(std::istream& in) {
  std::vector<CalibrationRow> rows;
  double alpha = 3.0;
  double mean_count = kDefaultMeanCount;
  std::uint64_t seed = 0;
  bool header_seen = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream tokens(line.substr(1));
      std::string tok;
      while (tokens >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq);
        const std::string value = tok.substr(eq + 1);
        try {
          if (key == "alpha") alpha = std::stod(value);
          if (key == "mean_count") mean_count = std::stod(value);
          if (key == "seed") seed = std::stoull(value);
        } catch (const std::exception&) {
          Fail(ErrorCode::kFormat,
               "bad metadata on line " + std::to_string(line_no));
        }
      }
      continue;
    }
    if (!header_seen) {
      std::string compact;
      for (char c : line) {
        if (c != ' ') compact.push_back(c);
      }
      Require(compact == "epsilon,mu,trials,stderr", ErrorCode::kFormat,
              "expected header epsilon,mu,trials,stderr");
      header_seen = true;
      continue;
    }
    std::istringstream fields(line);
    std::string cell[4];
    for (auto& c : cell) {
      Require(static_cast<bool>(std::getline(fields, c, ',')),
              ErrorCode::kFormat,
              "expected 4 columns on line " + std::to_string(line_no));
    }
    try {
      rows.push_back({std::stod(cell[0]), std::stod(cell[1]),
                      std::stoull(cell[2]), std::stod(cell[3])});
    } catch (const std::exception&) {
      Fail(ErrorCode::kFormat, "bad number on line " + std::to_string(line_no));
    }
  }
  Require(header_seen, ErrorCode::kFormat, "calibration table has no header");
  NominalDensityTable table(std::move(rows), alpha, mean_count, seed);
  for (std::size_t i = 1; i < table.rows_.size(); ++i) {
    Require(table.rows_[i].epsilon >= table.rows_[i - 1].epsilon,
            ErrorCode::kFormat, "epsilon must be nondecreasing in mu");
  }
  return table;
}

void NominalDensityTable::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  Require(static_cast<bool>(out), ErrorCode::kIo, "cannot write " + path);
  WriteCsv(out);
  Require(static_cast<bool>(out), ErrorCode::kIo, "write failed: " + path);
}

NominalDensityTable NominalDensityTable::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(static_cast<bool>(in), ErrorCode::kIo, "cannot read " + path);
  return ReadCsv(in);
}

NominalDensityTable CalibrateOutageCurve(std::span<const double> mu_grid,
                                         double alpha,
                                         const MonteCarloOptions& opts) {
  RequireOptions(opts);
  Require(alpha > 2.0, ErrorCode::kInvalidArgument, "alpha must be > 2");
  Require(!mu_grid.empty(), ErrorCode::kInvalidArgument, "mu grid is empty");
  double mu_max = 0.0;
  for (double mu : mu_grid) {
    Require(mu > 0.0, ErrorCode::kInvalidArgument, "mu values must be > 0");
    mu_max = std::max(mu_max, mu);
  }
  // With D the disk radius and U_i uniform, |T_i| = D sqrt(U_i), so the
  // interference is D^{-alpha} * sum U_i^{-alpha/2}. One scale-free sum per
  // trial serves every mu.
  const double min_radius = DiskRadius(mu_max, opts.mean_count);
  const double u_floor = (kMinDistance / min_radius) * (kMinDistance / min_radius);
  std::vector<double> sums(opts.trials);
  ParallelFor(opts.trials, opts.threads, [&](std::size_t i) {
    std::mt19937_64 engine(DeriveSeed(opts.seed, kCalibrationStream, i));
    std::poisson_distribution<long> count(opts.mean_count);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const long n = count(engine);
    double sum = 0.0;
    for (long k = 0; k < n; ++k) {
      double u = 0.0;
      do {
        u = unit(engine);
      } while (u < u_floor);
      sum += std::pow(u, -0.5 * alpha);
    }
    sums[i] = sum;
  });
  std::sort(sums.begin(), sums.end());

  std::vector<CalibrationRow> rows;
  rows.reserve(mu_grid.size());
  for (double mu : mu_grid) {
    const double radius = DiskRadius(mu, opts.mean_count);
    // interference > 1  <=>  sum > radius^alpha
    const double cut = std::pow(radius, alpha);
    const auto above = sums.end() - std::upper_bound(sums.begin(), sums.end(), cut);
    const double eps = static_cast<double>(above) / static_cast<double>(opts.trials);
    rows.push_back({eps, mu, opts.trials, BinomialStdError(eps, opts.trials)});
  }
  return NominalDensityTable(std::move(rows), alpha, opts.mean_count, opts.seed);
}

NominalDensityResult EstimateNominalDensity(
    std::span<const double> epsilon_targets, double alpha,
    const MonteCarloOptions& opts, std::span<const double> mu_grid) {
  std::vector<double> grid(mu_grid.begin(), mu_grid.end());
  if (grid.empty()) {
    constexpr int kPoints = 61;
    for (int i = 0; i < kPoints; ++i) {
      grid.push_back(1e-4 * std::pow(1e3, static_cast<double>(i) / (kPoints - 1)));
    }
  }
  NominalDensityResult result;
  result.curve = CalibrateOutageCurve(grid, alpha, opts);
  std::vector<CalibrationRow> rows;
  for (double eps : epsilon_targets) {
    Require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument,
            "epsilon targets must lie in (0, 1)");
    const auto mu = result.curve.MuForEpsilon(eps);
    if (!mu) {
      result.unresolved.push_back(eps);
      continue;
    }
    rows.push_back({eps, *mu, opts.trials, BinomialStdError(eps, opts.trials)});
  }
  result.table = NominalDensityTable(std::move(rows), alpha, opts.mean_count,
                                     opts.seed);
  return result;
}

double InterferenceTemperature(double mu, double theta, double alpha,
                               double power) {
  Require(mu > 0.0 && theta > 0.0 && alpha > 2.0, ErrorCode::kInvalidArgument,
          "need mu > 0, theta > 0, alpha > 2");
  if (power < theta) {
    Fail(ErrorCode::kDomain,
         "interference temperature undefined for power below theta");
  }
  const double margin = std::isinf(power) ? 1.0 / theta : 1.0 / theta - 1.0 / power;
  return mu * std::pow(std::max(margin, 0.0), 2.0 / alpha);
}

bool IsAdmissible(double active_density, double power, double mu,
                  double theta, double alpha) {
  Require(active_density >= 0.0, ErrorCode::kInvalidArgument,
          "active density must be >= 0");
  if (power < theta) return false;
  return active_density <= InterferenceTemperature(mu, theta, alpha, power);
}

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  Require(n >= 2 && ys_.size() == n, ErrorCode::kInvalidArgument,
          "monotone cubic needs >= 2 matching points");
  std::vector<double> h(n - 1);
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    Require(h[i] > 0.0, ErrorCode::kInvalidArgument,
            "monotone cubic abscissae must increase strictly");
    delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }
  slopes_.assign(n, 0.0);
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
    return;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  const auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0)) return 3.0 * d0;
    return s;
  };
  slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t n = xs_.size();
  std::size_t i = static_cast<std::size_t>(
      std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
  i = std::clamp<std::size_t>(i, 1, n - 1) - 1;
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * ys_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
         (-2 * t3 + 3 * t2) * ys_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
}

}  // namespace ehm
