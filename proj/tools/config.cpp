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

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <utility>

namespace ehm::cli {

ConfigReader::ConfigReader(nlohmann::json root) : root_(std::move(root)) {
  if (!root_.is_object()) throw ConfigError("config must be a JSON object");
}

ConfigReader ConfigReader::FromFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return ConfigReader(std::move(root));
}

bool ConfigReader::Has(const std::string& key) const {
  return root_.contains(key) && !root_.at(key).is_null();
}

const nlohmann::json& ConfigReader::Fetch(const std::string& key) {
  used_.insert(key);
  return root_.at(key);
}

double ConfigReader::Number(const std::string& key, double fallback) {
  if (!Has(key)) {
    used_.insert(key);
    return fallback;
  }
  const auto& v = Fetch(key);
  if (!v.is_number()) throw ConfigError("'" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError("'" + key + "' must be finite");
  return d;
}

double ConfigReader::PositiveNumber(const std::string& key, double fallback) {
  const double d = Number(key, fallback);
  if (!(d > 0.0)) throw ConfigError("'" + key + "' must be > 0");
  return d;
}

std::uint64_t ConfigReader::Count(const std::string& key,
                                  std::uint64_t fallback) {
  if (!Has(key)) {
    used_.insert(key);
    return fallback;
  }
  const auto& v = Fetch(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_float()) {
    // Accept 1e5-style literals when they are exact integers.
    const double d = v.get<double>();
    if (d >= 0.0 && d < 1.8e19 && std::floor(d) == d) {
      return static_cast<std::uint64_t>(d);
    }
  }
  throw ConfigError("'" + key + "' must be a non-negative integer");
}

std::string ConfigReader::String(const std::string& key,
                                 const std::string& fallback) {
  auto s = OptionalString(key);
  return s ? *s : fallback;
}

std::optional<std::string> ConfigReader::OptionalString(
    const std::string& key) {
  used_.insert(key);
  if (!Has(key)) return std::nullopt;
  const auto& v = Fetch(key);
  if (!v.is_string()) throw ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::uint64_t> ConfigReader::OptionalSeed(
    const std::string& key) {
  used_.insert(key);
  if (!Has(key)) return std::nullopt;
  const auto& v = Fetch(key);
  if (!v.is_number_unsigned()) {
    throw ConfigError("'" + key + "' must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> ConfigReader::Grid(const std::string& key,
                                       const std::vector<double>& fallback) {
  std::vector<double> grid = fallback;
  if (Has(key)) {
    const auto& v = Fetch(key);
    if (!v.is_array()) throw ConfigError("'" + key + "' must be an array");
    grid.clear();
    for (const auto& item : v) {
      if (!item.is_number()) {
        throw ConfigError("'" + key + "' must contain only numbers");
      }
      grid.push_back(item.get<double>());
    }
  } else {
    used_.insert(key);
  }
  if (grid.empty()) throw ConfigError("'" + key + "' must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || !std::isfinite(grid[i])) {
      throw ConfigError("'" + key + "' values must be positive and finite");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw ConfigError("'" + key + "' must be strictly increasing");
    }
  }
  return grid;
}

void ConfigReader::RejectUnknown() const {
  for (const auto& item : root_.items()) {
    if (!used_.count(item.key())) {
      throw ConfigError("unknown config key '" + item.key() + "'");
    }
  }
}

std::vector<double> LogGrid(double lo, double hi, int points) {
  if (points == 1) return {lo};
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  std::vector<double> grid;
  for (int i = 0; i < points; ++i) {
    // Weighted form keeps decade endpoints exact.
    grid.push_back(std::pow(10.0, (a * (points - 1 - i) + b * i) / (points - 1)));
  }
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

std::vector<double> LinearGrid(double lo, double hi, int points) {
  std::vector<double> grid;
  if (points == 1) return {lo};
  for (int i = 0; i < points; ++i) {
    grid.push_back(lo + (hi - lo) * i / (points - 1));
  }
  return grid;
}

}  // namespace ehm::cli
