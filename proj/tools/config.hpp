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

#ifndef EHM_TOOLS_CONFIG_HPP_
#define EHM_TOOLS_CONFIG_HPP_

// Strict JSON config access for the ehm CLI. Every key a command reads is
// recorded; leftover keys are rejected so typos do not silently fall back
// to defaults.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace ehm::cli {

// Bad or incomplete configuration; the CLI exits with status 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A prerequisite artifact is missing; the CLI exits with status 2.
class MissingArtifact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigReader {
 public:
  explicit ConfigReader(nlohmann::json root);

  static ConfigReader FromFile(const std::string& path);

  double Number(const std::string& key, double fallback);
  double PositiveNumber(const std::string& key, double fallback);
  std::uint64_t Count(const std::string& key, std::uint64_t fallback);
  std::string String(const std::string& key, const std::string& fallback);
  std::optional<std::string> OptionalString(const std::string& key);
  std::optional<std::uint64_t> OptionalSeed(const std::string& key);
  bool Has(const std::string& key) const;

  // Nonempty, strictly increasing list of positive numbers.
  std::vector<double> Grid(const std::string& key,
                           const std::vector<double>& fallback);

  // Throws ConfigError naming the first key that was never read.
  void RejectUnknown() const;

 private:
  const nlohmann::json& Fetch(const std::string& key);

  nlohmann::json root_;
  std::set<std::string> used_;
};

std::vector<double> LogGrid(double lo, double hi, int points);
std::vector<double> LinearGrid(double lo, double hi, int points);

}  // namespace ehm::cli

#endif  // EHM_TOOLS_CONFIG_HPP_
