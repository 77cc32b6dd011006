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

#ifndef EHM_TOOLS_COMMANDS_HPP_
#define EHM_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "config.hpp"

namespace ehm::cli {

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides the config seed
  unsigned threads = 0;               // 0 = hardware concurrency
};

// Each command returns the complete CSV text. Warnings go to stderr.
std::string CalibrateMu(ConfigReader& config, const RunOptions& run);
std::string SweepEnergy(ConfigReader& config, const RunOptions& run);
std::string TxProb(ConfigReader& config, const RunOptions& run);
std::string TailBound(ConfigReader& config, const RunOptions& run);

// Status 3 failures: the library rejected a computation at run time.
class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ehm::cli

#endif  // EHM_TOOLS_COMMANDS_HPP_
