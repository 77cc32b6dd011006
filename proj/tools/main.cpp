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

// ehm: reproduces the energy-harvesting MANET experiments as CSV.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "ehm/ehm.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitMissing = 2;
constexpr int kExitRuntime = 3;

unsigned ThreadsFromEnv() {
  const char* env = std::getenv("EHM_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long n = std::strtoul(env, &end, 10);
  if (*end != '\0' || n > 4096) {
    throw ehm::cli::ConfigError("EHM_THREADS must be an integer in [0, 4096]");
  }
  return static_cast<unsigned>(n);
}

void WriteOutput(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ehm::cli::RunError("cannot write " + path);
  out << text;
  if (!out) throw ehm::cli::RunError("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-harvesting MANET experiments"};
  app.set_version_flag("--version", std::string(ehm_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;

  using Command = std::string (*)(ehm::cli::ConfigReader&,
                                  const ehm::cli::RunOptions&);
  const std::pair<const char*, Command> commands[] = {
      {"calibrate-mu", &ehm::cli::CalibrateMu},
      {"sweep-energy", &ehm::cli::SweepEnergy},
      {"txprob", &ehm::cli::TxProb},
      {"tail-bound", &ehm::cli::TailBound},
  };
  const char* descriptions[] = {
      "Estimate the nominal density mu_eps versus epsilon",
      "Maximum throughput versus energy-arrival rate",
      "Transmission probability versus transmission power",
      "Battery tail probability and its exponential bound",
  };
  Command selected = nullptr;
  std::string selected_name;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "Master seed (overrides the config)");
    sub->add_option("--out", out_path, "Output CSV path (default stdout)");
    sub->add_option("--threads", threads,
                    "Worker threads, 0 = all cores (env EHM_THREADS)");
    sub->callback([&, i] {
      selected = commands[i].second;
      selected_name = commands[i].first;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    ehm::cli::RunOptions run;
    run.seed = seed;
    run.threads = threads ? *threads : ThreadsFromEnv();
    auto config = ehm::cli::ConfigReader::FromFile(config_path);
    WriteOutput(selected(config, run), out_path);
  } catch (const ehm::cli::ConfigError& e) {
    std::cerr << "ehm " << selected_name << ": invalid config: " << e.what()
              << "\n";
    return kExitConfig;
  } catch (const ehm::cli::MissingArtifact& e) {
    std::cerr << "ehm " << selected_name << ": " << e.what() << "\n";
    return kExitMissing;
  } catch (const std::exception& e) {
    std::cerr << "ehm " << selected_name << ": " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
