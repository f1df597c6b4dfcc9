// Copyright 2026 The UMAB Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UMAB_TOOLS_CLI_H_
#define UMAB_TOOLS_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "umab/environment.h"
#include "umab/policy.h"

namespace umab::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationError = 1,
  kVerificationFailure = 2,
  kIoError = 3,
};

struct EnvironmentSpec {
  std::string kind = "deceptive";  // deceptive | stochastic | uniform | csv
  std::string csv_path;
  std::string transform = "raw";
  std::vector<double> share;
  int repeat = 1;
  std::vector<double> means{1.0, 0.0};
  double noise = 0.25;
  int arms = 10;
  double low = 0.0;
  double high = 1.0;
};

struct ExperimentConfig {
  EnvironmentSpec env;
  std::vector<std::string> policies{"umab-g-a"};
  std::optional<long long> horizon;  // unset: environment default
  int trials = 500;
  std::uint64_t seed = 7;
  std::string output_dir = "results";
  bool strict = false;
  bool paired = true;
  int threads = 1;
};

// Throws UsageError naming the offending field.
void validate(const ExperimentConfig& config);
nlohmann::json config_json(const ExperimentConfig& config, const std::string& policy);

// Returns an exit code; never throws.
int cmd_run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(int trials, std::uint64_t seed, std::ostream& out, std::ostream& err);
int cmd_plot(const std::vector<std::string>& csv_paths, const std::string& output,
             bool std_band, std::ostream& out, std::ostream& err);

// Full command line entry point.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace umab::cli

#endif  // UMAB_TOOLS_CLI_H_
