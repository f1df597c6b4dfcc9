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

#include "cli.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "umab/errors.h"
#include "umab/harness.h"
#include "umab/persist.h"
#include "umab/plot.h"
#include "umab/verify.h"

namespace umab::cli {

namespace {

constexpr long long kDefaultHorizon = 1258;

CsvOptions MakeCsvOptions(const EnvironmentSpec& env) {
  CsvOptions options;
  options.transform = parse_transform(env.transform);
  options.share = env.share;
  options.repeat = env.repeat;
  return options;
}

// Builds the trial's sequence, truncated to the requested horizon.
EnvironmentFactory MakeFactory(const ExperimentConfig& config, long long horizon) {
  const EnvironmentSpec env = config.env;
  if (env.kind == "deceptive") {
    return [horizon](std::uint64_t) { return deceptive_sequence(horizon); };
  }
  if (env.kind == "stochastic") {
    return [env, horizon](std::uint64_t seed) {
      return stochastic_sequence(env.means, env.noise, horizon, seed);
    };
  }
  if (env.kind == "uniform") {
    return [env, horizon](std::uint64_t seed) {
      return uniform_sequence(env.arms, horizon, env.low, env.high, seed);
    };
  }
  // The file is parsed once and shared read-only across trials.
  auto seq = std::make_shared<LossSequence>(load_csv_losses(env.csv_path, MakeCsvOptions(env)));
  if (horizon > seq->rounds()) {
    throw UsageError("T=" + std::to_string(horizon) + " exceeds the " +
                     std::to_string(seq->rounds()) + " rounds in " + env.csv_path);
  }
  if (horizon < seq->rounds()) {
    seq = std::make_shared<LossSequence>(LossMatrix(seq->rows().topRows(horizon)),
                                         seq->provenance());
  }
  return [seq](std::uint64_t) { return *seq; };
}

long long ResolveHorizon(const ExperimentConfig& config) {
  if (config.horizon) return *config.horizon;
  if (config.env.kind == "csv") {
    return load_csv_losses(config.env.csv_path, MakeCsvOptions(config.env)).rounds();
  }
  return kDefaultHorizon;
}

Index ArmCount(const ExperimentConfig& config) {
  if (config.env.kind == "deceptive") return 2;
  if (config.env.kind == "stochastic") return Index(config.env.means.size());
  if (config.env.kind == "uniform") return config.env.arms;
  return -1;  // known after loading
}

// CLI11 only reads config files attached to the top-level app, so the run
// subcommand applies its file here. Flags given on the command line (or via
// environment variables) take precedence over file entries.
void ApplyConfigFile(CLI::App& run, const std::string& path) {
  for (const CLI::ConfigItem& item : CLI::ConfigINI().from_file(path)) {
    if (item.name == "config") throw UsageError("config files cannot nest");
    CLI::Option* option = run.get_option_no_throw("--" + item.name);
    if (option == nullptr) throw UsageError("unknown key '" + item.name + "'");
    if (option->count() > 0) continue;
    option->add_result(item.inputs);
    option->run_callback();
  }
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.horizon && *config.horizon < 1) throw UsageError("T must be ≥ 1");
  if (config.trials < 1) throw UsageError("trials must be >= 1");
  if (config.policies.empty()) throw UsageError("policies must not be empty");
  for (const auto& name : config.policies) {
    if (!parse_policy_kind(name)) {
      throw UsageError("policies: unknown policy '" + name +
                       "' (expected umab-nn, umab-g, umab-g-a, umab-g-noexp, exp3)");
    }
  }
  const auto& env = config.env;
  if (env.kind != "deceptive" && env.kind != "stochastic" && env.kind != "uniform" &&
      env.kind != "csv") {
    throw UsageError("env: unknown environment '" + env.kind + "'");
  }
  if (env.kind == "csv" && env.csv_path.empty()) throw UsageError("env: csv needs a path");
  if (env.kind == "deceptive" && config.horizon && *config.horizon < 150) {
    throw UsageError("T must be >= 150 for the deceptive environment");
  }
  if (env.kind == "stochastic" && env.noise < 0) throw UsageError("noise must be >= 0");
  if (env.kind == "uniform" && !(env.high >= env.low)) throw UsageError("high must be >= low");
  if (env.repeat < 1) throw UsageError("repeat must be >= 1");
  parse_transform(env.transform);
  if (config.threads < 1) throw UsageError("threads must be >= 1");
  const Index arms = ArmCount(config);
  if (arms >= 0 && arms < 2) throw UsageError("env: at least two arms are required");
}

nlohmann::json config_json(const ExperimentConfig& config, const std::string& policy) {
  const auto& env = config.env;
  nlohmann::json env_json = {{"kind", env.kind}};
  if (env.kind == "csv") {
    env_json["path"] = env.csv_path;
    env_json["transform"] = env.transform;
    env_json["share"] = env.share;
    env_json["repeat"] = env.repeat;
  } else if (env.kind == "stochastic") {
    env_json["means"] = env.means;
    env_json["noise"] = env.noise;
  } else if (env.kind == "uniform") {
    env_json["arms"] = env.arms;
    env_json["low"] = env.low;
    env_json["high"] = env.high;
  }
  return {{"env", env_json},       {"policy", policy},        {"policies", config.policies},
          {"T", config.horizon.value_or(0)},   {"trials", config.trials}, {"seed", config.seed},
          {"strict", config.strict}, {"paired", config.paired}};
}

int cmd_run(const ExperimentConfig& input, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = input;
  try {
    validate(config);
    config.horizon = ResolveHorizon(config);
    if (*config.horizon < 1) throw UsageError("T must be ≥ 1");
    const EnvironmentFactory factory = MakeFactory(config, *config.horizon);

    out << std::left << std::setw(14) << "policy" << std::right << std::setw(18)
        << "mean_final_regret" << std::setw(16) << "std" << std::setw(12) << "failures"
        << '\n';
    long long total_failures = 0;
    for (std::size_t i = 0; i < config.policies.size(); ++i) {
      const std::string& name = config.policies[i];
      BatchOptions batch;
      batch.trial.strict = config.strict;
      batch.policy_salt = config.paired ? 0 : i + 1;
      batch.threads = config.threads;
      const auto traces = run_trials(factory, *parse_policy_kind(name), config.seed,
                                     config.trials, batch);
      const RegretCurve curve = aggregate(traces);
      const auto files = persist(curve, traces, config_json(config, name), config.seed,
                                 std::filesystem::path(config.output_dir) / name);
      const nlohmann::json summary =
          summary_json(curve, traces, config_json(config, name), config.seed);
      const long long failures = summary["assertions"]["failures"].get<long long>();
      total_failures += failures;
      out << std::left << std::setw(14) << name << std::right << std::setprecision(8)
          << std::setw(18) << summary["final_regret"]["mean"].get<double>() << std::setw(16)
          << summary["final_regret"]["std"].get<double>() << std::setw(12) << failures << '\n';
      out << "  wrote " << files.csv.string() << " and " << files.json.string() << '\n';
    }
    if (total_failures > 0) {
      err << "warning: " << total_failures << " runtime check failures (see JSON summaries)\n";
    }
    return kOk;
  } catch (const AssertionFailure& e) {
    err << "assertion failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
}

int cmd_verify(int trials, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  if (trials < 0) {
    err << "error: trials must be >= 0\n";
    return kValidationError;
  }
  if (trials == 0) err << "warning: --trials 0 runs no cases; passing vacuously\n";
  std::vector<SuiteResult> suites;
  try {
    suites = run_verification(trials, seed);
  } catch (const std::exception& e) {
    err << "verification aborted: " << e.what() << '\n';
    return kVerificationFailure;
  }
  bool ok = true;
  for (const auto& suite : suites) {
    out << std::left << std::setw(16) << suite.name << " cases=" << suite.cases
        << " violations=" << suite.violations << (suite.ok() ? "  PASS" : "  FAIL") << '\n';
    for (const auto& failure : suite.failures) out << "    " << failure << '\n';
    ok = ok && suite.ok();
  }
  return ok ? kOk : kVerificationFailure;
}

int cmd_plot(const std::vector<std::string>& csv_paths, const std::string& output,
             bool std_band, std::ostream& out, std::ostream& err) {
  try {
    if (csv_paths.empty()) throw UsageError("plot needs at least one CSV file");
    std::vector<RegretSeries> series;
    for (const auto& path : csv_paths) series.push_back(read_regret_csv(path));
    PlotOptions options;
    options.std_band = std_band;
    const PlotResult plot = render_svg(std::move(series), options);
    for (const auto& warning : plot.warnings) err << "warning: " << warning << '\n';
    std::ofstream file(output, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + output + "' for writing");
    file << plot.svg;
    if (!file) throw IoError("failed writing '" + output + "'");
    out << "wrote " << output << '\n';
    return kOk;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scale-free adversarial bandit benchmarks"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string env = "deceptive";
  std::string policies = "umab-g-a";
  CLI::App* run = app.add_subcommand("run", "Run policies on an environment");
  std::string config_file;
  run->add_option("--config", config_file, "Flat key=value file mirroring the flags");
  run->add_option("--env", env, "deceptive | stochastic | uniform | csv:PATH");
  run->add_option("--transform", config.env.transform, "CSV transform: raw | diff | neg");
  run->add_option("--share", config.env.share, "Per-column multipliers for CSV losses")
      ->delimiter(',');
  run->add_option("--repeat", config.env.repeat, "Play each CSV row this many rounds");
  run->add_option("--means", config.env.means, "Stochastic arm means")->delimiter(',');
  run->add_option("--noise", config.env.noise, "Stochastic uniform noise half-width");
  run->add_option("--arms", config.env.arms, "Arms for the uniform environment");
  run->add_option("--low", config.env.low, "Uniform environment lower bound");
  run->add_option("--high", config.env.high, "Uniform environment upper bound");
  run->add_option("--policies", policies, "Comma-separated policy names");
  run->add_option("--T", config.horizon, "Horizon (default 1258; CSV: file length)");
  run->add_option("--trials", config.trials, "Trials per policy");
  run->add_option("--seed", config.seed, "Experiment seed");
  run->add_option("--out", config.output_dir, "Output directory")->envname("UMAB_OUTPUT_DIR");
  run->add_option("--threads", config.threads, "Worker threads")->envname("UMAB_THREADS");
  run->add_flag("--strict", config.strict, "Abort on the first failed runtime check");
  run->add_flag("--paired,!--unpaired", config.paired,
                "Share the sampling stream across policies within a trial");

  int verify_trials = 1000;
  std::uint64_t verify_seed = 7;
  CLI::App* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--trials", verify_trials, "Random cases per suite (scaled per suite)");
  verify->add_option("--seed", verify_seed, "Seed");

  std::vector<std::string> plot_inputs;
  std::string plot_output = "regret.svg";
  bool no_band = false;
  CLI::App* plot = app.add_subcommand("plot", "Render regret CSVs as one SVG chart");
  plot->add_option("csv", plot_inputs, "Regret CSV files")->required();
  plot->add_option("-o,--output", plot_output, "Output SVG path");
  plot->add_flag("--no-band", no_band, "Omit the +/- std band");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (run->parsed() && e.get_name() == "CallForHelp") {
      out << run->help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return e.get_name() == "FileError" ? kIoError : kValidationError;
  }

  if (run->parsed()) {
    if (!config_file.empty()) {
      try {
        ApplyConfigFile(*run, config_file);
      } catch (const CLI::FileError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
      } catch (const std::exception& e) {
        err << "error: " << config_file << ": " << e.what() << '\n';
        return kValidationError;
      }
    }
    if (env.rfind("csv:", 0) == 0) {
      config.env.kind = "csv";
      config.env.csv_path = env.substr(4);
    } else {
      config.env.kind = env;
    }
    config.policies.clear();
    std::stringstream list(policies);
    std::string item;
    while (std::getline(list, item, ',')) {
      if (!item.empty()) config.policies.push_back(item);
    }
    return cmd_run(config, out, err);
  }
  if (verify->parsed()) return cmd_verify(verify_trials, verify_seed, out, err);
  return cmd_plot(plot_inputs, plot_output, !no_band, out, err);
}

}  // namespace umab::cli
