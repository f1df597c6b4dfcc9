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

#include "umab/persist.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "umab/errors.h"

namespace umab {

std::string format_double(double value) {
  if (value == 0) return "0";  // folds -0
  std::array<char, 64> buffer;
  const auto [end, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buffer.data(), end);
}

std::string regret_csv(const RegretCurve& curve) {
  std::string out = "t,mean_regret,std_regret\n";
  for (Index t = 0; t < curve.rounds(); ++t) {
    out += std::to_string(t + 1);
    out += ',';
    out += format_double(curve.mean[t]);
    out += ',';
    out += format_double(curve.std_dev[t]);
    out += '\n';
  }
  return out;
}

std::string config_digest(const nlohmann::json& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << hash;
  return os.str();
}

namespace {

nlohmann::json Stats(const std::vector<double>& values) {
  const double count = double(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  const double mean = sum / count;
  double sq = 0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return {{"mean", mean},
          {"std", std::sqrt(sq / count)},
          {"min", *std::min_element(values.begin(), values.end())},
          {"max", *std::max_element(values.begin(), values.end())}};
}

}  // namespace

nlohmann::json summary_json(const RegretCurve& curve, const std::vector<TrialTrace>& traces,
                            const nlohmann::json& config, std::uint64_t seed) {
  if (traces.empty()) throw UsageError("persist: no traces");
  std::vector<double> finals;
  std::vector<double> sampled;
  double clips = 0;
  AssertionCounters counters;
  for (const auto& trace : traces) {
    finals.push_back(trace.final_regret());
    sampled.push_back(trace.sampled_regret.empty() ? 0.0 : trace.sampled_regret.back());
    clips += double(trace.clip_events);
    counters += trace.counters;
  }
  nlohmann::json assertions = nlohmann::json::object();
  for (int i = 0; i < kCheckCount; ++i) {
    const Check check = static_cast<Check>(i);
    const CheckTally& tally = counters.tally(check);
    assertions[std::string(check_name(check))] = {{"evaluated", tally.evaluated},
                                                  {"failed", tally.failed}};
  }
  assertions["failures"] = counters.failures();
  return {{"config", config},
          {"config_digest", config_digest(config)},
          {"seed", seed},
          {"trials", curve.trials},
          {"rounds", curve.rounds()},
          {"final_regret", Stats(finals)},
          {"final_sampled_regret", Stats(sampled)},
          {"clip_events_mean", clips / double(traces.size())},
          {"assertions", assertions}};
}

namespace {

void WriteFile(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << bytes;
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

PersistedFiles persist(const RegretCurve& curve, const std::vector<TrialTrace>& traces,
                       const nlohmann::json& config, std::uint64_t seed,
                       const std::filesystem::path& stem) {
  if (traces.empty()) throw UsageError("persist: no traces");
  const nlohmann::json summary = summary_json(curve, traces, config, seed);
  if (stem.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(stem.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create '" + stem.parent_path().string() + "': " + ec.message());
    }
  }
  PersistedFiles files{stem, stem};
  files.csv += ".csv";
  files.json += ".json";
  WriteFile(files.csv, regret_csv(curve));
  WriteFile(files.json, summary.dump(2) + "\n");
  return files;
}

}  // namespace umab
