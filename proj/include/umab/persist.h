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

#ifndef UMAB_PERSIST_H_
#define UMAB_PERSIST_H_

// Result files.
//
//   <stem>.csv   header "t,mean_regret,std_regret", one row per round,
//                t starting at 1, numbers in shortest round-trip form.
//   <stem>.json  {"config": ..., "config_digest": "<fnv1a-64 hex>",
//                 "seed": ..., "trials": ..., "rounds": ...,
//                 "final_regret": {"mean","std","min","max"},
//                 "final_sampled_regret": {...}, "clip_events_mean": ...,
//                 "assertions": {"<check>": {"evaluated","failed"}, ...,
//                                "failures": N}}
//
// Both files are byte-identical for identical inputs.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "umab/harness.h"

namespace umab {

std::string format_double(double value);

std::string regret_csv(const RegretCurve& curve);
nlohmann::json summary_json(const RegretCurve& curve, const std::vector<TrialTrace>& traces,
                            const nlohmann::json& config, std::uint64_t seed);
std::string config_digest(const nlohmann::json& config);

struct PersistedFiles {
  std::filesystem::path csv;
  std::filesystem::path json;
};

PersistedFiles persist(const RegretCurve& curve, const std::vector<TrialTrace>& traces,
                       const nlohmann::json& config, std::uint64_t seed,
                       const std::filesystem::path& stem);

}  // namespace umab

#endif  // UMAB_PERSIST_H_
