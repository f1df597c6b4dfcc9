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

#ifndef UMAB_HARNESS_H_
#define UMAB_HARNESS_H_

// Seeded trial execution with runtime invariant checks, pseudo-regret
// bookkeeping and multi-trial aggregation.
//
// Pseudo-regret is tracked in expected-loss form: round t contributes
// <loss_t, play_dist_t>, and the comparator is the best fixed arm over the
// same prefix. The adversary is oblivious, so this is the exact conditional
// expectation of the sampled regret, which is stored alongside.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "umab/environment.h"
#include "umab/policy.h"

namespace umab {

struct BestArm {
  Index arm;
  double cumulative;
};

// Arm with the smallest total over the first `prefix` rounds (all rounds if
// prefix < 0). Lowest index wins ties.
BestArm best_fixed_arm(const LossSequence& seq, Index prefix = -1);

enum class Check : int {
  kPlayRatio,         // p_t[k_t] <= 2 p'_t[k_t] when loss <= 0
  kNextRatio,         // p_{t+1}[k_t] <= 6 p_t[k_t] when loss <= 0
  kEtaMonotone,       // eta_{t+1} <= eta_t
  kEtaStability,      // eta_t <= 3 eta_{t+1} when loss <= 0
  kTruncation,        // clipped^2 <= 4 C_t^2 <= 1 / (4 eta_t^2) when loss <= 0
  kExplorationBound,  // |<estimate, c_t>| <= linf * max(2n^2, 1/rho_t)
  kRateMonotone,      // rho_{t+1} <= rho_t
  kClipMonotone,      // C_{t+1} <= C_t <= -1
  kClipCount,         // clip events <= log2(1 + linf)
  kSqSumMonotone,     // squared-loss sum never decreases
  kRegretEnvelope,    // UMAB-NN pseudo-regret under the explicit bound
  kCount
};

inline constexpr int kCheckCount = static_cast<int>(Check::kCount);

std::string_view check_name(Check check);

struct CheckTally {
  long long evaluated = 0;
  long long failed = 0;
};

class AssertionCounters {
 public:
  // Returns `ok` so callers can branch on it.
  bool record(Check check, bool ok) {
    auto& tally = tallies_[static_cast<int>(check)];
    ++tally.evaluated;
    if (!ok) ++tally.failed;
    return ok;
  }
  const CheckTally& tally(Check check) const { return tallies_[static_cast<int>(check)]; }
  long long failures() const;
  long long evaluations() const;
  AssertionCounters& operator+=(const AssertionCounters& other);

 private:
  std::array<CheckTally, kCheckCount> tallies_{};
};

struct TrialOptions {
  // Abort on the first failed check with an AssertionFailure.
  bool strict = false;
  // Keep T x n base and play distributions in the trace.
  bool keep_distributions = false;
  // Relative slack applied to every inequality check.
  double tolerance = 1e-9;
};

struct TrialTrace {
  PolicyKind policy = PolicyKind::kUmabGA;
  std::uint64_t seed = 0;
  Index arms = 0;
  std::vector<Index> arm;
  std::vector<double> observed_loss;
  std::vector<double> expected_loss;  // <loss_t, play_dist_t>
  std::vector<unsigned char> clip_event;
  std::vector<double> eta;
  std::vector<double> rho;
  std::vector<double> regret;          // cumulative expected-form pseudo-regret
  std::vector<double> sampled_regret;  // cumulative realized-loss regret
  LossMatrix base_dist;                // empty unless keep_distributions
  LossMatrix play_dist;
  BestArm best{0, 0.0};
  long long clip_events = 0;
  AssertionCounters counters;
  std::string first_failure;

  Index rounds() const { return Index(regret.size()); }
  double final_regret() const { return regret.empty() ? 0.0 : regret.back(); }
};

// Runs one trial. The policy samples from CounterRng(seed, Stream::kPolicy).
// EXP3 bounds and horizons in `config` are taken as given.
TrialTrace run_trial(const LossSequence& seq, const PolicyConfig& config, std::uint64_t seed,
                     const TrialOptions& options = {});

// Builds the loss sequence for one trial from that trial's environment key.
using EnvironmentFactory = std::function<LossSequence(std::uint64_t env_seed)>;

struct BatchOptions {
  TrialOptions trial;
  // 0 pairs policies: every policy sees the same sampling stream in trial i.
  // Otherwise the policy stream is additionally salted with this value.
  std::uint64_t policy_salt = 0;
  int threads = 1;
};

// Trial i uses key mix_seed(experiment_seed, i). The environment is built
// from the key's environment stream, so it never depends on the policy.
// EXP3 receives the true loss range of each generated sequence; every
// policy receives T as its horizon.
std::vector<TrialTrace> run_trials(const EnvironmentFactory& environment, PolicyKind kind,
                                   std::uint64_t experiment_seed, int trials,
                                   const BatchOptions& options = {});

std::uint64_t trial_seed(std::uint64_t experiment_seed, int trial_index);
std::uint64_t environment_seed(std::uint64_t trial_key);

struct RegretCurve {
  std::vector<double> mean;
  std::vector<double> std_dev;  // population standard deviation
  int trials = 0;

  Index rounds() const { return Index(mean.size()); }
};

RegretCurve aggregate(const std::vector<TrialTrace>& traces);

// 4 sqrt(n sum_t ||l_t||_inf^2) log(nT) + 3.5 sqrt(n) linf + linf.
double nn_regret_envelope(const LossSequence& seq);

}  // namespace umab

#endif  // UMAB_HARNESS_H_
