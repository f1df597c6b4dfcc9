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

#ifndef UMAB_POLICY_H_
#define UMAB_POLICY_H_

// Per-round state machines for the bandit policies.
//
//   umab-nn       FTRL + log-barrier for non-negative losses, eta_1 = inf,
//                 eta_{t+1} = 2 sqrt(n / sum_s loss_s^2).
//   umab-g        FTRL + log-barrier for general losses with loss clipping and
//                 extra exploration at the fixed rate 1 / (2n^2 + sqrt(nT)).
//   umab-g-a      as umab-g with the adaptive exploration rate.
//   umab-g-noexp  as umab-g with extra exploration switched off (ablation).
//   exp3          exponential weights on losses rescaled to [0, 1]; baseline.
//
// Every decide() consumes exactly one uniform draw and samples the arm by
// inverse CDF over arm indices in increasing order.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "umab/estimation.h"
#include "umab/exploration.h"
#include "umab/rng.h"
#include "umab/simplex.h"
#include "umab/types.h"

namespace umab {

using Dist = Distribution<double>;
using VecD = Vec<double>;

enum class PolicyKind { kUmabNN, kUmabG, kUmabGA, kUmabGNoExploration, kExp3 };

std::string_view policy_name(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view name);
std::vector<PolicyKind> all_policy_kinds();

struct RoundDecision {
  Dist base_dist;
  Dist play_dist;
  Index arm;
  ExplorationOffset<double> offset;  // all zeros unless extra exploration fired
};

// Smallest k with u < sum_{j <= k} p_j, restricted to arms with positive mass.
Index sample_arm(const Dist& dist, double u);

struct NnState {
  Index n = 0;
  VecD cumulative;
  LearningRate<double> eta = LearningRate<double>::Infinite();
  double sq_sum = 0;
  long long round = 0;
};

NnState make_nn_state(Index n);
RoundDecision nn_decide(const NnState& state, CounterRng& rng);
NnState nn_update(NnState state, const RoundDecision& decision, double loss_value);

struct GState {
  Index n = 0;
  VecD cumulative;
  LearningRate<double> eta{0.25};
  double sq_sum = 0;
  ClipThreshold<double> clip;
  ExplorationRate<double> rate;
  long long horizon = 0;
  long long round = 0;
  long long clip_events = 0;
  // Bookkeeping from the most recent update, for runtime checks.
  ClipResult<double> last_clip{0.0, false};
  SparseEstimate<double> last_estimate;
};

GState make_g_state(Index n, ExplorationMode mode, long long horizon);
RoundDecision g_decide(const GState& state, CounterRng& rng);
GState g_update(GState state, const RoundDecision& decision, double loss_value);

struct Exp3State {
  Index n = 0;
  VecD cumulative;  // importance-weighted rescaled losses
  double eta = 0;
  double loss_low = 0;
  double loss_high = 1;
  long long round = 0;
};

// Losses are mapped to [0, 1] by (loss - low) / (high - low).
Exp3State make_exp3_state(Index n, long long horizon, double loss_low, double loss_high);
RoundDecision exp3_decide(const Exp3State& state, CounterRng& rng);
Exp3State exp3_update(Exp3State state, const RoundDecision& decision, double loss_value);

struct PolicyConfig {
  PolicyKind kind = PolicyKind::kUmabGA;
  Index n = 2;
  long long horizon = 1;
  // Only EXP3 reads the bounds.
  double loss_low = 0;
  double loss_high = 1;
};

// Type-erased owner of one policy state. Movable between threads, never
// shared.
class Policy {
 public:
  explicit Policy(const PolicyConfig& config);

  RoundDecision decide(CounterRng& rng) const;
  void update(const RoundDecision& decision, double loss_value);

  // Distribution the policy would play as base_dist next round.
  Dist base_distribution() const;

  PolicyKind kind() const { return kind_; }
  Index arms() const;
  long long round() const;

  // Current learning rate; +inf while UMAB-NN has seen only zero losses.
  double eta() const;
  // Current exploration rate; 0 for policies without extra exploration.
  double rho() const;

  const NnState* nn() const { return std::get_if<NnState>(&state_); }
  const GState* g() const { return std::get_if<GState>(&state_); }
  const Exp3State* exp3() const { return std::get_if<Exp3State>(&state_); }

 private:
  PolicyKind kind_;
  std::variant<NnState, GState, Exp3State> state_;
};

}  // namespace umab

#endif  // UMAB_POLICY_H_
