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

#include "umab/policy.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace umab {

namespace {

constexpr struct {
  PolicyKind kind;
  std::string_view name;
} kPolicyNames[] = {
    {PolicyKind::kUmabNN, "umab-nn"},
    {PolicyKind::kUmabG, "umab-g"},
    {PolicyKind::kUmabGA, "umab-g-a"},
    {PolicyKind::kUmabGNoExploration, "umab-g-noexp"},
    {PolicyKind::kExp3, "exp3"},
};

ExplorationOffset<double> ZeroOffset(Index n) { return {VecD::Zero(n), 0}; }

void CheckArmCount(Index n) {
  if (n < 2) throw UsageError("policy needs at least two arms, got " + std::to_string(n));
}

}  // namespace

std::string_view policy_name(PolicyKind kind) {
  for (const auto& entry : kPolicyNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (const auto& entry : kPolicyNames) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

std::vector<PolicyKind> all_policy_kinds() {
  std::vector<PolicyKind> kinds;
  for (const auto& entry : kPolicyNames) kinds.push_back(entry.kind);
  return kinds;
}

Index sample_arm(const Dist& dist, double u) {
  double cdf = 0;
  Index last_positive = -1;
  for (Index k = 0; k < dist.size(); ++k) {
    if (dist[k] <= 0) continue;
    last_positive = k;
    cdf += dist[k];
    if (u < cdf) return k;
  }
  // u landed in the rounding gap above the final partial sum.
  return last_positive;
}

// -- UMAB-NN ------------------------------------------------------------------

NnState make_nn_state(Index n) {
  CheckArmCount(n);
  NnState state;
  state.n = n;
  state.cumulative = VecD::Zero(n);
  return state;
}

RoundDecision nn_decide(const NnState& state, CounterRng& rng) {
  Dist base = solve_ftrl(state.cumulative, state.eta);
  const Index arm = sample_arm(base, rng.uniform());
  return {base, base, arm, ZeroOffset(state.n)};
}

NnState nn_update(NnState state, const RoundDecision& decision, double loss_value) {
  if (!(loss_value >= 0) || !std::isfinite(loss_value)) {
    throw UsageError("umab-nn requires finite non-negative losses, got " +
                     std::to_string(loss_value));
  }
  accumulate(state.cumulative, iw_estimate(decision.arm, loss_value, decision.play_dist));
  state.sq_sum += loss_value * loss_value;
  if (state.sq_sum > 0) {
    state.eta = LearningRate<double>(2.0 * std::sqrt(double(state.n) / state.sq_sum));
  }
  ++state.round;
  return state;
}

// -- UMAB-G -------------------------------------------------------------------

GState make_g_state(Index n, ExplorationMode mode, long long horizon) {
  CheckArmCount(n);
  if (mode == ExplorationMode::kNonAdaptive && horizon < 1) {
    throw UsageError("umab-g with the non-adaptive rate needs a horizon >= 1");
  }
  GState state;
  state.n = n;
  state.cumulative = VecD::Zero(n);
  state.rate = initial_rate<double>(n, mode);
  state.horizon = horizon;
  state.last_estimate = {0, 0.0, n};
  return state;
}

RoundDecision g_decide(const GState& state, CounterRng& rng) {
  Dist base = solve_ftrl(state.cumulative, state.eta);
  ExplorationOffset<double> offset = build_offset(base, state.rate);
  Dist play = mix(base, state.rate, offset);
  const Index arm = sample_arm(play, rng.uniform());
  return {std::move(base), std::move(play), arm, std::move(offset)};
}

GState g_update(GState state, const RoundDecision& decision, double loss_value) {
  if (!std::isfinite(loss_value)) throw UsageError("umab-g requires finite losses");
  const ClipResult<double> clip = clip_loss(loss_value, state.clip);
  const SparseEstimate<double> estimate =
      iw_estimate(decision.arm, clip.clipped, decision.play_dist);
  accumulate(state.cumulative, estimate);
  state.clip = update_clip_threshold(state.clip, clip.clipped);
  state.sq_sum += clip.clipped * clip.clipped;
  const double n = double(state.n);
  const double c = state.clip.value();
  state.eta = LearningRate<double>(0.25 * std::sqrt(n / (n * c * c + state.sq_sum)));
  switch (state.rate.mode) {
    case ExplorationMode::kNonAdaptive:
      state.rate = update_rate_nonadaptive<double>(state.n, state.horizon);
      break;
    case ExplorationMode::kAdaptive:
      state.rate = update_rate_adaptive(state.rate, estimate, decision.offset);
      break;
    case ExplorationMode::kDisabled:
      break;
  }
  if (clip.clip_event) ++state.clip_events;
  state.last_clip = clip;
  state.last_estimate = estimate;
  ++state.round;
  return state;
}

// -- EXP3 ---------------------------------------------------------------------

Exp3State make_exp3_state(Index n, long long horizon, double loss_low, double loss_high) {
  CheckArmCount(n);
  if (horizon < 1) throw UsageError("exp3 needs a horizon >= 1");
  if (!(loss_high >= loss_low)) throw UsageError("exp3 loss bounds are inverted");
  Exp3State state;
  state.n = n;
  state.cumulative = VecD::Zero(n);
  state.eta = std::sqrt(2.0 * std::log(double(n)) / (double(n) * double(horizon)));
  state.loss_low = loss_low;
  state.loss_high = loss_high;
  return state;
}

RoundDecision exp3_decide(const Exp3State& state, CounterRng& rng) {
  VecD weights =
      (-state.eta * (state.cumulative.array() - state.cumulative.minCoeff())).exp().matrix();
  Dist dist(weights / weights.sum());
  const Index arm = sample_arm(dist, rng.uniform());
  return {dist, dist, arm, ZeroOffset(state.n)};
}

Exp3State exp3_update(Exp3State state, const RoundDecision& decision, double loss_value) {
  const double width = state.loss_high - state.loss_low;
  const double slack = 1e-12 * std::max(1.0, std::abs(width));
  if (!(loss_value >= state.loss_low - slack && loss_value <= state.loss_high + slack)) {
    throw UsageError("exp3 loss " + std::to_string(loss_value) + " outside declared bound [" +
                     std::to_string(state.loss_low) + ", " + std::to_string(state.loss_high) +
                     "]");
  }
  const double scaled =
      width > 0 ? std::clamp((loss_value - state.loss_low) / width, 0.0, 1.0) : 0.0;
  accumulate(state.cumulative, iw_estimate(decision.arm, scaled, decision.play_dist));
  ++state.round;
  return state;
}

// -- Policy -------------------------------------------------------------------

namespace {

std::variant<NnState, GState, Exp3State> MakeState(const PolicyConfig& config) {
  switch (config.kind) {
    case PolicyKind::kUmabNN:
      return make_nn_state(config.n);
    case PolicyKind::kUmabG:
      return make_g_state(config.n, ExplorationMode::kNonAdaptive, config.horizon);
    case PolicyKind::kUmabGA:
      return make_g_state(config.n, ExplorationMode::kAdaptive, config.horizon);
    case PolicyKind::kUmabGNoExploration:
      return make_g_state(config.n, ExplorationMode::kDisabled, config.horizon);
    case PolicyKind::kExp3:
      return make_exp3_state(config.n, config.horizon, config.loss_low, config.loss_high);
  }
  throw UsageError("unknown policy kind");
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Policy::Policy(const PolicyConfig& config) : kind_(config.kind), state_(MakeState(config)) {}

RoundDecision Policy::decide(CounterRng& rng) const {
  return std::visit(Overloaded{
                        [&](const NnState& s) { return nn_decide(s, rng); },
                        [&](const GState& s) { return g_decide(s, rng); },
                        [&](const Exp3State& s) { return exp3_decide(s, rng); },
                    },
                    state_);
}

void Policy::update(const RoundDecision& decision, double loss_value) {
  std::visit(Overloaded{
                 [&](NnState& s) { s = nn_update(std::move(s), decision, loss_value); },
                 [&](GState& s) { s = g_update(std::move(s), decision, loss_value); },
                 [&](Exp3State& s) { s = exp3_update(std::move(s), decision, loss_value); },
             },
             state_);
}

Dist Policy::base_distribution() const {
  return std::visit(Overloaded{
                        [](const NnState& s) { return solve_ftrl(s.cumulative, s.eta); },
                        [](const GState& s) { return solve_ftrl(s.cumulative, s.eta); },
                        [](const Exp3State& s) {
                          CounterRng unused(0);
                          return exp3_decide(s, unused).base_dist;
                        },
                    },
                    state_);
}

Index Policy::arms() const {
  return std::visit([](const auto& s) { return s.n; }, state_);
}

long long Policy::round() const {
  return std::visit([](const auto& s) { return s.round; }, state_);
}

double Policy::eta() const {
  return std::visit(Overloaded{
                        [](const NnState& s) { return s.eta.value(); },
                        [](const GState& s) { return s.eta.value(); },
                        [](const Exp3State& s) { return s.eta; },
                    },
                    state_);
}

double Policy::rho() const {
  if (const GState* s = g()) return s->rate.value;
  return 0.0;
}

}  // namespace umab
