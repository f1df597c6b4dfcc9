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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace umab {
namespace {

RoundDecision Played(Index arm, Index n) {
  const Dist uniform = Dist::Uniform(n);
  return {uniform, uniform, arm, {VecD::Zero(n), 0}};
}

TEST(PolicyNamesTest, RoundTrip) {
  for (PolicyKind kind : all_policy_kinds()) {
    EXPECT_EQ(parse_policy_kind(policy_name(kind)), kind);
  }
  EXPECT_FALSE(parse_policy_kind("umab").has_value());
  EXPECT_EQ(all_policy_kinds().size(), 5u);
}

TEST(SampleArmTest, InverseCdf) {
  VecD v(3);
  v << 0.2, 0.0, 0.8;
  const Dist d(v);
  EXPECT_EQ(sample_arm(d, 0.0), 0);
  EXPECT_EQ(sample_arm(d, 0.19999), 0);
  EXPECT_EQ(sample_arm(d, 0.2), 2);
  EXPECT_EQ(sample_arm(d, std::nextafter(1.0, 0.0)), 2);
}

TEST(SampleArmTest, FrequenciesMatchDistribution) {
  VecD v(4);
  v << 0.1, 0.2, 0.3, 0.4;
  const Dist d(v);
  CounterRng rng(99);
  std::vector<int> counts(4, 0);
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) ++counts[sample_arm(d, rng.uniform())];
  for (Index k = 0; k < 4; ++k) {
    const double sd = std::sqrt(d[k] * (1 - d[k]) / draws);
    EXPECT_NEAR(double(counts[k]) / draws, d[k], 5 * sd);
  }
}

TEST(UmabNnTest, StartsUniformWithInfiniteRate) {
  const NnState state = make_nn_state(4);
  EXPECT_TRUE(state.eta.is_infinite());
  CounterRng rng(1);
  const RoundDecision d = nn_decide(state, rng);
  for (Index k = 0; k < 4; ++k) EXPECT_DOUBLE_EQ(d.base_dist[k], 0.25);
}

TEST(UmabNnTest, ZeroLossesKeepInfiniteRate) {
  NnState state = make_nn_state(3);
  for (int t = 0; t < 5; ++t) state = nn_update(state, Played(t % 3, 3), 0.0);
  EXPECT_TRUE(state.eta.is_infinite());
  EXPECT_EQ(state.round, 5);
}

TEST(UmabNnTest, LearningRateFromSquaredLosses) {
  NnState state = make_nn_state(4);
  state = nn_update(state, Played(1, 4), 4.0);
  EXPECT_DOUBLE_EQ(state.sq_sum, 16.0);
  EXPECT_DOUBLE_EQ(state.eta.value(), 1.0);
  EXPECT_DOUBLE_EQ(state.cumulative[1], 16.0);
}

TEST(UmabNnTest, RejectsNegativeLoss) {
  EXPECT_THROW(nn_update(make_nn_state(2), Played(0, 2), -0.1), UsageError);
  EXPECT_THROW(nn_update(make_nn_state(2), Played(0, 2), INFINITY), UsageError);
}

TEST(UmabGTest, FirstRoundRates) {
  const GState state = make_g_state(2, ExplorationMode::kAdaptive, 100);
  EXPECT_DOUBLE_EQ(state.eta.value(), 0.25);
  EXPECT_DOUBLE_EQ(state.rate.value, 0.125);
  EXPECT_DOUBLE_EQ(state.clip.value(), -1.0);
}

TEST(UmabGTest, ClipsAndRecomputesRate) {
  GState state = make_g_state(2, ExplorationMode::kNonAdaptive, 100);
  state = g_update(state, Played(0, 2), -10.0);
  EXPECT_TRUE(state.last_clip.clip_event);
  EXPECT_DOUBLE_EQ(state.last_clip.clipped, -2.0);
  EXPECT_DOUBLE_EQ(state.clip.value(), -2.0);
  EXPECT_DOUBLE_EQ(state.sq_sum, 4.0);
  EXPECT_DOUBLE_EQ(state.cumulative[0], -4.0);
  EXPECT_EQ(state.clip_events, 1);
  EXPECT_NEAR(state.eta.value(), 0.25 * std::sqrt(2.0 / 12.0), 1e-16);
  EXPECT_NEAR(state.rate.value, 1.0 / (8.0 + std::sqrt(200.0)), 1e-16);
}

TEST(UmabGTest, DisabledModeNeverExplores) {
  GState state = make_g_state(3, ExplorationMode::kDisabled, 0);
  CounterRng rng(4);
  for (int t = 0; t < 200; ++t) {
    const RoundDecision d = g_decide(state, rng);
    EXPECT_DOUBLE_EQ(d.offset.coeffs.cwiseAbs().sum(), 0.0);
    EXPECT_EQ(d.base_dist.probs(), d.play_dist.probs());
    state = g_update(state, d, d.arm == 2 ? -1.0 : 3.0);
  }
  EXPECT_DOUBLE_EQ(state.rate.value, 0.0);
}

TEST(UmabGTest, NonAdaptiveNeedsHorizon) {
  EXPECT_THROW(make_g_state(2, ExplorationMode::kNonAdaptive, 0), UsageError);
}

TEST(Exp3Test, RateAndRescaling) {
  Exp3State state = make_exp3_state(4, 100, -2.0, 2.0);
  EXPECT_NEAR(state.eta, std::sqrt(2.0 * std::log(4.0) / 400.0), 1e-16);
  state = exp3_update(state, Played(3, 4), 1.0);
  EXPECT_DOUBLE_EQ(state.cumulative[3], 0.75 / 0.25);
  EXPECT_THROW(exp3_update(state, Played(0, 4), 2.5), UsageError);
}

TEST(Exp3Test, LowerCumulativeLossGetsMoreMass) {
  Exp3State state = make_exp3_state(3, 100, 0.0, 1.0);
  state.cumulative << 0.0, 5.0, 10.0;
  CounterRng rng(0);
  const Dist d = exp3_decide(state, rng).base_dist;
  EXPECT_GT(d[0], d[1]);
  EXPECT_GT(d[1], d[2]);
}

TEST(PolicyTest, DispatchesByKind) {
  for (PolicyKind kind : all_policy_kinds()) {
    Policy policy({kind, 3, 50, 0.0, 1.0});
    CounterRng rng(8);
    for (int t = 0; t < 50; ++t) policy.update(policy.decide(rng), 0.5);
    EXPECT_EQ(policy.round(), 50);
    EXPECT_EQ(policy.arms(), 3);
    EXPECT_GT(policy.eta(), 0.0);
    EXPECT_NEAR(policy.base_distribution().probs().sum(), 1.0, 1e-9);
    EXPECT_EQ(policy.g() != nullptr, kind != PolicyKind::kUmabNN && kind != PolicyKind::kExp3);
  }
}

// Scaling every loss by a power of two leaves the arm sequence and the
// distributions bit-identical.
TEST(PolicyTest, UmabNnIsScaleFreeUnderExactScaling) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> loss(0.0, 1.0);
  std::vector<VecD> losses(3000, VecD(6));
  for (auto& row : losses) {
    for (Index k = 0; k < 6; ++k) row[k] = loss(gen);
  }
  for (double c : {0x1.0p-20, 0x1.0p12}) {
    Policy a({PolicyKind::kUmabNN, 6, 3000});
    Policy b({PolicyKind::kUmabNN, 6, 3000});
    CounterRng ra(5), rb(5);
    for (const VecD& row : losses) {
      const RoundDecision da = a.decide(ra);
      const RoundDecision db = b.decide(rb);
      ASSERT_EQ(da.arm, db.arm);
      ASSERT_EQ(da.base_dist.probs(), db.base_dist.probs());
      a.update(da, row[da.arm]);
      b.update(db, c * row[db.arm]);
    }
  }
}

}  // namespace
}  // namespace umab
