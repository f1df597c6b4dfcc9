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

#include "umab/exploration.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

namespace umab {
namespace {

using V = Vec<double>;

Distribution<double> MakeDist(std::initializer_list<double> values) {
  V v(values.size());
  Index k = 0;
  for (double x : values) v[k++] = x;
  return Distribution<double>(v);
}

ExplorationRate<double> Rate(double value) {
  return {value, ExplorationMode::kNonAdaptive, 0.0};
}

TEST(ExplorationTest, InitialRates) {
  EXPECT_DOUBLE_EQ(initial_rate<double>(2, ExplorationMode::kAdaptive).value, 0.125);
  EXPECT_DOUBLE_EQ(initial_rate<double>(10, ExplorationMode::kNonAdaptive).value, 0.005);
  EXPECT_DOUBLE_EQ(initial_rate<double>(10, ExplorationMode::kDisabled).value, 0.0);
}

TEST(ExplorationTest, OffsetMovesMassFromLargestArm) {
  const auto p = MakeDist({0.7, 0.29, 0.01});
  const auto offset = build_offset(p, Rate(0.02));
  EXPECT_EQ(offset.star_arm, 0);
  EXPECT_DOUBLE_EQ(offset.coeffs[0], -1.0);
  EXPECT_DOUBLE_EQ(offset.coeffs[1], 0.0);
  EXPECT_DOUBLE_EQ(offset.coeffs[2], 1.0);
  const auto mixed = mix(p, Rate(0.02), offset);
  EXPECT_NEAR(mixed[0], 0.68, 1e-15);
  EXPECT_NEAR(mixed[1], 0.29, 1e-15);
  EXPECT_NEAR(mixed[2], 0.03, 1e-15);
}

TEST(ExplorationTest, SeveralStarvedArms) {
  const auto p = MakeDist({0.97, 0.01, 0.01, 0.01});
  const double rho = 0.02;
  const auto mixed = mix(p, Rate(rho), build_offset(p, Rate(rho)));
  EXPECT_NEAR(mixed[0], 0.91, 1e-15);
  for (Index k = 1; k < 4; ++k) EXPECT_NEAR(mixed[k], 0.03, 1e-15);
}

TEST(ExplorationTest, TiesPickFirstMaximizer) {
  const auto p = MakeDist({0.45, 0.45, 0.1});
  EXPECT_EQ(build_offset(p, Rate(0.0)).star_arm, 0);
}

TEST(ExplorationTest, RejectsRateAboveCap) {
  const auto p = MakeDist({0.5, 0.5});
  EXPECT_THROW(build_offset(p, Rate(0.2)), DomainError);
  EXPECT_THROW(build_offset(p, Rate(-0.01)), DomainError);
}

TEST(ExplorationTest, NonAdaptiveRate) {
  EXPECT_NEAR(update_rate_nonadaptive<double>(2, 1258).value, 1.0 / (8.0 + std::sqrt(2516.0)),
              1e-15);
  EXPECT_NEAR(update_rate_nonadaptive<double>(2, 1258).value, 0.017195, 1e-6);
  EXPECT_NEAR(update_rate_nonadaptive<double>(10, 10000).value, 0.0019371, 1e-7);
  EXPECT_THROW(update_rate_nonadaptive<double>(1, 10), DomainError);
  EXPECT_THROW(update_rate_nonadaptive<double>(2, 0), DomainError);
}

TEST(ExplorationTest, AdaptiveRateAccumulates) {
  ExplorationRate<double> rate = initial_rate<double>(2, ExplorationMode::kAdaptive);
  V coeffs(2);
  coeffs << -1.0, 1.0;
  const ExplorationOffset<double> offset{coeffs, 0};
  rate = update_rate_adaptive(rate, SparseEstimate<double>{1, 12.0, 2}, offset);
  EXPECT_DOUBLE_EQ(rate.accum, 12.0);
  EXPECT_NEAR(rate.value, 1.0 / (8.0 + 2.0 * std::sqrt(12.0)), 1e-15);
  EXPECT_NEAR(rate.value, 0.066987, 1e-6);
  rate = update_rate_adaptive(rate, SparseEstimate<double>{0, 88.0, 2}, offset);
  EXPECT_DOUBLE_EQ(rate.accum, 100.0);
  EXPECT_NEAR(rate.value, 1.0 / 28.0, 1e-15);
  EXPECT_THROW(update_rate_adaptive(Rate(0.1), SparseEstimate<double>{0, 1.0, 2}, offset),
               UsageError);
}

// For random p and every admissible rate, the mixed vector is a distribution
// whose entries are all at least rho.
TEST(ExplorationTest, MixIsValidAndFloorsAtRho) {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Index n : {2, 3, 5, 10}) {
    for (int trial = 0; trial < 10000; ++trial) {
      V p(n);
      for (Index k = 0; k < n; ++k) p[k] = std::pow(unit(gen), 4.0) + 1e-300;
      p /= p.sum();
      const Distribution<double> dist(p);
      const double rho = unit(gen) * max_exploration_rate<double>(n);
      const auto offset = build_offset(dist, Rate(rho));
      EXPECT_DOUBLE_EQ(offset.coeffs.sum(), 0.0);
      const auto mixed = mix(dist, Rate(rho), offset);
      EXPECT_NEAR(mixed.probs().sum(), 1.0, 1e-12);
      EXPECT_GE(mixed.probs().minCoeff(), rho);
    }
  }
}

}  // namespace
}  // namespace umab
