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

#include "umab/verify.h"

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

namespace umab {
namespace {

TEST(ScalarLemmaTest, ConstantSequence) {
  const std::vector<double> ones(100, 1.0);
  double root_sum = 1.0;
  for (int j = 1; j < 100; ++j) root_sum += 1.0 / std::sqrt(double(j));
  double adaptive = 0.0;
  for (int j = 0; j < 100; ++j) adaptive += 1.0 / std::sqrt(2.0 * j + 1.0);
  EXPECT_NEAR(root_sum_lhs(ones), root_sum, 1e-12);
  EXPECT_NEAR(root_sum_rhs(ones), 38.5, 1e-12);
  EXPECT_NEAR(adaptive_lhs(ones), adaptive, 1e-12);
  EXPECT_NEAR(adaptive_rhs(ones), 2.0 * std::sqrt(101.0) + 1.0, 1e-12);
  EXPECT_LE(root_sum_lhs(ones), root_sum_rhs(ones));
  EXPECT_LE(adaptive_lhs(ones), adaptive_rhs(ones));
}

TEST(ScalarLemmaTest, SingleAndZeroSequences) {
  const std::vector<double> five{5.0};
  EXPECT_DOUBLE_EQ(root_sum_lhs(five), 5.0);
  EXPECT_DOUBLE_EQ(root_sum_rhs(five), 35.0);
  EXPECT_DOUBLE_EQ(adaptive_lhs(five), 5.0);
  EXPECT_DOUBLE_EQ(adaptive_rhs(five), 2.0 * std::sqrt(6.0) + 5.0);
  const std::vector<double> zeros(10, 0.0);
  EXPECT_DOUBLE_EQ(root_sum_lhs(zeros), 0.0);
  EXPECT_DOUBLE_EQ(root_sum_rhs(zeros), 0.0);
  EXPECT_DOUBLE_EQ(adaptive_rhs(zeros), 2.0);
}

TEST(ScalarLemmaTest, RandomSequencesHold) {
  const ScalarLemmaReport report = verify_scalar_lemmas(300, 12);
  EXPECT_EQ(report.trials, 300);
  EXPECT_EQ(report.root_sum_violations, 0);
  EXPECT_EQ(report.adaptive_violations, 0);
}

TEST(RunVerificationTest, AllSuitesPass) {
  const auto suites = run_verification(200, 3);
  ASSERT_EQ(suites.size(), 6u);
  for (const auto& suite : suites) {
    EXPECT_TRUE(suite.ok()) << suite.name << ": "
                            << (suite.failures.empty() ? "" : suite.failures.front());
    EXPECT_GT(suite.cases, 0) << suite.name;
  }
}

}  // namespace
}  // namespace umab
