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

#ifndef UMAB_VERIFY_H_
#define UMAB_VERIFY_H_

// Randomized property suites behind `umab verify`.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace umab {

// sum_t min(a_t^2 / sqrt(sum_{s<t} a_s^2), a_t); the first ratio is skipped
// while the running sum is zero.
double root_sum_lhs(std::span<const double> a);
// 3.5 sqrt(sum a_t^2) + 3.5 max a_t.
double root_sum_rhs(std::span<const double> a);
// sum_t a_t / sqrt(2 sum_{s<t} a_s + 1).
double adaptive_lhs(std::span<const double> a);
// 2 sqrt(sum a_t + 1) + max a_t.
double adaptive_rhs(std::span<const double> a);

struct ScalarLemmaReport {
  int trials = 0;
  int root_sum_violations = 0;
  int adaptive_violations = 0;
  std::vector<std::string> failures;  // first few offending cases
};

// Random non-negative sequences of length 1..1000 with magnitudes spanning
// 1e-3..1e3.
ScalarLemmaReport verify_scalar_lemmas(int trials, std::uint64_t seed);

struct SuiteResult {
  std::string name;
  long long cases = 0;
  long long violations = 0;
  std::vector<std::string> failures;

  bool ok() const { return violations == 0; }
};

// Runs every suite. `trials` scales the number of random cases.
std::vector<SuiteResult> run_verification(int trials, std::uint64_t seed);

}  // namespace umab

#endif  // UMAB_VERIFY_H_
