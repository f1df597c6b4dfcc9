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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "umab/environment.h"
#include "umab/estimation.h"
#include "umab/exploration.h"
#include "umab/harness.h"
#include "umab/rng.h"
#include "umab/simplex.h"

namespace umab {

namespace {

constexpr std::size_t kMaxReportedFailures = 10;

void Fail(SuiteResult& suite, const std::string& detail) {
  ++suite.violations;
  if (suite.failures.size() < kMaxReportedFailures) suite.failures.push_back(detail);
}

double LogUniform(CounterRng& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, lo_exp + (hi_exp - lo_exp) * rng.uniform());
}

std::vector<double> RandomSequence(CounterRng& rng) {
  const std::size_t length = 1 + std::size_t(rng.uniform() * 1000.0);
  std::vector<double> a(length);
  const int pattern = int(rng.uniform() * 4.0);
  const double scale = LogUniform(rng, -3, 3);
  for (std::size_t t = 0; t < length; ++t) {
    switch (pattern) {
      case 0:  // independent magnitudes across the full range
        a[t] = rng.uniform() < 0.1 ? 0.0 : LogUniform(rng, -3, 3);
        break;
      case 1:  // constant
        a[t] = scale;
        break;
      case 2:  // geometric growth, capped at 1e3
        a[t] = std::min(1e3, 1e-3 * std::pow(1.05, double(t)));
        break;
      default:  // small background with rare spikes
        a[t] = rng.uniform() < 0.02 ? 1e3 : scale * 1e-3 * rng.uniform();
        break;
    }
  }
  return a;
}

std::string Describe(const std::vector<double>& a) {
  std::ostringstream os;
  os.precision(6);
  os << "len=" << a.size() << " a=[";
  for (std::size_t i = 0; i < std::min<std::size_t>(a.size(), 5); ++i) os << (i ? "," : "") << a[i];
  if (a.size() > 5) os << ",...";
  os << "]";
  return os.str();
}

bool Holds(double lhs, double rhs) { return lhs <= rhs * (1 + 1e-12) + 1e-12; }

VecD RandomDistribution(CounterRng& rng, Index n) {
  VecD p(n);
  for (Index k = 0; k < n; ++k) p[k] = LogUniform(rng, -6, 0);
  return p / p.sum();
}

SuiteResult SolverSuite(int cases, std::uint64_t seed) {
  SuiteResult suite{"solver", 0, 0, {}};
  CounterRng rng(seed);
  for (int c = 0; c < cases; ++c) {
    const Index n = 2 + Index(rng.uniform() * 9.0);
    VecD cumulative(n);
    for (Index k = 0; k < n; ++k) cumulative[k] = -100.0 + 200.0 * rng.uniform();
    const double eta = LogUniform(rng, -6, 3);
    ++suite.cases;
    try {
      const auto solution = solve_ftrl_detailed(cumulative, LearningRate<double>(eta));
      const VecD shifted = shift_invariance_normalize(cumulative);
      double worst = 0;
      for (Index k = 0; k < n; ++k) {
        worst = std::max(worst, std::abs(solution.dist[k] * (eta * shifted[k] +
                                                               solution.multiplier) - 1.0));
      }
      const double alpha = -1e3 + 2e3 * rng.uniform();
      const Dist shifted_solution =
          solve_ftrl(VecD((cumulative.array() + alpha).matrix()), LearningRate<double>(eta));
      const double scale = LogUniform(rng, -3, 3);
      const Dist scaled_solution =
          solve_ftrl(VecD(scale * cumulative), LearningRate<double>(eta / scale));
      const double shift_gap = (shifted_solution.probs() - solution.dist.probs()).cwiseAbs().maxCoeff();
      const double scale_gap = (scaled_solution.probs() - solution.dist.probs()).cwiseAbs().maxCoeff();
      if (worst > 1e-8 || shift_gap > 1e-9 || scale_gap > 1e-9) {
        std::ostringstream os;
        os << "n=" << n << " eta=" << eta << " stationarity=" << worst
           << " shift_gap=" << shift_gap << " scale_gap=" << scale_gap;
        Fail(suite, os.str());
      }
    } catch (const std::exception& e) {
      Fail(suite, e.what());
    }
  }
  return suite;
}

SuiteResult UnbiasednessSuite(int cases, std::uint64_t seed) {
  SuiteResult suite{"unbiasedness", 0, 0, {}};
  CounterRng rng(seed);
  for (int c = 0; c < cases; ++c) {
    const Index n = 2 + Index(rng.uniform() * 9.0);
    const Dist p(RandomDistribution(rng, n));
    VecD loss(n);
    for (Index k = 0; k < n; ++k) loss[k] = (rng.uniform() < 0.5 ? -1 : 1) * LogUniform(rng, -3, 3);
    VecD expectation = VecD::Zero(n);
    for (Index k = 0; k < n; ++k) expectation += p[k] * iw_estimate(k, loss[k], p).densify();
    ++suite.cases;
    for (Index k = 0; k < n; ++k) {
      if (std::abs(expectation[k] - loss[k]) > 1e-12 * std::abs(loss[k])) {
        Fail(suite, "n=" + std::to_string(n) + " arm=" + std::to_string(k));
        break;
      }
    }
  }
  return suite;
}

SuiteResult ExplorationSuite(int cases, std::uint64_t seed) {
  SuiteResult suite{"exploration", 0, 0, {}};
  CounterRng rng(seed);
  constexpr Index kArms[] = {2, 3, 5, 10};
  for (int c = 0; c < cases; ++c) {
    const Index n = kArms[c % 4];
    const Dist p(RandomDistribution(rng, n));
    ExplorationRate<double> rate{max_exploration_rate<double>(n) * rng.uniform(),
                                 ExplorationMode::kAdaptive, 0.0};
    ++suite.cases;
    try {
      const auto offset = build_offset(p, rate);
      const Dist mixed = mix(p, rate, offset);
      bool ok = offset.coeffs.sum() == 0.0 && mixed.probs().minCoeff() >= rate.value;
      for (Index k = 0; k < n; ++k) {
        if (p[k] >= 1.0 / double(n) || offset.coeffs[k] >= 0) {
          ok = ok && p[k] <= 2.0 * mixed[k] * (1 + 1e-12);
        }
      }
      if (!ok) Fail(suite, "n=" + std::to_string(n) + " rho=" + std::to_string(rate.value));
    } catch (const std::exception& e) {
      Fail(suite, e.what());
    }
  }
  return suite;
}

SuiteResult RatioBoundsSuite(int sequences, std::uint64_t seed) {
  SuiteResult suite{"ratio_bounds", 0, 0, {}};
  constexpr Index kArms[] = {2, 5, 10};
  constexpr PolicyKind kKinds[] = {PolicyKind::kUmabG, PolicyKind::kUmabGA};
  for (int s = 0; s < sequences; ++s) {
    const Index n = kArms[s % 3];
    const std::uint64_t key = mix_seed(seed, std::uint64_t(s));
    const LossSequence seq = uniform_sequence(n, 1000, -1e3, 1e3, environment_seed(key));
    for (PolicyKind kind : kKinds) {
      PolicyConfig config{kind, n, seq.rounds(), 0, 1};
      ++suite.cases;
      try {
        const TrialTrace trace = run_trial(seq, config, key);
        if (trace.counters.failures() > 0) {
          suite.violations += trace.counters.failures();
          if (suite.failures.size() < kMaxReportedFailures) {
            suite.failures.push_back(trace.first_failure);
          }
        }
      } catch (const std::exception& e) {
        Fail(suite, std::string(policy_name(kind)) + ": " + e.what());
      }
    }
  }
  return suite;
}

SuiteResult ScaleFreeSuite(int runs, std::uint64_t seed) {
  SuiteResult suite{"scale_free", 0, 0, {}};
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t key = mix_seed(seed, std::uint64_t(r));
    const LossSequence seq = uniform_sequence(5, 2000, 0.0, 1.0, environment_seed(key));
    PolicyConfig config{PolicyKind::kUmabNN, 5, seq.rounds(), 0, 1};
    TrialOptions options;
    options.keep_distributions = true;
    const TrialTrace base = run_trial(seq, config, key, options);
    // Powers of two scale every loss exactly; other factors perturb the
    // inputs by an ulp, which the importance-weighted updates amplify.
    for (double c : {0x1.0p-10, 0x1.0p10}) {
      ++suite.cases;
      const TrialTrace scaled = run_trial(scale_sequence(seq, c), config, key, options);
      const double gap = (scaled.base_dist - base.base_dist).cwiseAbs().maxCoeff();
      if (scaled.arm != base.arm || gap > 1e-9) {
        Fail(suite, "run=" + std::to_string(r) + " c=" + std::to_string(c) +
                        " dist_gap=" + std::to_string(gap));
      }
    }
  }
  return suite;
}

}  // namespace

double root_sum_lhs(std::span<const double> a) {
  double running = 0;
  double total = 0;
  for (double x : a) {
    total += running > 0 ? std::min(x * x / std::sqrt(running), x) : x;
    running += x * x;
  }
  return total;
}

double root_sum_rhs(std::span<const double> a) {
  double sq = 0;
  double mx = 0;
  for (double x : a) {
    sq += x * x;
    mx = std::max(mx, x);
  }
  return 3.5 * std::sqrt(sq) + 3.5 * mx;
}

double adaptive_lhs(std::span<const double> a) {
  double running = 0;
  double total = 0;
  for (double x : a) {
    total += x / std::sqrt(2.0 * running + 1.0);
    running += x;
  }
  return total;
}

double adaptive_rhs(std::span<const double> a) {
  double sum = 0;
  double mx = 0;
  for (double x : a) {
    sum += x;
    mx = std::max(mx, x);
  }
  return 2.0 * std::sqrt(sum + 1.0) + mx;
}

ScalarLemmaReport verify_scalar_lemmas(int trials, std::uint64_t seed) {
  ScalarLemmaReport report;
  CounterRng rng(seed);
  for (int i = 0; i < trials; ++i) {
    const std::vector<double> a = RandomSequence(rng);
    ++report.trials;
    if (!Holds(root_sum_lhs(a), root_sum_rhs(a))) {
      ++report.root_sum_violations;
      if (report.failures.size() < kMaxReportedFailures) {
        report.failures.push_back("root_sum " + Describe(a));
      }
    }
    if (!Holds(adaptive_lhs(a), adaptive_rhs(a))) {
      ++report.adaptive_violations;
      if (report.failures.size() < kMaxReportedFailures) {
        report.failures.push_back("adaptive " + Describe(a));
      }
    }
  }
  return report;
}

std::vector<SuiteResult> run_verification(int trials, std::uint64_t seed) {
  std::vector<SuiteResult> suites;
  const ScalarLemmaReport scalar = verify_scalar_lemmas(trials, mix_seed(seed, 1));
  suites.push_back({"scalar_lemmas", scalar.trials,
                    scalar.root_sum_violations + scalar.adaptive_violations, scalar.failures});
  suites.push_back(SolverSuite(trials, mix_seed(seed, 2)));
  suites.push_back(UnbiasednessSuite(10 * trials, mix_seed(seed, 3)));
  suites.push_back(ExplorationSuite(10 * trials, mix_seed(seed, 4)));
  suites.push_back(RatioBoundsSuite(trials > 0 ? std::max(1, trials / 20) : 0, mix_seed(seed, 5)));
  suites.push_back(ScaleFreeSuite(trials > 0 ? std::max(1, trials / 200) : 0, mix_seed(seed, 6)));
  return suites;
}

}  // namespace umab
