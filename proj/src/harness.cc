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

#include "umab/harness.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "umab/errors.h"
#include "umab/rng.h"

namespace umab {

namespace {

constexpr std::string_view kCheckNames[kCheckCount] = {
    "play_ratio",    "next_ratio",        "eta_monotone", "eta_stability",
    "truncation",    "exploration_bound", "rate_monotone", "clip_monotone",
    "clip_count",    "sq_sum_monotone",   "regret_envelope",
};

// a <= b up to relative slack.
bool Leq(double a, double b, double tol) {
  return a <= b + tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

class Checker {
 public:
  Checker(TrialTrace& trace, const TrialOptions& options)
      : trace_(trace), options_(options) {}

  void operator()(Check check, bool ok, long long t, const std::string& detail) {
    if (trace_.counters.record(check, ok)) return;
    std::ostringstream os;
    os.precision(17);
    os << policy_name(trace_.policy) << " seed=" << trace_.seed << " round=" << t
       << " check=" << check_name(check) << ": " << detail;
    if (trace_.first_failure.empty()) trace_.first_failure = os.str();
    if (options_.strict) throw AssertionFailure(os.str());
  }

  double tol() const { return options_.tolerance; }

 private:
  TrialTrace& trace_;
  const TrialOptions& options_;
};

std::string Pair(double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << a << " vs " << b;
  return os.str();
}

}  // namespace

std::string_view check_name(Check check) { return kCheckNames[static_cast<int>(check)]; }

long long AssertionCounters::failures() const {
  long long total = 0;
  for (const auto& t : tallies_) total += t.failed;
  return total;
}

long long AssertionCounters::evaluations() const {
  long long total = 0;
  for (const auto& t : tallies_) total += t.evaluated;
  return total;
}

AssertionCounters& AssertionCounters::operator+=(const AssertionCounters& other) {
  for (int i = 0; i < kCheckCount; ++i) {
    tallies_[i].evaluated += other.tallies_[i].evaluated;
    tallies_[i].failed += other.tallies_[i].failed;
  }
  return *this;
}

BestArm best_fixed_arm(const LossSequence& seq, Index prefix) {
  const Index rounds = prefix < 0 ? seq.rounds() : std::min(prefix, seq.rounds());
  if (seq.arms() == 0) throw UsageError("best_fixed_arm: sequence has no arms");
  BestArm best{0, 0.0};
  for (Index k = 0; k < seq.arms(); ++k) {
    const double total = seq.rows().col(k).head(rounds).sum();
    if (k == 0 || total < best.cumulative) best = {k, total};
  }
  return best;
}

double nn_regret_envelope(const LossSequence& seq) {
  const double n = double(seq.arms());
  const double rounds = double(seq.rounds());
  const double sq = seq.rows().cwiseAbs().rowwise().maxCoeff().squaredNorm();
  const double linf = seq.linf();
  return 4.0 * std::sqrt(n * sq) * std::log(n * rounds) + 3.5 * std::sqrt(n) * linf + linf;
}

TrialTrace run_trial(const LossSequence& seq, const PolicyConfig& config, std::uint64_t seed,
                     const TrialOptions& options) {
  if (config.n != seq.arms()) {
    throw UsageError("policy has " + std::to_string(config.n) + " arms but the sequence has " +
                     std::to_string(seq.arms()));
  }
  const Index rounds = seq.rounds();
  const Index n = seq.arms();
  Policy policy(config);
  CounterRng rng(seed, Stream::kPolicy);

  TrialTrace trace;
  trace.policy = config.kind;
  trace.seed = seed;
  trace.arms = n;
  trace.arm.reserve(rounds);
  trace.observed_loss.reserve(rounds);
  trace.expected_loss.reserve(rounds);
  trace.clip_event.reserve(rounds);
  trace.eta.reserve(rounds);
  trace.rho.reserve(rounds);
  trace.regret.reserve(rounds);
  trace.sampled_regret.reserve(rounds);
  if (options.keep_distributions) {
    trace.base_dist.resize(rounds, n);
    trace.play_dist.resize(rounds, n);
  }
  Checker check(trace, options);
  const double tol = options.tolerance;
  const double linf = seq.linf();

  VecD column_totals = VecD::Zero(n);
  double expected_total = 0;
  double observed_total = 0;

  for (Index i = 0; i < rounds; ++i) {
    const long long t = i + 1;
    const RoundDecision decision = policy.decide(rng);
    const auto losses = seq.row(i);
    const double loss = losses[decision.arm];
    const double expected = losses.dot(decision.play_dist.probs().transpose());

    const double eta_before = policy.eta();
    const double rho_before = policy.rho();
    const GState* g_before = policy.g();
    const double clip_before = g_before ? g_before->clip.value() : -1.0;
    const double sq_before = g_before ? g_before->sq_sum
                                      : (policy.nn() ? policy.nn()->sq_sum : 0.0);
    const double p_base = decision.base_dist[decision.arm];
    const double p_play = decision.play_dist[decision.arm];

    if (g_before && loss <= 0) {
      check(Check::kPlayRatio, Leq(p_base, 2.0 * p_play, tol), t, Pair(p_base, 2.0 * p_play));
    }

    policy.update(decision, loss);

    const double eta_after = policy.eta();
    check(Check::kEtaMonotone, Leq(eta_after, eta_before, tol), t, Pair(eta_after, eta_before));
    if (const NnState* nn = policy.nn()) {
      check(Check::kSqSumMonotone, nn->sq_sum >= sq_before, t, Pair(nn->sq_sum, sq_before));
    }
    if (const GState* g = policy.g()) {
      check(Check::kSqSumMonotone, g->sq_sum >= sq_before, t, Pair(g->sq_sum, sq_before));
      check(Check::kRateMonotone, Leq(g->rate.value, rho_before, tol), t,
            Pair(g->rate.value, rho_before));
      check(Check::kClipMonotone, g->clip.value() <= clip_before && g->clip.value() <= -1.0, t,
            Pair(g->clip.value(), clip_before));
      if (rho_before > 0) {
        const double inner = std::abs(g->last_estimate.dot(decision.offset.coeffs));
        const double bound = linf * std::max(2.0 * double(n) * double(n), 1.0 / rho_before);
        check(Check::kExplorationBound, Leq(inner, bound, tol), t, Pair(inner, bound));
      }
      if (loss <= 0) {
        // Positive losses are never clipped, so they can shrink eta by any
        // factor; the stability bound is only claimed for loss <= 0.
        check(Check::kEtaStability, Leq(eta_before, 3.0 * eta_after, tol), t,
              Pair(eta_before, 3.0 * eta_after));
        const double clipped = g->last_clip.clipped;
        const double four_c2 = 4.0 * clip_before * clip_before;
        const double eta_cap = 1.0 / (4.0 * eta_before * eta_before);
        check(Check::kTruncation,
              Leq(clipped * clipped, four_c2, tol) && Leq(four_c2, eta_cap, tol), t,
              "clipped^2=" + Pair(clipped * clipped, four_c2) + " 1/(4eta^2)=" +
                  std::to_string(eta_cap));
        const double p_next = policy.base_distribution()[decision.arm];
        check(Check::kNextRatio, Leq(p_next, 6.0 * p_base, tol), t, Pair(p_next, 6.0 * p_base));
      }
    }

    column_totals += losses.transpose();
    expected_total += expected;
    observed_total += loss;
    const double best_prefix = column_totals.minCoeff();

    trace.arm.push_back(decision.arm);
    trace.observed_loss.push_back(loss);
    trace.expected_loss.push_back(expected);
    trace.clip_event.push_back(policy.g() && policy.g()->last_clip.clip_event ? 1 : 0);
    trace.eta.push_back(eta_before);
    trace.rho.push_back(rho_before);
    trace.regret.push_back(expected_total - best_prefix);
    trace.sampled_regret.push_back(observed_total - best_prefix);
    if (options.keep_distributions) {
      trace.base_dist.row(i) = decision.base_dist.probs().transpose();
      trace.play_dist.row(i) = decision.play_dist.probs().transpose();
    }
  }

  trace.best = best_fixed_arm(seq);
  if (const GState* g = policy.g()) {
    trace.clip_events = g->clip_events;
    const double cap = std::log2(1.0 + linf);
    check(Check::kClipCount, double(g->clip_events) <= cap * (1.0 + tol), rounds,
          Pair(double(g->clip_events), cap));
  }
  if (config.kind == PolicyKind::kUmabNN && rounds > 0 && seq.min_loss() >= 0) {
    const double envelope = nn_regret_envelope(seq);
    check(Check::kRegretEnvelope, Leq(trace.final_regret(), envelope, tol), rounds,
          Pair(trace.final_regret(), envelope));
  }
  return trace;
}

std::uint64_t trial_seed(std::uint64_t experiment_seed, int trial_index) {
  return mix_seed(experiment_seed, std::uint64_t(trial_index));
}

std::uint64_t environment_seed(std::uint64_t trial_key) {
  return mix_seed(trial_key, static_cast<std::uint64_t>(Stream::kEnvironment));
}

std::vector<TrialTrace> run_trials(const EnvironmentFactory& environment, PolicyKind kind,
                                   std::uint64_t experiment_seed, int trials,
                                   const BatchOptions& options) {
  if (trials < 1) throw UsageError("trials must be >= 1");
  std::vector<TrialTrace> traces(trials);
  std::vector<std::exception_ptr> errors(trials);

  auto run_one = [&](int i) {
    try {
      const std::uint64_t key = trial_seed(experiment_seed, i);
      const LossSequence seq = environment(environment_seed(key));
      PolicyConfig config;
      config.kind = kind;
      config.n = seq.arms();
      config.horizon = seq.rounds();
      config.loss_low = seq.min_loss();
      config.loss_high = seq.max_loss();
      const std::uint64_t policy_key =
          options.policy_salt == 0 ? key : mix_seed(key, options.policy_salt + 1);
      traces[i] = run_trial(seq, config, policy_key, options.trial);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const int threads = std::clamp(options.threads, 1, trials);
  if (threads == 1) {
    for (int i = 0; i < trials; ++i) run_one(i);
  } else {
    std::vector<std::jthread> workers;
    for (int w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        for (int i = w; i < trials; i += threads) run_one(i);
      });
    }
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
  return traces;
}

RegretCurve aggregate(const std::vector<TrialTrace>& traces) {
  if (traces.empty()) throw UsageError("aggregate: no traces");
  const Index rounds = traces.front().rounds();
  for (const auto& trace : traces) {
    if (trace.rounds() != rounds) {
      throw UsageError("aggregate: traces disagree on T (" + std::to_string(rounds) + " vs " +
                       std::to_string(trace.rounds()) + ")");
    }
  }
  RegretCurve curve;
  curve.trials = int(traces.size());
  curve.mean.assign(rounds, 0.0);
  curve.std_dev.assign(rounds, 0.0);
  const double count = double(traces.size());
  for (Index t = 0; t < rounds; ++t) {
    double sum = 0;
    for (const auto& trace : traces) sum += trace.regret[t];
    const double mean = sum / count;
    double sq = 0;
    for (const auto& trace : traces) {
      const double d = trace.regret[t] - mean;
      sq += d * d;
    }
    curve.mean[t] = mean;
    curve.std_dev[t] = std::sqrt(sq / count);
  }
  return curve;
}

}  // namespace umab
