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

#ifndef UMAB_EXPLORATION_H_
#define UMAB_EXPLORATION_H_

// Extra exploration: starved arms (probability below rho) are raised by rho,
// and the most probable arm pays for all of them. Exploration rates follow
// either a fixed horizon-dependent schedule or an adaptive one driven by
// the accumulated |<estimate, offset>|.

#include <cmath>
#include <stdexcept>
#include <string>

#include "umab/errors.h"
#include "umab/estimation.h"
#include "umab/types.h"

namespace umab {

template <typename Scalar>
struct ExplorationOffset {
  Vec<Scalar> coeffs;
  Index star_arm = 0;
};

enum class ExplorationMode { kNonAdaptive, kAdaptive, kDisabled };

template <typename Scalar>
struct ExplorationRate {
  Scalar value = 0;
  ExplorationMode mode = ExplorationMode::kNonAdaptive;
  Scalar accum = 0;
};

template <typename Scalar>
Scalar max_exploration_rate(Index n) {
  return Scalar(1) / (Scalar(2) * Scalar(n) * Scalar(n));
}

// rho_1 = 1 / (2 n^2) for both schedules; zero when exploration is disabled.
template <typename Scalar>
ExplorationRate<Scalar> initial_rate(Index n, ExplorationMode mode) {
  if (mode == ExplorationMode::kDisabled) return {Scalar(0), mode, Scalar(0)};
  return {max_exploration_rate<Scalar>(n), mode, Scalar(0)};
}

template <typename Scalar>
ExplorationOffset<Scalar> build_offset(const Distribution<Scalar>& p,
                                       const ExplorationRate<Scalar>& rho) {
  const Index n = p.size();
  if (rho.value < Scalar(0) || rho.value > max_exploration_rate<Scalar>(n)) {
    throw DomainError("build_offset: exploration rate " +
                      std::to_string(double(rho.value)) + " outside [0, 1/(2n^2)]");
  }
  Index star = 0;
  p.probs().maxCoeff(&star);  // Eigen returns the first maximizer
  ExplorationOffset<Scalar> offset{Vec<Scalar>::Zero(n), star};
  Scalar boosted = 0;
  for (Index k = 0; k < n; ++k) {
    if (k != star && p[k] < rho.value) {
      offset.coeffs[k] = Scalar(1);
      boosted += Scalar(1);
    }
  }
  offset.coeffs[star] = -boosted;
  return offset;
}

template <typename Scalar>
Distribution<Scalar> mix(const Distribution<Scalar>& p, const ExplorationRate<Scalar>& rho,
                         const ExplorationOffset<Scalar>& offset) {
  Vec<Scalar> mixed = p.probs() + rho.value * offset.coeffs;
  if (mixed.size() > 0 && mixed.minCoeff() < rho.value) {
    throw std::logic_error("mix: explored distribution has an entry below rho");
  }
  return Distribution<Scalar>(std::move(mixed));
}

template <typename Scalar>
ExplorationRate<Scalar> update_rate_nonadaptive(Index n, long long horizon) {
  if (n < 2) throw DomainError("update_rate_nonadaptive: need n >= 2");
  if (horizon < 1) throw DomainError("update_rate_nonadaptive: horizon must be >= 1");
  const Scalar nn = Scalar(n);
  return {Scalar(1) / (Scalar(2) * nn * nn + std::sqrt(nn * Scalar(horizon))),
          ExplorationMode::kNonAdaptive, Scalar(0)};
}

// Accumulates |<estimate, c>| and returns 1 / (2 n^2 + 2 sqrt(accum)).
template <typename Scalar>
ExplorationRate<Scalar> update_rate_adaptive(const ExplorationRate<Scalar>& rate,
                                             const SparseEstimate<Scalar>& estimate,
                                             const ExplorationOffset<Scalar>& offset) {
  if (rate.mode != ExplorationMode::kAdaptive) {
    throw UsageError("update_rate_adaptive: rate is not in adaptive mode");
  }
  const Scalar nn = Scalar(estimate.n);
  const Scalar accum = rate.accum + std::abs(estimate.dot(offset.coeffs));
  return {Scalar(1) / (Scalar(2) * nn * nn + Scalar(2) * std::sqrt(accum)),
          ExplorationMode::kAdaptive, accum};
}

}  // namespace umab

#endif  // UMAB_EXPLORATION_H_
