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

#ifndef UMAB_ESTIMATION_H_
#define UMAB_ESTIMATION_H_

#include <algorithm>
#include <string>

#include "umab/errors.h"
#include "umab/types.h"

namespace umab {

// One-hot importance-weighted loss estimate: `value` at `arm`, zero elsewhere.
template <typename Scalar>
struct SparseEstimate {
  Index arm = 0;
  Scalar value = 0;
  Index n = 0;

  Vec<Scalar> densify() const {
    Vec<Scalar> dense = Vec<Scalar>::Zero(n);
    dense[arm] = value;
    return dense;
  }

  // <densify(), c> without materializing the dense vector.
  template <typename Derived>
  Scalar dot(const Eigen::MatrixBase<Derived>& c) const {
    return value * c[arm];
  }
};

template <typename Scalar, typename Derived>
void accumulate(Eigen::MatrixBase<Derived>& cumulative,
                const SparseEstimate<Scalar>& estimate) {
  cumulative[estimate.arm] += estimate.value;
}

// Negative running bound used to truncate very negative losses. Starts at -1
// and only ever moves down.
template <typename Scalar>
class ClipThreshold {
 public:
  ClipThreshold() = default;
  explicit ClipThreshold(Scalar value) : value_(value) {
    if (!(value <= Scalar(-1))) {
      throw DomainError("clip threshold must be <= -1, got " +
                        std::to_string(double(value)));
    }
  }

  Scalar value() const { return value_; }

 private:
  Scalar value_ = Scalar(-1);
};

template <typename Scalar>
struct ClipResult {
  Scalar clipped;
  bool clip_event;
};

template <typename Scalar>
SparseEstimate<Scalar> iw_estimate(Index arm, Scalar loss_value,
                                   const Distribution<Scalar>& sampling_dist) {
  if (arm < 0 || arm >= sampling_dist.size()) {
    throw DomainError("iw_estimate: arm " + std::to_string(arm) + " out of range");
  }
  if (!(sampling_dist[arm] > Scalar(0))) {
    throw DomainError("iw_estimate: sampling probability of arm " +
                      std::to_string(arm) + " is not positive");
  }
  return {arm, loss_value / sampling_dist[arm], sampling_dist.size()};
}

// Truncates at twice the threshold. Equality with 2C is not a clip event.
template <typename Scalar>
ClipResult<Scalar> clip_loss(Scalar loss_value, const ClipThreshold<Scalar>& threshold) {
  const Scalar floor = Scalar(2) * threshold.value();
#ifdef UMAB_MUTATE_FLIP_CLIP
  // Deliberately wrong comparison, compiled only into the mutation-check build.
  if (loss_value > floor) return {floor, true};
#else
  if (loss_value < floor) return {floor, true};
#endif
  return {loss_value, false};
}

template <typename Scalar>
ClipThreshold<Scalar> update_clip_threshold(const ClipThreshold<Scalar>& threshold,
                                            Scalar clipped_loss) {
  return ClipThreshold<Scalar>(std::min(threshold.value(), clipped_loss));
}

}  // namespace umab

#endif  // UMAB_ESTIMATION_H_
