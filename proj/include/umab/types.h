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

#ifndef UMAB_TYPES_H_
#define UMAB_TYPES_H_

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "umab/errors.h"

namespace umab {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Index = Eigen::Index;

// Accumulated estimated losses, one entry per arm.
template <typename Scalar>
using CumulativeEstimate = Vec<Scalar>;

inline constexpr double kSimplexSumTolerance = 1e-9;

// A point on the probability simplex with at least two arms.
template <typename Scalar>
class Distribution {
 public:
  // Validates: n >= 2, entries finite and >= 0, sum within 1e-9 of one.
  explicit Distribution(Vec<Scalar> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) {
      throw DomainError("distribution needs at least two arms, got " +
                        std::to_string(probs_.size()));
    }
    for (Index k = 0; k < probs_.size(); ++k) {
      if (!(probs_[k] >= Scalar(0)) || !std::isfinite(double(probs_[k]))) {
        throw DomainError("distribution entry " + std::to_string(k) +
                          " is negative or not finite: " +
                          std::to_string(double(probs_[k])));
      }
    }
    const double sum = double(probs_.sum());
    if (std::abs(sum - 1.0) > kSimplexSumTolerance) {
      throw DomainError("distribution sums to " + std::to_string(sum));
    }
  }

  static Distribution Uniform(Index n) {
    return Distribution(Vec<Scalar>::Constant(n, Scalar(1) / Scalar(n)));
  }

  const Vec<Scalar>& probs() const { return probs_; }
  Scalar operator[](Index k) const { return probs_[k]; }
  Index size() const { return probs_.size(); }

 private:
  Vec<Scalar> probs_;
};

// Positive step size or the distinguished infinite value.
template <typename Scalar>
class LearningRate {
 public:
  explicit LearningRate(Scalar value) : value_(value) {
    if (!(value > Scalar(0))) {
      throw DomainError("learning rate must be positive, got " +
                        std::to_string(double(value)));
    }
  }

  static LearningRate Infinite() {
    return LearningRate(std::numeric_limits<Scalar>::infinity());
  }

  bool is_infinite() const { return std::isinf(double(value_)); }
  Scalar value() const { return value_; }

  friend bool operator==(const LearningRate&, const LearningRate&) = default;

 private:
  Scalar value_;
};

}  // namespace umab

#endif  // UMAB_TYPES_H_
