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

#ifndef UMAB_ENVIRONMENT_H_
#define UMAB_ENVIRONMENT_H_

// Oblivious loss sequences: synthetic generators and CSV ingestion.

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "umab/types.h"

namespace umab {

using LossMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// T x n losses, one row per round. Immutable once built.
class LossSequence {
 public:
  LossSequence(LossMatrix rows, std::string provenance);

  Index rounds() const { return rows_.rows(); }
  Index arms() const { return rows_.cols(); }
  const LossMatrix& rows() const { return rows_; }
  // Zero-based round index.
  auto row(Index t) const { return rows_.row(t); }
  const std::string& provenance() const { return provenance_; }

  // max_{t,k} |loss|.
  double linf() const;
  // max_{t,k} |min(loss, 0)|.
  double linf_negative() const;
  double min_loss() const;
  double max_loss() const;

 private:
  LossMatrix rows_;
  std::string provenance_;
};

// Two arms: [0, -0.5] for t < 100, [-10, 0] for 100 <= t < 150, [-0.05, 0]
// afterwards (1-based t). Requires T >= 150.
LossSequence deceptive_sequence(Index horizon);

// mean_k + Uniform[-noise_scale, noise_scale], independent across rounds/arms.
LossSequence stochastic_sequence(const std::vector<double>& means, double noise_scale,
                                 Index horizon, std::uint64_t seed);

// Entries i.i.d. Uniform[low, high].
LossSequence uniform_sequence(Index arms, Index horizon, double low, double high,
                              std::uint64_t seed);

enum class CsvTransform { kRaw, kDiff, kNeg };

struct CsvOptions {
  CsvTransform transform = CsvTransform::kRaw;
  // Per-column multipliers applied after the transform (one value broadcasts).
  std::vector<double> share;
  // Each resulting row is played this many consecutive rounds.
  int repeat = 1;
};

LossSequence load_csv_losses(const std::string& path, const CsvOptions& options = {});
LossSequence parse_csv_losses(std::istream& in, const std::string& source,
                              const CsvOptions& options = {});

LossSequence scale_sequence(const LossSequence& seq, double factor);

std::string transform_name(CsvTransform transform);
CsvTransform parse_transform(const std::string& name);

}  // namespace umab

#endif  // UMAB_ENVIRONMENT_H_
