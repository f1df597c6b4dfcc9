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

#ifndef UMAB_SIMPLEX_H_
#define UMAB_SIMPLEX_H_

// Log-barrier regularized follow-the-regularized-leader over the simplex.
//
// The minimizer of <L, p> + Psi(p) / eta with Psi(p) = sum_k log(1 / (n p_k))
// satisfies p_k = 1 / (eta * L_k + lambda) for the unique multiplier lambda
// that makes the entries sum to one. solve_ftrl finds lambda by a
// Newton iteration safeguarded with bisection.

#include <cmath>
#include <sstream>
#include <string>

#include "umab/errors.h"
#include "umab/types.h"

namespace umab {

inline constexpr int kSolverMaxIterations = 200;
inline constexpr double kSolverSumTolerance = 1e-12;

template <typename Scalar>
Scalar log_barrier(const Distribution<Scalar>& p) {
  const Scalar log_n = std::log(Scalar(p.size()));
  Scalar total = 0;
  for (Index k = 0; k < p.size(); ++k) {
    if (!(p[k] > Scalar(0))) {
      throw DomainError("log_barrier: entry " + std::to_string(k) +
                        " is not strictly positive");
    }
    total += -std::log(p[k]) - log_n;
  }
  return total;
}

// Subtracts the minimum entry. The FTRL arg-min is invariant under adding a
// constant to every arm, so this only improves conditioning.
template <typename Derived>
auto shift_invariance_normalize(const Eigen::MatrixBase<Derived>& cumulative) {
  using Scalar = typename Derived::Scalar;
  Vec<Scalar> out = cumulative;
  if (out.size() > 0) out.array() -= out.minCoeff();
  return out;
}

// <L, p> + Psi(p) / eta; eta may be infinite, in which case the barrier
// term vanishes.
template <typename Scalar>
Scalar ftrl_objective(const Vec<Scalar>& cumulative, const LearningRate<Scalar>& eta,
                      const Vec<Scalar>& p) {
  Scalar objective = cumulative.dot(p);
  if (!eta.is_infinite()) {
    const Scalar log_n = std::log(Scalar(p.size()));
    Scalar barrier = 0;
    for (Index k = 0; k < p.size(); ++k) barrier += -std::log(p[k]) - log_n;
    objective += barrier / eta.value();
  }
  return objective;
}

template <typename Scalar>
struct FtrlSolution {
  Distribution<Scalar> dist;
  // Multiplier for the normalized input: p_k = 1 / (eta * (L_k - min L) + multiplier).
  Scalar multiplier;
  int iterations;
};

namespace internal {

template <typename Scalar>
std::string SolverDiagnostics(const Vec<Scalar>& cumulative, Scalar eta, Scalar lo,
                              Scalar hi) {
  std::ostringstream os;
  os.precision(17);
  os << "solve_ftrl did not converge: L=[";
  for (Index k = 0; k < cumulative.size(); ++k) {
    os << (k ? "," : "") << double(cumulative[k]);
  }
  os << "] eta=" << double(eta) << " bracket=[" << double(lo) << "," << double(hi)
     << "]";
  return os.str();
}

}  // namespace internal

template <typename Scalar>
FtrlSolution<Scalar> solve_ftrl_detailed(const CumulativeEstimate<Scalar>& cumulative,
                                         const LearningRate<Scalar>& eta) {
  const Index n = cumulative.size();
  if (n < 2) throw DomainError("solve_ftrl: need at least two arms");
  if (!cumulative.allFinite()) {
    throw DomainError("solve_ftrl: cumulative estimate has non-finite entries");
  }
  const Vec<Scalar> shifted = shift_invariance_normalize(cumulative);
  const bool all_zero = (shifted.array() == Scalar(0)).all();
  if (eta.is_infinite()) {
    if (!all_zero) {
      throw UsageError(
          "solve_ftrl: infinite learning rate requires a constant cumulative "
          "estimate");
    }
    return {Distribution<Scalar>::Uniform(n), Scalar(n), 0};
  }
  if (all_zero) return {Distribution<Scalar>::Uniform(n), Scalar(n), 0};

  const Vec<Scalar> offsets = eta.value() * shifted;
  // With min offset 0 the root lies in [1, n]: the zero-offset arm alone
  // contributes 1 / lambda, and every term is at most 1 / lambda.
  Scalar lo = 1;
  Scalar hi = Scalar(n);
  Scalar lambda = lo;
  for (int iter = 1; iter <= kSolverMaxIterations; ++iter) {
    Scalar sum = 0;
    Scalar slope = 0;
    for (Index k = 0; k < n; ++k) {
      const Scalar inv = Scalar(1) / (offsets[k] + lambda);
      sum += inv;
      slope -= inv * inv;
    }
    const Scalar residual = sum - Scalar(1);
    if (std::abs(double(residual)) <= kSolverSumTolerance) {
      Vec<Scalar> p = (offsets.array() + lambda).inverse().matrix();
      return {Distribution<Scalar>(std::move(p)), lambda, iter};
    }
    if (residual > 0) {
      lo = lambda;
    } else {
      hi = lambda;
    }
    Scalar next = lambda - residual / slope;
    if (!(next > lo && next < hi)) next = lo + (hi - lo) / Scalar(2);
    if (next == lambda) break;
    lambda = next;
  }
  throw NumericalError(internal::SolverDiagnostics(cumulative, eta.value(), lo, hi));
}

template <typename Scalar>
Distribution<Scalar> solve_ftrl(const CumulativeEstimate<Scalar>& cumulative,
                                const LearningRate<Scalar>& eta) {
  return solve_ftrl_detailed(cumulative, eta).dist;
}

}  // namespace umab

#endif  // UMAB_SIMPLEX_H_
