// Copyright 2026 The frio Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "frio/ensemble.hpp"

// Brute-force verifier for the optimal error at fixed inconclusive rate.
// Knows nothing about the closed forms: it only sees the two states, the
// priors and Q.
//
// minimize_error searches over the inconclusive element Pi_0, written as
// l1 |n><n| + l2 |n'><n'| with the eigenvalues tied by tr(rho Pi_0) = Q, so
// every candidate meets the constraint. For fixed Pi_0 the best split of
// I - Pi_0 into the two identification elements is a Helstrom problem and is
// solved exactly. The split of a 2x2 rest into two elements is always rank-1.
//
// minimize_error_full_rank takes the other route: it searches over the
// shapes A1, A2 of the identification elements. For fixed shapes the error
// is linear in the weights, the constraint is a line in the (w1, w2) plane
// and positivity of Pi_0 cuts it to an interval, so the weights sit at an
// endpoint. At Q = 0 only orthogonal shapes are feasible, so this route is
// meant for Q > 0.

namespace frio {

/// Pi_1 = w1 |pi_1><pi_1|, Pi_2 = w2 |pi_2><pi_2|, Pi_0 = I - Pi_1 - Pi_2,
/// with |pi> = (cos(polar/2), e^{i azimuth} sin(polar/2)).
struct PovmAnsatz {
  double w1 = 0, w2 = 0;
  double polar1 = 0, azimuth1 = 0;
  double polar2 = 0, azimuth2 = 0;

  static constexpr std::size_t kSize = 6;
  std::vector<double> encode() const;
  /// Throws DomainError unless params.size() == kSize.
  static PovmAnsatz decode(std::span<const double> params);

  Mat2 identify1() const;
  Mat2 identify2() const;
  Mat2 inconclusive() const;
  Povm povm() const;
};

struct OracleResult {
  double error = 1;
  PovmAnsatz ansatz;
  /// |tr(rho Pi_0) - Q| at the returned point.
  double constraint_violation = 0;
  double min_inconclusive_eigenvalue = 0;
  std::size_t evaluations = 0;
  /// The best start reached the simplex size tolerance within its budget.
  bool converged = false;
};

inline constexpr std::size_t kMinOracleBudget = 10000;
inline constexpr int kOracleStarts = 32;

/// Multi-start Nelder-Mead over the inconclusive element. Budget is the
/// total number of objective evaluations, split evenly across starts. A
/// budget below 1e4 runs but reports converged = false. Throws
/// InfeasibleError when no start finds a point satisfying the Q constraint.
OracleResult minimize_error(const Ensemble& e, double q, std::size_t budget = 100000);

/// Same search with full-rank elements Pi_k = w_k L_k L_k^dagger / tr(.)
/// (lower-triangular L_k, 8 shape parameters). Independent cross-check for
/// Q > 0. The ansatz holds the top eigenpair of each element.
OracleResult minimize_error_full_rank(const Ensemble& e, double q, std::size_t budget = 100000);

struct FeasibleSample {
  PovmAnsatz ansatz;
  double error = 0;
};

/// n random rank-1 POVMs meeting the Q constraint within 1e-6: random Pi_0 on
/// the constraint surface, random split of the rest.
std::vector<FeasibleSample> sample_feasible(const Ensemble& e, double q, std::size_t n,
                                            std::uint64_t seed);

}  // namespace frio
