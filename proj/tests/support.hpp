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

// Hand-rolled generators and small helpers shared by the unit tests.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "frio/linalg.hpp"
#include "frio/optimal.hpp"
#include "frio/povm.hpp"

namespace frio::testing {

inline constexpr double kPi = std::numbers::pi;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  double angle() { return uniform(-kPi, kPi); }
  double overlap() { return uniform(0.0, 1.0); }
  /// Prior in (0, 1/2], away from the open end.
  double prior() { return uniform(1e-3, 0.5); }
  /// Any prior in (0, 1).
  double any_prior() { return uniform(1e-3, 1.0 - 1e-3); }

  /// Point of the admissible Q range for `e`.
  double q_for(const Ensemble& e) { return uniform(0.0, q_endpoints(e).qmax); }

  Vec2 unit_vector() {
    Vec2 v(Complex(normal(), normal()), Complex(normal(), normal()));
    return v / v.norm();
  }
  Mat2 projector() {
    const Vec2 v = unit_vector();
    return v * v.adjoint();
  }
  /// Random density matrix: mixture of a random projector with I/2.
  Mat2 density() {
    const double w = uniform(0.0, 1.0);
    return w * projector() + (1.0 - w) * 0.5 * Mat2::Identity();
  }
  Mat2 psd() {
    const double a = uniform(0.0, 1.0);
    const double b = uniform(0.0, 1.0);
    const Vec2 u = unit_vector();
    const Vec2 w(-std::conj(u(1)), std::conj(u(0)));
    return a * u * u.adjoint() + b * w * w.adjoint();
  }
  /// Random 3-outcome qubit POVM.
  Povm povm() {
    const Mat2 a = psd();
    const Mat2 b = psd();
    const Mat2 sum = a + b;
    const double top = -min_eigenvalue(-sum);
    const double scale = uniform(0.0, 1.0) / std::max(top, 1e-9);
    const Mat2 pi1 = scale * a;
    const Mat2 pi2 = scale * b;
    return Povm({{Outcome::identify1, pi1},
                 {Outcome::identify2, pi2},
                 {Outcome::inconclusive, Mat2::Identity() - pi1 - pi2}});
  }
  /// Haar-ish 4x4 unitary from the QR decomposition of a Gaussian matrix.
  Mat4 unitary() {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = Complex(normal(), normal());
    Eigen::HouseholderQR<Mat4> qr(m);
    return qr.householderQ() * Mat4::Identity();
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
  std::mt19937_64 rng_;
};

inline double trace_product(const Mat2& rho, const Mat2& op) { return (rho * op).trace().real(); }

/// Minimum error with no inconclusive outcome, written out independently.
inline double helstrom(double s, double eta1) {
  return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * eta1 * (1.0 - eta1) * s * s));
}

/// Optimal error on the two-outcome branch (small prior, large Q).
inline double error_two_outcome_branch(double s, double eta1, double q) {
  const double eta2 = 1.0 - eta1;
  const double qbar = 1.0 - q;
  const double q0 = 2.0 * s * std::sqrt(eta1 * eta2);
  const double c = eta1 * eta2 * (1.0 - s * s);
  return (eta1 * qbar + c * (eta2 - eta1 - 2.0 * qbar) - q0 * std::sqrt(c * (q * qbar - c))) /
         (1.0 - 4.0 * c);
}

}  // namespace frio::testing
