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

#include "frio/ensemble.hpp"
#include "frio/optimal.hpp"
#include "frio/povm.hpp"

// Double-path Sagnac dilation on polarization (x) path:
//
//   U = C(theta3) . CNOT . C(theta2) . CNOT . C(theta1)
//
// C(t) is the half-wave-plate Jones matrix [[cos t, sin t], [sin t, -cos t]]
// with t the effective angle (twice the physical plate inclination).
// C(theta1) acts on both paths, C(theta2) on path 2, C(theta3) on path 1.
// CNOT is the PBS: it exchanges |H,1> and |H,2> and leaves |V,.> alone.
// The input enters on path 1 and |H,2> stays dark.

namespace frio {

struct CircuitConfig {
  /// Physical preparation plate angle; the ensemble has s = cos 4 theta.
  double theta = 0;
  /// Effective plate angles (radians).
  double theta1 = 0;
  double theta2 = 0;
  double theta3 = 0;
  /// Interval III: two-outcome projective mode, V1 = inconclusive.
  bool two_outcome = false;
};

/// Lab settings in degrees: theta as-is, theta1..3 halved.
struct PhysicalAngles {
  double theta_deg;
  double theta1_deg;
  double theta2_deg;
  double theta3_deg;
};

PhysicalAngles physical_angles(const CircuitConfig& cfg);

/// Jones matrix of a half-wave plate at effective angle `t`.
Mat2 half_wave_plate(double t);

CircuitUnitary build_unitary(const CircuitConfig& cfg);

/// Outcome meaning of each detector mode. Three-outcome mode:
/// V1 -> identify1, H1 -> identify2, V2 -> inconclusive. Two-outcome mode:
/// V1 -> inconclusive, H1 -> identify2. H2 (dark) is always inconclusive.
OutcomeMap outcome_map(const CircuitConfig& cfg);

struct OutcomeAmplitudes {
  Complex v1, h1, v2, h2;

  Complex amplitude(DetectorMode m) const;
  double probability(DetectorMode m) const { return std::norm(amplitude(m)); }
  double total_probability() const;
};

/// U (|state> (x) |1>) in detector modes.
OutcomeAmplitudes propagate(const CircuitConfig& cfg, const QubitState& state);

struct AngleSolution {
  CircuitConfig config;
  /// Largest |target - realized| over the per-state probabilities.
  double residual = 0;
  /// Seeds tried before success (1 = first seed).
  int attempts = 0;
};

inline constexpr double kAngleSuccessThreshold = 1e-9;

/// Plate angles realizing `sol` for `e`. Throws InfeasibleError when the
/// requested probabilities cannot be produced by the circuit and SolverError
/// when all restarts stay above 1e-9.
AngleSolution solve_angles(const Ensemble& e, const FrioSolution& sol);

}  // namespace frio
