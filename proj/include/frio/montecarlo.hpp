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

#include <array>
#include <cstdint>

#include "frio/circuit.hpp"
#include "frio/ensemble.hpp"
#include "frio/noise.hpp"

namespace frio {

inline constexpr double kDefaultRate = 1400.0;    // coincidences per second
inline constexpr double kDefaultBaseTime = 10.0;  // seconds at eta = 1/2

/// Integration plan. Prior weighting is done through integration time:
/// time_i = 2 eta_i T_base, so 0.3/0.7 with T_base = 10 s gives 6 s / 14 s.
struct AcquisitionPlan {
  double rate = kDefaultRate;
  double time1 = kDefaultBaseTime;
  double time2 = kDefaultBaseTime;
  std::uint64_t seed = 0;

  /// Throws DomainError unless rate > 0 and base_time > 0.
  static AcquisitionPlan for_priors(const Ensemble& e, double rate, double base_time,
                                    std::uint64_t seed);
};

struct Estimate {
  double value = 0;
  double std_error = 0;
  /// value is 0 or 1, so the naive standard error collapses to 0.
  bool boundary = false;
};

struct StateCounts {
  /// Indexed by DetectorMode.
  std::array<std::uint64_t, 4> mode_counts{};
  std::uint64_t total = 0;
  Estimate success, error, inconclusive;
};

struct CountRecord {
  OutcomeMap outcome_map{};
  StateCounts state1, state2;
  Estimate success, error, inconclusive;

  const StateCounts& state(int i) const { return i == 1 ? state1 : state2; }
};

/// Derives an independent sub-seed (splitmix64 finalizer over seed and stream).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

/// Noisy Born probabilities of each detector mode for prepared state i.
std::array<double, 4> mode_probabilities(const Ensemble& e, const CircuitConfig& cfg,
                                         const Visibility& v, int state);

/// Forward model of the counting run: for each prepared state the total is
/// Poisson(rate * time_i), split multinomially over the detector modes with
/// the noisy Born probabilities. Deterministic in plan.seed. Estimates and
/// errors are filled via propagate_errors.
CountRecord simulate_counts(const Ensemble& e, const CircuitConfig& cfg, const Visibility& v,
                            const AcquisitionPlan& plan);

/// Fills per-state estimates (count / total, sigma = sqrt(p(1-p)/N)) and the
/// prior-weighted averages with Gaussian propagation. Throws DomainError when
/// a state has zero total counts.
CountRecord propagate_errors(CountRecord rec, const Ensemble& e);

}  // namespace frio
