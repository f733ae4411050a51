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

#include <optional>
#include <string_view>

#include "frio/ensemble.hpp"

namespace frio {

enum class Interval { I, II, III };

std::string_view to_string(Interval i);

/// Boundary values of the inconclusive rate for an ensemble.
///   Q0   = 2 s sqrt(eta1 eta2)
///   Qth  = 2 eta1 eta2 (1 - s^2) / (1 - Q0), only when eta1 < s^2 / (1 + s^2)
///   Qmax = Q0 when eta1 >= s^2 / (1 + s^2), otherwise eta1 + eta2 s^2
struct QEndpoints {
  double q0 = 0;
  std::optional<double> qth;
  double qmax = 0;
};

struct IntervalTag {
  Interval interval = Interval::I;
  QEndpoints endpoints;
};

struct FrioSolution {
  IntervalTag tag;
  double q = 0;
  OutcomeProbabilities probs;
  /// c = eta1 eta2 (1 - s^2); set in interval III only.
  std::optional<double> cbar;
  /// s == 1: the states cannot be told apart at all.
  bool indistinguishable = false;
};

QEndpoints q_endpoints(const Ensemble& e);

/// Interval of (s, eta1, Q). Ties go to the lower-numbered interval. Throws
/// DomainError when Q < 0 or Q > Qmax + 1e-12.
IntervalTag classify(const Ensemble& e, double q);

/// Optimal fixed-rate-of-inconclusive-outcomes solution.
FrioSolution solve(const Ensemble& e, double q);

/// Minimum error with no inconclusive outcome:
/// (1 - sqrt(1 - 4 eta1 eta2 s^2)) / 2.
double helstrom_error(double s, double eta1);

/// Closed-form optimal error on intervals I and II,
/// (Qbar - sqrt(Qbar^2 - (Q0 - Q)^2)) / 2 with Qbar = 1 - Q.
double error_interval_one_two(double s, double eta1, double q);

/// Closed-form optimal error on interval III.
double error_interval_three(double s, double eta1, double q);

}  // namespace frio
