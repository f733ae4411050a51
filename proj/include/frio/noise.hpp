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

#include "frio/state.hpp"

namespace frio {

inline constexpr double kMeasuredVisibility = 0.981;
inline constexpr double kMeasuredVisibilityUncertainty = 0.006;

/// Interferometer visibility. Parameterizes a white-noise channel; the
/// uncertainty is carried for reporting only.
class Visibility {
 public:
  Visibility() = default;
  /// Throws DomainError unless 0 <= epsilon <= 1 and uncertainty >= 0.
  explicit Visibility(double epsilon, double uncertainty = 0.0);

  double epsilon() const { return epsilon_; }
  double uncertainty() const { return uncertainty_; }

  static Visibility ideal() { return Visibility(1.0); }

 private:
  double epsilon_ = kMeasuredVisibility;
  double uncertainty_ = kMeasuredVisibilityUncertainty;
};

/// rho' = eps * rho + (1 - eps) / 2 * I.
DensityOperator apply_white_noise(const DensityOperator& rho, const Visibility& v);

}  // namespace frio
