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

#include "frio/noise.hpp"

#include <sstream>

#include "frio/errors.hpp"

namespace frio {

Visibility::Visibility(double epsilon, double uncertainty)
    : epsilon_(epsilon), uncertainty_(uncertainty) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    std::ostringstream msg;
    msg << "visibility must lie in [0, 1], got " << epsilon;
    throw DomainError(msg.str());
  }
  if (!(uncertainty >= 0.0)) {
    throw DomainError("visibility uncertainty must be non-negative");
  }
}

DensityOperator apply_white_noise(const DensityOperator& rho, const Visibility& v) {
  const double eps = v.epsilon();
  return DensityOperator(eps * rho.matrix() + 0.5 * (1.0 - eps) * Mat2::Identity());
}

}  // namespace frio
