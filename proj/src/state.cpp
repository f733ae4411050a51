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

#include "frio/state.hpp"

#include <cmath>
#include <sstream>

#include "frio/errors.hpp"

namespace frio {

namespace {

constexpr double kStateTolerance = 1e-12;

}  // namespace

QubitState::QubitState(Complex a0, Complex a1) : QubitState(Vec2(a0, a1)) {}

QubitState::QubitState(const Vec2& amplitudes) : amplitudes_(amplitudes) {
  const double norm2 = amplitudes_.squaredNorm();
  if (!(std::abs(norm2 - 1.0) <= kStateTolerance)) {
    std::ostringstream msg;
    msg << "qubit state not normalized: |a|^2 = " << norm2;
    throw ValidationError(msg.str());
  }
}

Complex QubitState::overlap(const QubitState& other) const {
  return amplitudes_.dot(other.amplitudes_);
}

DensityOperator QubitState::density() const {
  return DensityOperator(amplitudes_ * amplitudes_.adjoint());
}

DensityOperator::DensityOperator(const Mat2& matrix) : matrix_(matrix) {
  const double herm = hermiticity_defect(matrix_);
  const double trace_err = std::abs(matrix_.trace() - Complex(1.0, 0.0));
  const double lowest = min_eigenvalue(matrix_);
  if (!(herm <= kStateTolerance) || !(trace_err <= kStateTolerance) ||
      !(lowest >= -kStateTolerance)) {
    std::ostringstream msg;
    msg << "invalid density operator: hermiticity defect " << herm << ", trace error "
        << trace_err << ", min eigenvalue " << lowest;
    throw ValidationError(msg.str());
  }
}

DensityOperator DensityOperator::maximally_mixed() {
  return DensityOperator(0.5 * Mat2::Identity());
}

}  // namespace frio
