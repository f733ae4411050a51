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

#include "frio/linalg.hpp"

namespace frio {

class DensityOperator;

/// Normalized pure qubit state in the {|0>,|1>} = {|H>,|V>} basis.
class QubitState {
 public:
  /// Throws ValidationError unless |a0|^2 + |a1|^2 = 1 within 1e-12.
  QubitState(Complex a0, Complex a1);
  explicit QubitState(const Vec2& amplitudes);

  const Vec2& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }

  /// <this|other>.
  Complex overlap(const QubitState& other) const;
  DensityOperator density() const;

 private:
  Vec2 amplitudes_;
};

/// 2x2 density matrix. Hermitian and unit-trace within 1e-12, eigenvalues
/// no lower than -1e-12.
class DensityOperator {
 public:
  explicit DensityOperator(const Mat2& matrix);

  const Mat2& matrix() const { return matrix_; }
  static DensityOperator maximally_mixed();

 private:
  Mat2 matrix_;
};

}  // namespace frio
