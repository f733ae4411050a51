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

#include <complex>

#include <Eigen/Dense>

namespace frio {

using Complex = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;
using Vec4 = Eigen::Vector4cd;
using Mat4 = Eigen::Matrix4cd;

/// Largest |M - M^dagger| entry.
double hermiticity_defect(const Mat2& m);

/// Smallest eigenvalue of the Hermitian part of `m`.
double min_eigenvalue(const Mat2& m);

/// Largest |U^dagger U - I| entry.
double unitarity_defect(const Mat4& u);

/// Largest absolute entry.
double max_abs(const Mat2& m);

}  // namespace frio
