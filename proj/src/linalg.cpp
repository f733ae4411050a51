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

#include "frio/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace frio {

double hermiticity_defect(const Mat2& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double min_eigenvalue(const Mat2& m) {
  const Mat2 h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat2> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double unitarity_defect(const Mat4& u) {
  return (u.adjoint() * u - Mat4::Identity()).cwiseAbs().maxCoeff();
}

double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace frio
