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

#include "frio/povm.hpp"

#include <algorithm>
#include <sstream>

#include "frio/circuit.hpp"
#include "frio/errors.hpp"

namespace frio {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::identify1:
      return "identify1";
    case Outcome::identify2:
      return "identify2";
    case Outcome::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string_view to_string(DetectorMode m) {
  switch (m) {
    case DetectorMode::H1:
      return "H1";
    case DetectorMode::V1:
      return "V1";
    case DetectorMode::H2:
      return "H2";
    case DetectorMode::V2:
      return "V2";
  }
  return "?";
}

Mat2 Povm::element(Outcome label) const {
  Mat2 sum = Mat2::Zero();
  for (const auto& el : elements_) {
    if (el.label == label) sum += el.op;
  }
  return sum;
}

bool Povm::has(Outcome label) const {
  return std::any_of(elements_.begin(), elements_.end(),
                     [label](const PovmElement& el) { return el.label == label; });
}

std::string PovmReport::summary() const {
  std::ostringstream out;
  out << (passed ? "valid" : "invalid") << " POVM: " << elements.size() << " elements";
  if (!element_count_ok) out << " (expected 2 or 3)";
  out << ", completeness residual " << completeness_residual;
  for (const auto& el : elements) {
    out << "; " << to_string(el.label) << " min eigenvalue " << el.min_eigenvalue
        << " hermiticity " << el.hermiticity_defect;
  }
  return out.str();
}

PovmReport validate(const Povm& povm) {
  PovmReport report;
  report.element_count_ok = povm.size() == 2 || povm.size() == 3;
  bool ok = report.element_count_ok;
  Mat2 sum = Mat2::Zero();
  for (const auto& el : povm.elements()) {
    ElementCheck check{el.label, min_eigenvalue(el.op), hermiticity_defect(el.op)};
    ok = ok && check.hermiticity_defect <= kHermiticityTolerance &&
         check.min_eigenvalue >= -kEigenvalueTolerance;
    report.elements.push_back(check);
    sum += el.op;
  }
  report.completeness_residual = max_abs(sum - Mat2::Identity());
  report.passed = ok && report.completeness_residual <= kCompletenessTolerance;
  return report;
}

void require_valid(const Povm& povm) {
  const PovmReport report = validate(povm);
  if (!report.passed) throw ValidationError(report.summary());
}

std::array<Mat2, 4> mode_operators(const CircuitUnitary& u) {
  // Columns of U for inputs |H,1>, |V,1>.
  const Eigen::Matrix<Complex, 4, 2> cols = u.matrix.leftCols<2>();
  std::array<Mat2, 4> ops;
  for (int m = 0; m < 4; ++m) {
    const Eigen::Matrix<Complex, 1, 2> row = cols.row(m);
    Mat2 op = row.adjoint() * row;
    // Exact Hermitian symmetrization; rank-1 products can pick up ulp noise.
    ops[m] = 0.5 * (op + op.adjoint());
  }
  return ops;
}

Povm effective_povm(const CircuitUnitary& u, const OutcomeMap& outcome_map) {
  const double defect = unitarity_defect(u.matrix);
  if (!(defect <= 1e-10)) {
    std::ostringstream msg;
    msg << "circuit matrix is not unitary: |U^dag U - I| = " << defect;
    throw ValidationError(msg.str());
  }
  const auto ops = mode_operators(u);
  std::vector<PovmElement> elements;
  for (Outcome label : {Outcome::identify1, Outcome::identify2, Outcome::inconclusive}) {
    bool present = false;
    Mat2 sum = Mat2::Zero();
    for (std::size_t m = 0; m < ops.size(); ++m) {
      if (outcome_map[m] == label) {
        sum += ops[m];
        present = true;
      }
    }
    if (present) elements.push_back({label, sum});
  }
  return Povm(std::move(elements));
}

Povm from_solution(const Ensemble& e, const FrioSolution& sol) {
  const AngleSolution angles = solve_angles(e, sol);
  return effective_povm(build_unitary(angles.config), outcome_map(angles.config));
}

}  // namespace frio
