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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "frio/linalg.hpp"

namespace frio {

class Ensemble;
struct FrioSolution;

enum class Outcome { identify1, identify2, inconclusive };

std::string_view to_string(Outcome o);

/// Detector modes of the dilation, in the 4x4 basis order
/// |H,1>, |V,1>, |H,2>, |V,2>.
enum class DetectorMode { H1 = 0, V1 = 1, H2 = 2, V2 = 3 };

inline constexpr std::array<DetectorMode, 4> kDetectorModes = {
    DetectorMode::H1, DetectorMode::V1, DetectorMode::H2, DetectorMode::V2};

std::string_view to_string(DetectorMode m);

/// Meaning assigned to each detector mode, indexed by DetectorMode.
using OutcomeMap = std::array<Outcome, 4>;

/// 4x4 unitary acting on polarization (x) path.
struct CircuitUnitary {
  Mat4 matrix;
};

struct PovmElement {
  Outcome label;
  Mat2 op;
};

/// Labeled qubit POVM with 2 or 3 outcomes. Construction does not validate;
/// call validate() or require_valid().
class Povm {
 public:
  Povm() = default;
  explicit Povm(std::vector<PovmElement> elements) : elements_(std::move(elements)) {}

  const std::vector<PovmElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  /// Sum of all elements carrying `label`; zero when the label is absent.
  Mat2 element(Outcome label) const;
  bool has(Outcome label) const;

 private:
  std::vector<PovmElement> elements_;
};

inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kEigenvalueTolerance = 1e-10;
inline constexpr double kCompletenessTolerance = 1e-10;

struct ElementCheck {
  Outcome label;
  double min_eigenvalue;
  double hermiticity_defect;
};

struct PovmReport {
  std::vector<ElementCheck> elements;
  double completeness_residual = 0.0;
  bool element_count_ok = false;
  bool passed = false;

  std::string summary() const;
};

PovmReport validate(const Povm& povm);

/// Throws ValidationError carrying the report summary if validation fails.
void require_valid(const Povm& povm);

/// Per-mode operators <anc|U^dagger P_m U|anc> with the ancilla in path 1.
std::array<Mat2, 4> mode_operators(const CircuitUnitary& u);

/// Back-projects the dilation onto the qubit: elements are sums of mode
/// operators grouped by the outcome map, ordered identify1, identify2,
/// inconclusive, absent labels omitted. Throws ValidationError when `u` is
/// not unitary within 1e-10.
Povm effective_povm(const CircuitUnitary& u, const OutcomeMap& outcome_map);

/// Optimal POVM for `sol`, constructed through the interferometer dilation
/// (angle solve, unitary, back-projection).
Povm from_solution(const Ensemble& e, const FrioSolution& sol);

}  // namespace frio
