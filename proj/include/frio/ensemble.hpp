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

#include "frio/noise.hpp"
#include "frio/povm.hpp"
#include "frio/state.hpp"

namespace frio {

/// Per-state success/error/inconclusive probabilities and their
/// prior-weighted averages.
struct OutcomeProbabilities {
  double p1 = 0, r1 = 0, q1 = 0;
  double p2 = 0, r2 = 0, q2 = 0;
  double success = 0, error = 0, inconclusive = 0;

  /// Fills the averages from the per-state values.
  static OutcomeProbabilities from_per_state(double p1, double r1, double q1, double p2,
                                             double r2, double q2, double eta1);

  /// Largest violation of the completeness and averaging identities.
  double invariant_defect(double eta1) const;

  /// Exchanges the state-1 and state-2 columns; averages are unchanged.
  OutcomeProbabilities swapped() const;
};

/// Two-state discrimination problem
///   |phi_1> = cos a |0> + sin a |1>,  |phi_2> = cos a |0> - sin a |1>,
/// overlap s = cos 2a, priors eta1 <= eta2. Inputs with eta1 > 1/2 are stored
/// with the labels exchanged and labels_swapped() set.
class Ensemble {
 public:
  double overlap() const { return s_; }
  double alpha() const { return alpha_; }
  double eta1() const { return eta1_; }
  double eta2() const { return 1.0 - eta1_; }
  double eta(int i) const { return i == 1 ? eta1() : eta2(); }
  bool labels_swapped() const { return swapped_; }

  QubitState state1() const;
  QubitState state2() const;
  QubitState state(int i) const { return i == 1 ? state1() : state2(); }

  DensityOperator rho1() const { return state1().density(); }
  DensityOperator rho2() const { return state2().density(); }
  DensityOperator rho(int i) const { return state(i).density(); }
  DensityOperator average_density() const;

  /// Preparation half-wave plate inclination, from s = cos 4 theta.
  double preparation_angle() const { return alpha_ / 2.0; }

  /// Maps canonical per-state probabilities back to the caller's labels.
  OutcomeProbabilities to_caller_labels(const OutcomeProbabilities& p) const {
    return swapped_ ? p.swapped() : p;
  }

 private:
  friend Ensemble make_ensemble(double s, double eta1);
  Ensemble(double s, double eta1, bool swapped);

  double s_;
  double alpha_;
  double eta1_;
  bool swapped_;
};

/// Throws DomainError naming the parameter unless 0 <= s <= 1 and 0 < eta1 < 1.
Ensemble make_ensemble(double s, double eta1);

/// Born-rule probabilities tr(rho_i Pi_k), with rho_i replaced by its
/// white-noise image when `noise` is given. Throws ValidationError for an
/// invalid POVM or for a probability below -1e-12.
OutcomeProbabilities born_probabilities(const Ensemble& e, const Povm& povm,
                                        std::optional<Visibility> noise = std::nullopt);

}  // namespace frio
