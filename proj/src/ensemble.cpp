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

#include "frio/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frio/errors.hpp"

namespace frio {

namespace {

constexpr double kProbabilityTolerance = 1e-12;

double checked_probability(const Mat2& rho, const Mat2& element, const char* what) {
  const double value = (rho * element).trace().real();
  if (!(value >= -kProbabilityTolerance && value <= 1.0 + kProbabilityTolerance)) {
    std::ostringstream msg;
    msg << "Born probability " << what << " = " << value << " outside [0, 1]";
    throw ValidationError(msg.str());
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace

OutcomeProbabilities OutcomeProbabilities::from_per_state(double p1, double r1, double q1,
                                                          double p2, double r2, double q2,
                                                          double eta1) {
  const double eta2 = 1.0 - eta1;
  OutcomeProbabilities out;
  out.p1 = p1;
  out.r1 = r1;
  out.q1 = q1;
  out.p2 = p2;
  out.r2 = r2;
  out.q2 = q2;
  out.success = eta1 * p1 + eta2 * p2;
  out.error = eta1 * r1 + eta2 * r2;
  out.inconclusive = eta1 * q1 + eta2 * q2;
  return out;
}

double OutcomeProbabilities::invariant_defect(double eta1) const {
  const double eta2 = 1.0 - eta1;
  return std::max({std::abs(p1 + r1 + q1 - 1.0), std::abs(p2 + r2 + q2 - 1.0),
                   std::abs(success - (eta1 * p1 + eta2 * p2)),
                   std::abs(error - (eta1 * r1 + eta2 * r2)),
                   std::abs(inconclusive - (eta1 * q1 + eta2 * q2)),
                   std::abs(success + error + inconclusive - 1.0)});
}

OutcomeProbabilities OutcomeProbabilities::swapped() const {
  OutcomeProbabilities out = *this;
  std::swap(out.p1, out.p2);
  std::swap(out.r1, out.r2);
  std::swap(out.q1, out.q2);
  return out;
}

Ensemble::Ensemble(double s, double eta1, bool swapped)
    : s_(s), alpha_(std::acos(s) / 2.0), eta1_(eta1), swapped_(swapped) {}

QubitState Ensemble::state1() const {
  return QubitState(std::cos(alpha_), std::sin(alpha_));
}

QubitState Ensemble::state2() const {
  return QubitState(std::cos(alpha_), -std::sin(alpha_));
}

DensityOperator Ensemble::average_density() const {
  return DensityOperator(eta1() * rho1().matrix() + eta2() * rho2().matrix());
}

Ensemble make_ensemble(double s, double eta1) {
  if (!(s >= 0.0 && s <= 1.0)) {
    std::ostringstream msg;
    msg << "overlap s must lie in [0, 1], got " << s;
    throw DomainError(msg.str());
  }
  if (!(eta1 > 0.0 && eta1 < 1.0)) {
    std::ostringstream msg;
    msg << "prior eta1 must lie in (0, 1), got " << eta1;
    throw DomainError(msg.str());
  }
  if (eta1 > 0.5) return Ensemble(s, 1.0 - eta1, true);
  return Ensemble(s, eta1, false);
}

OutcomeProbabilities born_probabilities(const Ensemble& e, const Povm& povm,
                                        std::optional<Visibility> noise) {
  require_valid(povm);
  const Mat2 pi1 = povm.element(Outcome::identify1);
  const Mat2 pi2 = povm.element(Outcome::identify2);
  const Mat2 pi0 = povm.element(Outcome::inconclusive);

  auto rho = [&](int i) {
    const DensityOperator pure = e.rho(i);
    return noise ? apply_white_noise(pure, *noise).matrix() : pure.matrix();
  };
  const Mat2 rho1 = rho(1);
  const Mat2 rho2 = rho(2);

  return OutcomeProbabilities::from_per_state(
      checked_probability(rho1, pi1, "p1"), checked_probability(rho1, pi2, "r1"),
      checked_probability(rho1, pi0, "q1"), checked_probability(rho2, pi2, "p2"),
      checked_probability(rho2, pi1, "r2"), checked_probability(rho2, pi0, "q2"), e.eta1());
}

}  // namespace frio
