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


#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "frio/ensemble.hpp"
#include "frio/errors.hpp"
#include "frio/optimal.hpp"
#include "support.hpp"

namespace frio {
namespace {

using frio::testing::Gen;
using frio::testing::kPi;
using frio::testing::trace_product;
using ::testing::HasSubstr;

std::string domain_message(double s, double eta1) {
  try {
    make_ensemble(s, eta1);
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

TEST(MakeEnsemble, OrthogonalStates) {
  const Ensemble e = make_ensemble(0.0, 0.5);
  EXPECT_NEAR(e.alpha(), kPi / 4, 1e-15);
  EXPECT_NEAR(std::abs(e.state1().overlap(e.state2())), 0.0, 1e-15);
  EXPECT_NEAR(e.state1()[0].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(e.state2()[1].real(), -std::sqrt(0.5), 1e-15);
}

TEST(MakeEnsemble, IdenticalStates) {
  const Ensemble e = make_ensemble(1.0, 0.5);
  EXPECT_EQ(e.alpha(), 0.0);
  EXPECT_EQ(e.state1()[0], Complex(1.0, 0.0));
  EXPECT_EQ(e.state2()[0], Complex(1.0, 0.0));
  EXPECT_EQ(std::abs(e.state2()[1]), 0.0);
}

TEST(MakeEnsemble, HalfOverlap) {
  const Ensemble e = make_ensemble(0.5, 0.3);
  EXPECT_NEAR(e.alpha(), kPi / 6, 1e-15);
  EXPECT_NEAR(e.state1().overlap(e.state2()).real(), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(e.eta1(), 0.3);
  EXPECT_DOUBLE_EQ(e.eta2(), 0.7);
  EXPECT_FALSE(e.labels_swapped());
}

TEST(MakeEnsemble, PreparationAngleMatchesCosFourTheta) {
  for (double s : {0.0, 0.25, 0.5, 0.87, 1.0}) {
    const Ensemble e = make_ensemble(s, 0.5);
    EXPECT_NEAR(std::cos(4 * e.preparation_angle()), s, 1e-14);
  }
  EXPECT_NEAR(make_ensemble(0.0, 0.5).preparation_angle(), kPi / 8, 1e-15);
}

TEST(MakeEnsemble, LargePriorIsCanonicalized) {
  const Ensemble e = make_ensemble(0.4, 0.8);
  EXPECT_TRUE(e.labels_swapped());
  EXPECT_NEAR(e.eta1(), 0.2, 1e-15);
  const auto p = OutcomeProbabilities::from_per_state(0.1, 0.2, 0.7, 0.3, 0.4, 0.3, 0.2);
  const auto caller = e.to_caller_labels(p);
  EXPECT_EQ(caller.p1, p.p2);
  EXPECT_EQ(caller.r2, p.r1);
  EXPECT_EQ(caller.error, p.error);
}

TEST(MakeEnsemble, RejectsOutOfRangeOverlap) {
  EXPECT_THROW(make_ensemble(-0.01, 0.5), DomainError);
  EXPECT_THROW(make_ensemble(1.01, 0.5), DomainError);
  EXPECT_THROW(make_ensemble(std::numeric_limits<double>::quiet_NaN(), 0.5), DomainError);
  EXPECT_THAT(domain_message(2.0, 0.5), HasSubstr("overlap s"));
}

TEST(MakeEnsemble, RejectsOutOfRangePrior) {
  EXPECT_THROW(make_ensemble(0.5, 0.0), DomainError);
  EXPECT_THROW(make_ensemble(0.5, 1.0), DomainError);
  EXPECT_THROW(make_ensemble(0.5, -0.2), DomainError);
  EXPECT_THAT(domain_message(0.5, 1.5), HasSubstr("eta1"));
}

TEST(OutcomeProbabilities, AveragesAndDefect) {
  const auto p = OutcomeProbabilities::from_per_state(0.6, 0.1, 0.3, 0.5, 0.2, 0.3, 0.4);
  EXPECT_NEAR(p.success, 0.4 * 0.6 + 0.6 * 0.5, 1e-15);
  EXPECT_NEAR(p.error, 0.4 * 0.1 + 0.6 * 0.2, 1e-15);
  EXPECT_NEAR(p.inconclusive, 0.3, 1e-15);
  EXPECT_LT(p.invariant_defect(0.4), 1e-15);
  auto broken = p;
  broken.p1 += 0.01;
  EXPECT_NEAR(broken.invariant_defect(0.4), 0.01, 1e-12);
}

TEST(BornProbabilities, ComputationalBasisOnOrthogonalStates) {
  const Ensemble e = make_ensemble(0.0, 0.5);
  Mat2 h = Mat2::Zero(), v = Mat2::Zero();
  h(0, 0) = 1;
  v(1, 1) = 1;
  const Povm povm({{Outcome::identify1, h},
                   {Outcome::identify2, v},
                   {Outcome::inconclusive, Mat2::Zero()}});
  const auto p = born_probabilities(e, povm);
  // Both states sit at 45 degrees from the measurement axes.
  EXPECT_NEAR(p.p1, 0.5, 1e-15);
  EXPECT_NEAR(p.p2, 0.5, 1e-15);
  EXPECT_NEAR(p.r1, 0.5, 1e-15);
  EXPECT_EQ(p.inconclusive, 0.0);
}

TEST(BornProbabilities, AllInconclusive) {
  const Ensemble e = make_ensemble(0.3, 0.2);
  const Povm povm({{Outcome::identify1, Mat2::Zero()},
                   {Outcome::identify2, Mat2::Zero()},
                   {Outcome::inconclusive, Mat2::Identity()}});
  const auto p = born_probabilities(e, povm);
  EXPECT_NEAR(p.q1, 1.0, 1e-15);
  EXPECT_NEAR(p.q2, 1.0, 1e-15);
  EXPECT_NEAR(p.inconclusive, 1.0, 1e-15);
}

TEST(BornProbabilities, OptimalMinimumErrorMeasurement) {
  const Ensemble e = make_ensemble(0.5, 0.5);
  const auto p = born_probabilities(e, from_solution(e, solve(e, 0.0)));
  EXPECT_NEAR(p.error, 0.5 * (1.0 - std::sqrt(0.75)), 1e-10);
  EXPECT_NEAR(p.error, 0.0669873, 1e-7);
}

TEST(BornProbabilities, RejectsInvalidPovm) {
  const Ensemble e = make_ensemble(0.3, 0.5);
  Mat2 big = Mat2::Zero();
  big(0, 0) = 1.2;
  Mat2 v = Mat2::Zero();
  v(1, 1) = 1;
  const Povm povm({{Outcome::identify1, big}, {Outcome::identify2, v}});
  EXPECT_THROW(born_probabilities(e, povm), ValidationError);
}

TEST(BornProbabilities, NoiseShiftsTowardHalfTrace) {
  Gen gen(11);
  const Ensemble e = make_ensemble(0.6, 0.35);
  for (int k = 0; k < 100; ++k) {
    const Povm povm = gen.povm();
    const double eps = gen.uniform(0.0, 1.0);
    const auto ideal = born_probabilities(e, povm);
    const auto noisy = born_probabilities(e, povm, Visibility(eps));
    const double half1 = 0.5 * povm.element(Outcome::identify1).trace().real();
    EXPECT_NEAR(noisy.p1, eps * ideal.p1 + (1 - eps) * half1, 1e-12);
    const double half0 = 0.5 * povm.element(Outcome::inconclusive).trace().real();
    EXPECT_NEAR(noisy.q2, eps * ideal.q2 + (1 - eps) * half0, 1e-12);
  }
}

TEST(EnsembleProperty, OverlapEqualsS) {
  Gen gen(1);
  for (int k = 0; k < 1000; ++k) {
    const double s = gen.overlap();
    const Ensemble e = make_ensemble(s, gen.any_prior());
    EXPECT_NEAR(std::abs(e.state1().overlap(e.state2())), s, 1e-12);
  }
}

TEST(EnsembleProperty, AverageDensityIsMixture) {
  Gen gen(2);
  for (int k = 0; k < 200; ++k) {
    const Ensemble e = make_ensemble(gen.overlap(), gen.any_prior());
    const Mat2 expected = e.eta1() * e.rho1().matrix() + e.eta2() * e.rho2().matrix();
    EXPECT_LT(max_abs(e.average_density().matrix() - expected), 1e-15);
    EXPECT_NEAR(e.average_density().matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(EnsembleProperty, OutcomesSumToOne) {
  Gen gen(3);
  for (int k = 0; k < 1000; ++k) {
    const Ensemble e = make_ensemble(gen.overlap(), gen.any_prior());
    const auto p = born_probabilities(e, gen.povm());
    EXPECT_NEAR(p.success + p.error + p.inconclusive, 1.0, 1e-10);
    EXPECT_LT(p.invariant_defect(e.eta1()), 1e-10);
  }
}

TEST(EnsembleProperty, BornIsLinearInThePovm) {
  Gen gen(4);
  for (int k = 0; k < 300; ++k) {
    const Ensemble e = make_ensemble(gen.overlap(), gen.any_prior());
    const Povm a = gen.povm();
    const Povm b = gen.povm();
    const double t = gen.uniform(0.0, 1.0);
    std::vector<PovmElement> mixed;
    for (std::size_t j = 0; j < 3; ++j) {
      mixed.push_back({a.elements()[j].label,
                       t * a.elements()[j].op + (1 - t) * b.elements()[j].op});
    }
    const auto pa = born_probabilities(e, a);
    const auto pb = born_probabilities(e, b);
    const auto pm = born_probabilities(e, Povm(mixed));
    EXPECT_NEAR(pm.p1, t * pa.p1 + (1 - t) * pb.p1, 1e-12);
    EXPECT_NEAR(pm.r2, t * pa.r2 + (1 - t) * pb.r2, 1e-12);
    EXPECT_NEAR(pm.q1, t * pa.q1 + (1 - t) * pb.q1, 1e-12);
  }
}

TEST(EnsembleProperty, BornMatchesTraceDirectly) {
  Gen gen(5);
  for (int k = 0; k < 200; ++k) {
    const Ensemble e = make_ensemble(gen.overlap(), gen.prior());
    const Povm povm = gen.povm();
    const auto p = born_probabilities(e, povm);
    EXPECT_NEAR(p.p1, trace_product(e.rho1().matrix(), povm.element(Outcome::identify1)),
                1e-14);
    EXPECT_NEAR(p.r1, trace_product(e.rho1().matrix(), povm.element(Outcome::identify2)),
                1e-14);
    EXPECT_NEAR(p.q2, trace_product(e.rho2().matrix(), povm.element(Outcome::inconclusive)),
                1e-14);
  }
}

TEST(QubitState, RejectsUnnormalized) {
  EXPECT_THROW(QubitState(Complex(1, 0), Complex(0.1, 0)), ValidationError);
  EXPECT_NO_THROW(QubitState(Complex(0.6, 0), Complex(0, 0.8)));
}

TEST(DensityOperator, RejectsBadMatrices) {
  Mat2 m = Mat2::Identity();
  EXPECT_THROW(DensityOperator{m}, ValidationError);  // trace 2
  m << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityOperator{m}, ValidationError);  // negative eigenvalue
  m << 0.5, Complex(0, 0.1), Complex(0, 0.1), 0.5;
  EXPECT_THROW(DensityOperator{m}, ValidationError);  // not Hermitian
  EXPECT_NO_THROW(DensityOperator::maximally_mixed());
}

}  // namespace
}  // namespace frio
