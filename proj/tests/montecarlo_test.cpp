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


#include <gtest/gtest.h>

#include <cmath>

#include "frio/circuit.hpp"
#include "frio/errors.hpp"
#include "frio/montecarlo.hpp"
#include "frio/optimal.hpp"
#include "frio/report.hpp"
#include "support.hpp"

namespace frio {
namespace {

using frio::testing::Gen;

struct Point {
  Ensemble e;
  FrioSolution sol;
  CircuitConfig cfg;
};

Point point(double s, double eta1, double q) {
  const Ensemble e = make_ensemble(s, eta1);
  const FrioSolution sol = solve(e, q);
  return {e, sol, solve_angles(e, sol).config};
}

// Noisy Born values, independently through the effective POVM.
OutcomeProbabilities noisy_theory(const Point& p, const Visibility& v) {
  return born_probabilities(p.e, effective_povm(build_unitary(p.cfg), outcome_map(p.cfg)), v);
}

struct Pair {
  Estimate est;
  double theory;
};

std::vector<Pair> pairs(const CountRecord& rec, const OutcomeProbabilities& t) {
  return {{rec.state1.success, t.p1},     {rec.state1.error, t.r1},
          {rec.state1.inconclusive, t.q1}, {rec.state2.success, t.p2},
          {rec.state2.error, t.r2},        {rec.state2.inconclusive, t.q2},
          {rec.success, t.success},        {rec.error, t.error},
          {rec.inconclusive, t.inconclusive}};
}

CountRecord manual_record(std::array<std::uint64_t, 4> s1, std::array<std::uint64_t, 4> s2) {
  CountRecord rec;
  rec.outcome_map = outcome_map(CircuitConfig{});
  rec.state1.mode_counts = s1;
  rec.state2.mode_counts = s2;
  for (auto c : s1) rec.state1.total += c;
  for (auto c : s2) rec.state2.total += c;
  return rec;
}

// Mode order H1, V1, H2, V2: identify2, identify1, dark, inconclusive.
TEST(PropagateErrors, BoundaryEstimate) {
  const CountRecord rec =
      propagate_errors(manual_record({0, 100, 0, 0}, {100, 0, 0, 0}), make_ensemble(0.3, 0.5));
  EXPECT_EQ(rec.state1.success.value, 1.0);
  EXPECT_EQ(rec.state1.success.std_error, 0.0);
  EXPECT_TRUE(rec.state1.success.boundary);
  EXPECT_TRUE(rec.state1.error.boundary);
}

TEST(PropagateErrors, BinomialStandardError) {
  const CountRecord rec =
      propagate_errors(manual_record({25, 50, 0, 25}, {50, 25, 0, 25}), make_ensemble(0.3, 0.5));
  EXPECT_DOUBLE_EQ(rec.state1.success.value, 0.5);
  EXPECT_DOUBLE_EQ(rec.state1.success.std_error, 0.05);
  EXPECT_DOUBLE_EQ(rec.state1.error.value, 0.25);
  EXPECT_DOUBLE_EQ(rec.state1.inconclusive.value, 0.25);
  EXPECT_FALSE(rec.state1.success.boundary);
}

TEST(PropagateErrors, EqualPriorsScaleByRootTwo) {
  const CountRecord rec =
      propagate_errors(manual_record({25, 50, 0, 25}, {50, 25, 0, 25}), make_ensemble(0.3, 0.5));
  EXPECT_DOUBLE_EQ(rec.success.value, 0.5);
  EXPECT_NEAR(rec.success.std_error, rec.state1.success.std_error / std::sqrt(2.0), 1e-16);
}

TEST(PropagateErrors, UnequalPriorsWeighting) {
  const Ensemble e = make_ensemble(0.3, 0.3);
  const CountRecord rec = propagate_errors(manual_record({10, 60, 0, 30}, {70, 10, 0, 20}), e);
  const double s1 = rec.state1.error.std_error, s2 = rec.state2.error.std_error;
  EXPECT_NEAR(rec.error.value, 0.3 * 0.1 + 0.7 * 0.1, 1e-15);
  EXPECT_NEAR(rec.error.std_error, std::sqrt(0.09 * s1 * s1 + 0.49 * s2 * s2), 1e-16);
}

TEST(PropagateErrors, ZeroCountsAreAnError) {
  EXPECT_THROW(propagate_errors(manual_record({0, 0, 0, 0}, {1, 0, 0, 0}), make_ensemble(0.3, 0.5)),
               DomainError);
}

TEST(AcquisitionPlan, PriorWeightedTimes) {
  const AcquisitionPlan a = AcquisitionPlan::for_priors(make_ensemble(0.5, 0.3), 1400, 10, 1);
  EXPECT_DOUBLE_EQ(a.time1, 6.0);
  EXPECT_DOUBLE_EQ(a.time2, 14.0);
  const AcquisitionPlan b = AcquisitionPlan::for_priors(make_ensemble(0.5, 0.5), 1400, 10, 1);
  EXPECT_DOUBLE_EQ(b.time1, 10.0);
  EXPECT_DOUBLE_EQ(b.time2, 10.0);
  EXPECT_THROW(AcquisitionPlan::for_priors(make_ensemble(0.5, 0.5), 0, 10, 1), DomainError);
  EXPECT_THROW(AcquisitionPlan::for_priors(make_ensemble(0.5, 0.5), 1400, -1, 1), DomainError);
}

TEST(SimulateCounts, PerfectDiscriminationLimit) {
  const Point p = point(0.0, 0.5, 0.0);
  const AcquisitionPlan plan{1e6, 10, 10, 7};
  const CountRecord rec = simulate_counts(p.e, p.cfg, Visibility::ideal(), plan);
  EXPECT_GE(rec.state1.success.value, 1.0 - 1e-9);
  EXPECT_GE(rec.state2.success.value, 1.0 - 1e-9);
  EXPECT_EQ(rec.state1.mode_counts[2], 0u);
}

TEST(SimulateCounts, CountsAddUp) {
  const Point p = point(0.5, 0.3, 0.2);
  const CountRecord rec =
      simulate_counts(p.e, p.cfg, Visibility(), AcquisitionPlan::for_priors(p.e, 1400, 10, 3));
  for (int i = 1; i <= 2; ++i) {
    std::uint64_t sum = 0;
    for (auto c : rec.state(i).mode_counts) sum += c;
    EXPECT_EQ(sum, rec.state(i).total);
    const auto& sc = rec.state(i);
    EXPECT_NEAR(sc.success.value + sc.error.value + sc.inconclusive.value, 1.0, 1e-12);
  }
  // Dark port stays dark even with noise: its mode operator vanishes.
  EXPECT_EQ(rec.state1.mode_counts[2], 0u);
}

TEST(SimulateCounts, Deterministic) {
  const Point p = point(0.5, 0.3, 0.2);
  const AcquisitionPlan plan = AcquisitionPlan::for_priors(p.e, 1400, 10, 42);
  const CountRecord a = simulate_counts(p.e, p.cfg, Visibility(), plan);
  const CountRecord b = simulate_counts(p.e, p.cfg, Visibility(), plan);
  EXPECT_EQ(a.state1.mode_counts, b.state1.mode_counts);
  EXPECT_EQ(a.state2.mode_counts, b.state2.mode_counts);
  EXPECT_EQ(a.error.value, b.error.value);
  EXPECT_EQ(a.error.std_error, b.error.std_error);
  AcquisitionPlan other = plan;
  other.seed = 43;
  const CountRecord c = simulate_counts(p.e, p.cfg, Visibility(), other);
  EXPECT_NE(a.state1.mode_counts, c.state1.mode_counts);
}

TEST(SimulateCounts, PoissonTotals) {
  const Point p = point(0.5, 0.5, 0.0);
  double sum = 0;
  constexpr int kSeeds = 400;
  for (int seed = 0; seed < kSeeds; ++seed) {
    const auto rec = simulate_counts(p.e, p.cfg, Visibility(), AcquisitionPlan{1400, 10, 10,
                                                                               std::uint64_t(seed)});
    sum += static_cast<double>(rec.state1.total);
  }
  // Mean 14000, standard error of the mean sqrt(14000 / 400).
  EXPECT_NEAR(sum / kSeeds, 14000.0, 5 * std::sqrt(14000.0 / kSeeds));
}

TEST(SplitSeed, DistinctStreams) {
  EXPECT_NE(split_seed(1, 0), split_seed(1, 1));
  EXPECT_NE(split_seed(1, 0), split_seed(2, 0));
  EXPECT_EQ(split_seed(9, 4), split_seed(9, 4));
}

TEST(MonteCarloProperty, ThreeSigmaAtMidpoint) {
  const Point p = point(0.5, 0.5, 0.25);
  const Visibility v;
  const auto theory = noisy_theory(p, v);
  int inside = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto rec = simulate_counts(p.e, p.cfg, v, AcquisitionPlan{1400, 10, 10, seed});
    for (const Pair& x : pairs(rec, theory)) {
      ++total;
      if (std::abs(x.est.value - x.theory) <= 3 * x.est.std_error) ++inside;
    }
  }
  EXPECT_GE(static_cast<double>(inside) / total, 0.95);
}

TEST(MonteCarloProperty, OneSigmaCoverage) {
  const Point p = point(0.5, 0.3, 0.2);
  const Visibility v;
  const auto theory = noisy_theory(p, v);
  int inside = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto rec = simulate_counts(p.e, p.cfg, v, AcquisitionPlan::for_priors(p.e, 1400, 10, seed));
    for (const Pair& x : pairs(rec, theory)) {
      ++total;
      if (std::abs(x.est.value - x.theory) <= x.est.std_error) ++inside;
    }
  }
  const double coverage = static_cast<double>(inside) / total;
  EXPECT_GE(coverage, 0.63);
  EXPECT_LE(coverage, 0.73);
}

TEST(MonteCarloProperty, ConsistentAtLargeCounts) {
  const Visibility v;
  std::uint64_t seed = 0;
  for (double s : report::kDefaultOverlaps) {
    for (double eta1 : {0.5, 0.3, 0.1}) {
      const Ensemble e = make_ensemble(s, eta1);
      for (double q : report::certification_q_values(e)) {
        const Point p = point(s, eta1, q);
        const auto theory = noisy_theory(p, v);
        const auto rec = simulate_counts(p.e, p.cfg, v, AcquisitionPlan{1e7, 1, 1, ++seed});
        for (const Pair& x : pairs(rec, theory)) {
          // A boundary estimate carries no spread; allow one count of slack.
          const double tolerance = std::max(5 * x.est.std_error, 1e-7);
          EXPECT_LE(std::abs(x.est.value - x.theory), tolerance)
              << "s=" << s << " eta1=" << eta1 << " Q=" << q;
        }
      }
    }
  }
}

}  // namespace
}  // namespace frio
