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

#include "frio/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "frio/errors.hpp"

namespace frio {

namespace {

Estimate binomial_estimate(std::uint64_t count, std::uint64_t total) {
  Estimate est;
  est.value = static_cast<double>(count) / static_cast<double>(total);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(total));
  est.boundary = count == 0 || count == total;
  return est;
}

Estimate weighted(const Estimate& a, double wa, const Estimate& b, double wb) {
  Estimate out;
  out.value = wa * a.value + wb * b.value;
  out.std_error = std::sqrt(wa * wa * a.std_error * a.std_error +
                            wb * wb * b.std_error * b.std_error);
  out.boundary = a.boundary && b.boundary;
  return out;
}

}  // namespace

AcquisitionPlan AcquisitionPlan::for_priors(const Ensemble& e, double rate, double base_time,
                                            std::uint64_t seed) {
  if (!(rate > 0.0)) throw DomainError("coincidence rate must be positive");
  if (!(base_time > 0.0)) throw DomainError("integration time must be positive");
  return {rate, 2.0 * e.eta1() * base_time, 2.0 * e.eta2() * base_time, seed};
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::array<double, 4> mode_probabilities(const Ensemble& e, const CircuitConfig& cfg,
                                         const Visibility& v, int state) {
  const auto ops = mode_operators(build_unitary(cfg));
  const Mat2 rho = apply_white_noise(e.rho(state), v).matrix();
  std::array<double, 4> probs{};
  for (std::size_t m = 0; m < ops.size(); ++m) {
    probs[m] = std::max((rho * ops[m]).trace().real(), 0.0);
  }
  return probs;
}

CountRecord simulate_counts(const Ensemble& e, const CircuitConfig& cfg, const Visibility& v,
                            const AcquisitionPlan& plan) {
  if (!(plan.rate > 0.0) || !(plan.time1 > 0.0) || !(plan.time2 > 0.0)) {
    throw DomainError("acquisition plan needs positive rate and times");
  }
  CountRecord rec;
  rec.outcome_map = outcome_map(cfg);
  for (int i = 1; i <= 2; ++i) {
    std::mt19937_64 rng(split_seed(plan.seed, static_cast<std::uint64_t>(i)));
    const double expected = plan.rate * (i == 1 ? plan.time1 : plan.time2);
    const std::uint64_t total = std::poisson_distribution<std::uint64_t>(expected)(rng);

    // Multinomial split as a chain of conditional binomials.
    const auto probs = mode_probabilities(e, cfg, v, i);
    StateCounts& sc = i == 1 ? rec.state1 : rec.state2;
    sc.total = total;
    std::uint64_t remaining = total;
    double mass = 1.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
      std::uint64_t drawn = 0;
      if (m + 1 == probs.size()) {
        drawn = remaining;
      } else if (remaining > 0 && mass > 0.0) {
        const double p = std::clamp(probs[m] / mass, 0.0, 1.0);
        drawn = std::binomial_distribution<std::uint64_t>(remaining, p)(rng);
      }
      sc.mode_counts[m] = drawn;
      remaining -= drawn;
      mass -= probs[m];
    }
  }
  return propagate_errors(std::move(rec), e);
}

CountRecord propagate_errors(CountRecord rec, const Ensemble& e) {
  for (int i = 1; i <= 2; ++i) {
    StateCounts& sc = i == 1 ? rec.state1 : rec.state2;
    if (sc.total == 0) {
      std::ostringstream msg;
      msg << "no counts recorded for state " << i << "; estimators undefined";
      throw DomainError(msg.str());
    }
    std::array<std::uint64_t, 3> by_label{};
    for (std::size_t m = 0; m < sc.mode_counts.size(); ++m) {
      by_label[static_cast<int>(rec.outcome_map[m])] += sc.mode_counts[m];
    }
    const Outcome right = i == 1 ? Outcome::identify1 : Outcome::identify2;
    const Outcome wrong = i == 1 ? Outcome::identify2 : Outcome::identify1;
    sc.success = binomial_estimate(by_label[static_cast<int>(right)], sc.total);
    sc.error = binomial_estimate(by_label[static_cast<int>(wrong)], sc.total);
    sc.inconclusive =
        binomial_estimate(by_label[static_cast<int>(Outcome::inconclusive)], sc.total);
  }
  const double eta1 = e.eta1();
  const double eta2 = e.eta2();
  rec.success = weighted(rec.state1.success, eta1, rec.state2.success, eta2);
  rec.error = weighted(rec.state1.error, eta1, rec.state2.error, eta2);
  rec.inconclusive = weighted(rec.state1.inconclusive, eta1, rec.state2.inconclusive, eta2);
  return rec;
}

}  // namespace frio
