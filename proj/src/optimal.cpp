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

#include "frio/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frio/errors.hpp"

namespace frio {

namespace {

constexpr double kQSlack = 1e-12;
constexpr double kRadicandSlack = 1e-12;

bool in_interval_one(double s, double eta1) { return eta1 * (1.0 + s * s) >= s * s; }

double q0_of(double s, double eta1) { return 2.0 * s * std::sqrt(eta1 * (1.0 - eta1)); }

// Qbar^2 - (Q0 - Q)^2 in factored form (1 - Q0)(1 + Q0 - 2Q).
double radicand_one_two(double q0, double q) { return (1.0 - q0) * (1.0 + q0 - 2.0 * q); }

double checked_sqrt(double x, const char* what) {
  if (x < -kRadicandSlack) {
    std::ostringstream msg;
    msg << "degenerate denominator in " << what << ": radicand " << x;
    throw DomainError(msg.str());
  }
  return std::sqrt(std::max(x, 0.0));
}

// Rounding leaves ~1e-17 negatives at the unambiguous endpoints.
double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

std::string_view to_string(Interval i) {
  switch (i) {
    case Interval::I:
      return "I";
    case Interval::II:
      return "II";
    case Interval::III:
      return "III";
  }
  return "?";
}

double helstrom_error(double s, double eta1) {
  return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * eta1 * (1.0 - eta1) * s * s));
}

QEndpoints q_endpoints(const Ensemble& e) {
  const double s = e.overlap();
  const double eta1 = e.eta1();
  const double eta2 = e.eta2();
  QEndpoints out;
  out.q0 = q0_of(s, eta1);
  if (in_interval_one(s, eta1)) {
    out.qmax = out.q0;
  } else {
    // Outside interval I, eta1 < 1/2 so Q0 < 1.
    out.qth = 2.0 * eta1 * eta2 * (1.0 - s * s) / (1.0 - out.q0);
    out.qmax = eta1 + eta2 * s * s;
  }
  return out;
}

IntervalTag classify(const Ensemble& e, double q) {
  IntervalTag tag;
  tag.endpoints = q_endpoints(e);
  if (!(q >= 0.0) || q > tag.endpoints.qmax + kQSlack) {
    throw DomainError("inconclusive rate Q = " + shortest_repr(q) +
                      " outside [0, Qmax] with Qmax = " + shortest_repr(tag.endpoints.qmax));
  }
  if (!tag.endpoints.qth) {
    tag.interval = Interval::I;
  } else if (q <= *tag.endpoints.qth) {
    tag.interval = Interval::II;
  } else {
    tag.interval = Interval::III;
  }
  return tag;
}

double error_interval_one_two(double s, double eta1, double q) {
  const double q0 = q0_of(s, eta1);
  return 0.5 * ((1.0 - q) - checked_sqrt(radicand_one_two(q0, q), "interval I/II error"));
}

double error_interval_three(double s, double eta1, double q) {
  const double eta2 = 1.0 - eta1;
  const double q0 = q0_of(s, eta1);
  const double qbar = 1.0 - q;
  const double c = eta1 * eta2 * (1.0 - s * s);
  const double root = checked_sqrt(c * (q * qbar - c), "interval III error");
  return (eta1 * qbar + c * (eta2 - eta1 - 2.0 * qbar) - q0 * root) / (1.0 - 4.0 * c);
}

FrioSolution solve(const Ensemble& e, double q) {
  FrioSolution sol;
  sol.tag = classify(e, q);
  q = std::min(q, sol.tag.endpoints.qmax);
  sol.q = q;
  const double s = e.overlap();
  const double eta1 = e.eta1();
  const double eta2 = e.eta2();
  sol.indistinguishable = s == 1.0;

  if (sol.tag.interval != Interval::III) {
    const double q0 = sol.tag.endpoints.q0;
    const double qbar = 1.0 - q;
    const double root = checked_sqrt(radicand_one_two(q0, q), "interval I/II probabilities");
    auto per_state = [&](double eta) {
      const double qi = q / (2.0 * eta);
      double ri;
      if (root == 0.0) {
        // Q0 = 1 (s = 1, equal priors): symmetric limit of the 0/0 form.
        ri = 0.5 * (1.0 - qi);
      } else {
        const double dq = q0 - q;
        ri = 0.5 * (1.0 - qi - ((1.0 - qi) * qbar - dq * dq / (2.0 * eta)) / root);
      }
      ri = clamp_unit(ri);
      return std::pair{clamp_unit(1.0 - qi - ri), ri};
    };
    const auto [p1, r1] = per_state(eta1);
    const auto [p2, r2] = per_state(eta2);
    sol.probs = OutcomeProbabilities::from_per_state(p1, r1, q / (2.0 * eta1), p2, r2,
                                                     q / (2.0 * eta2), eta1);
    return sol;
  }

  const double c = eta1 * eta2 * (1.0 - s * s);
  sol.cbar = c;
  const double pe = std::max(error_interval_three(s, eta1, q), 0.0);
  const double r1 = clamp_unit(pe / eta1);
  const double amp = s * std::sqrt(r1) + std::sqrt((1.0 - r1) * (1.0 - s * s));
  const double p2 = clamp_unit(amp * amp);
  sol.probs = OutcomeProbabilities::from_per_state(0.0, r1, 1.0 - r1, p2, 0.0, 1.0 - p2, eta1);
  return sol;
}

}  // namespace frio
