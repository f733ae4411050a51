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

#include "frio/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "frio/errors.hpp"

namespace frio {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFeasibilitySlack = 1e-9;

Mat4 block_diag(const Mat2& path1, const Mat2& path2) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<2, 2>() = path1;
  m.bottomRightCorner<2, 2>() = path2;
  return m;
}

Mat4 pbs_cnot() {
  Mat4 m = Mat4::Identity();
  m.row(0).swap(m.row(2));
  return m;
}

// Unitary up to (but excluding) the final plate on path 1.
Mat4 interferometer_core(double theta1, double theta2) {
  const Mat2 id = Mat2::Identity();
  const Mat4 cnot = pbs_cnot();
  const Mat2 w1 = half_wave_plate(theta1);
  return cnot * block_diag(id, half_wave_plate(theta2)) * cnot * block_diag(w1, w1);
}

Vec4 on_path_one(const QubitState& state) {
  return Vec4(state[0], state[1], Complex(0.0), Complex(0.0));
}

struct Target {
  double p1, r1, q1, p2, r2, q2;
};

Target target_of(const FrioSolution& sol) {
  const auto& p = sol.probs;
  return {p.p1, p.r1, p.q1, p.p2, p.r2, p.q2};
}

// Realized per-state probabilities under the config's outcome map.
Target realized(const Ensemble& e, const CircuitConfig& cfg) {
  const OutcomeMap map = outcome_map(cfg);
  std::array<std::array<double, 3>, 2> by_label{};  // [state][Outcome]
  for (int i = 1; i <= 2; ++i) {
    const OutcomeAmplitudes amps = propagate(cfg, e.state(i));
    for (DetectorMode m : kDetectorModes) {
      by_label[i - 1][static_cast<int>(map[static_cast<int>(m)])] += amps.probability(m);
    }
  }
  constexpr int k1 = static_cast<int>(Outcome::identify1);
  constexpr int k2 = static_cast<int>(Outcome::identify2);
  constexpr int k0 = static_cast<int>(Outcome::inconclusive);
  return {by_label[0][k1], by_label[0][k2], by_label[0][k0],
          by_label[1][k2], by_label[1][k1], by_label[1][k0]};
}

double residual_of(const Target& want, const Target& got) {
  return std::max({std::abs(want.p1 - got.p1), std::abs(want.r1 - got.r1),
                   std::abs(want.q1 - got.q1), std::abs(want.p2 - got.p2),
                   std::abs(want.r2 - got.r2), std::abs(want.q2 - got.q2)});
}

void check_realizable(const Target& t) {
  for (double v : {t.p1, t.r1, t.q1, t.p2, t.r2, t.q2}) {
    if (!(v >= -kFeasibilitySlack && v <= 1.0 + kFeasibilitySlack)) {
      throw InfeasibleError("target probability outside [0, 1]", std::abs(v));
    }
  }
  const double sum1 = t.p1 + t.r1 + t.q1;
  const double sum2 = t.p2 + t.r2 + t.q2;
  const double defect = std::max(std::abs(sum1 - 1.0), std::abs(sum2 - 1.0));
  if (defect > kFeasibilitySlack) {
    throw InfeasibleError("target probabilities do not sum to one", defect);
  }
}

// Damped Gauss-Newton (Levenberg-Marquardt) on the angles flagged free,
// matching (p1, q1, q2, r2). Central-difference Jacobian.
CircuitConfig polish(const Ensemble& e, CircuitConfig cfg, const Target& want) {
  constexpr int kMaxIterations = 200;
  constexpr double kStep = 1e-7;
  constexpr double kResidualTolerance = 1e-12;

  auto angles = [](const CircuitConfig& c) {
    return Eigen::Vector3d(c.theta1, c.theta2, c.theta3);
  };
  auto with = [&](const Eigen::Vector3d& x) {
    CircuitConfig c = cfg;
    c.theta1 = x(0);
    c.theta2 = x(1);
    c.theta3 = x(2);
    return c;
  };
  auto residual = [&](const Eigen::Vector3d& x) {
    const Target got = realized(e, with(x));
    return Eigen::Vector4d(got.p1 - want.p1, got.q1 - want.q1, got.q2 - want.q2,
                           got.r2 - want.r2);
  };
  // Two-outcome mode keeps theta1 = theta2 = 0.
  const int first_free = cfg.two_outcome ? 2 : 0;

  Eigen::Vector3d x = angles(cfg);
  Eigen::Vector4d f = residual(x);
  double lambda = 1e-3;
  for (int it = 0; it < kMaxIterations && f.cwiseAbs().maxCoeff() > kResidualTolerance; ++it) {
    Eigen::Matrix<double, 4, 3> jac = Eigen::Matrix<double, 4, 3>::Zero();
    for (int k = first_free; k < 3; ++k) {
      Eigen::Vector3d hi = x, lo = x;
      hi(k) += kStep;
      lo(k) -= kStep;
      jac.col(k) = (residual(hi) - residual(lo)) / (2.0 * kStep);
    }
    const Eigen::Matrix3d jtj = jac.transpose() * jac;
    const Eigen::Vector3d grad = jac.transpose() * f;
    bool improved = false;
    for (int tries = 0; tries < 30 && !improved; ++tries) {
      Eigen::Matrix3d damped = jtj;
      for (int k = 0; k < 3; ++k) damped(k, k) += lambda * (1.0 + jtj(k, k));
      const Eigen::Vector3d step = damped.ldlt().solve(-grad);
      const Eigen::Vector3d trial = x + step;
      const Eigen::Vector4d ft = residual(trial);
      if (ft.squaredNorm() < f.squaredNorm()) {
        x = trial;
        f = ft;
        lambda = std::max(lambda / 3.0, 1e-15);
        improved = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!improved) break;
  }
  return with(x);
}

// theta3 making |V1|^2 = p1 for state 1, for the given sign branch.
double final_plate_angle(const Ensemble& e, double theta1, double theta2, double p1,
                         int branch) {
  const Vec4 mid = interferometer_core(theta1, theta2) * on_path_one(e.state1());
  const double x = mid(0).real();
  const double y = mid(1).real();
  const double norm2 = x * x + y * y;
  if (p1 > norm2 + kFeasibilitySlack) {
    throw InfeasibleError("success probability exceeds the light left in path 1",
                          p1 - norm2);
  }
  const double ratio = norm2 > 0.0 ? std::clamp(p1 / norm2, 0.0, 1.0) : 0.0;
  return std::atan2(y, x) + branch * std::asin(std::sqrt(ratio));
}

std::vector<CircuitConfig> seeds(const Ensemble& e, const Target& want, bool equal_priors) {
  const double alpha = e.alpha();
  CircuitConfig base;
  base.theta = e.preparation_angle();
  std::vector<CircuitConfig> out;

  // Closed-form seeds.
  double theta1 = 0.0;
  double theta2 = 0.0;
  if (!equal_priors && want.q1 > 0.0 && std::tan(alpha) > 0.0) {
    // q1 / q2 = cos^2(alpha - theta1) / cos^2(alpha + theta1) = eta2 / eta1.
    const double k = std::sqrt(e.eta2() / e.eta1());
    theta1 = std::atan((k - 1.0) / ((k + 1.0) * std::tan(alpha)));
  }
  const double c = std::cos(alpha - theta1);
  if (want.q1 > 0.0) {
    const double sin2 = want.q1 / (c * c);
    if (sin2 > 1.0 + kFeasibilitySlack) {
      throw InfeasibleError("inconclusive probability exceeds the H component", sin2 - 1.0);
    }
    theta2 = std::asin(std::sqrt(std::min(sin2, 1.0)));
  }
  if (equal_priors) {
    CircuitConfig cfg = base;
    cfg.theta2 = theta2;
    cfg.theta3 = kPi / 4.0;
    out.push_back(cfg);
  }
  for (int branch : {+1, -1}) {
    CircuitConfig cfg = base;
    cfg.theta1 = theta1;
    cfg.theta2 = theta2;
    cfg.theta3 = final_plate_angle(e, theta1, theta2, want.p1, branch);
    out.push_back(cfg);
  }

  // Fixed restart grid.
  for (double t1 : {-kPi / 8.0, kPi / 8.0}) {
    for (double t2 : {kPi / 6.0, kPi / 3.0}) {
      for (double t3 : {kPi / 8.0, 3.0 * kPi / 8.0}) {
        CircuitConfig cfg = base;
        cfg.theta1 = t1;
        cfg.theta2 = t2;
        cfg.theta3 = t3;
        out.push_back(cfg);
      }
    }
  }
  return out;
}

}  // namespace

Mat2 half_wave_plate(double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  Mat2 m;
  m << c, s, s, -c;
  return m;
}

PhysicalAngles physical_angles(const CircuitConfig& cfg) {
  constexpr double kDeg = 180.0 / kPi;
  return {cfg.theta * kDeg, 0.5 * cfg.theta1 * kDeg, 0.5 * cfg.theta2 * kDeg,
          0.5 * cfg.theta3 * kDeg};
}

CircuitUnitary build_unitary(const CircuitConfig& cfg) {
  const Mat4 last = block_diag(half_wave_plate(cfg.theta3), Mat2::Identity());
  return {last * interferometer_core(cfg.theta1, cfg.theta2)};
}

OutcomeMap outcome_map(const CircuitConfig& cfg) {
  OutcomeMap map{};
  map[static_cast<int>(DetectorMode::H1)] = Outcome::identify2;
  map[static_cast<int>(DetectorMode::H2)] = Outcome::inconclusive;
  map[static_cast<int>(DetectorMode::V2)] = Outcome::inconclusive;
  map[static_cast<int>(DetectorMode::V1)] =
      cfg.two_outcome ? Outcome::inconclusive : Outcome::identify1;
  return map;
}

Complex OutcomeAmplitudes::amplitude(DetectorMode m) const {
  switch (m) {
    case DetectorMode::H1:
      return h1;
    case DetectorMode::V1:
      return v1;
    case DetectorMode::H2:
      return h2;
    case DetectorMode::V2:
      return v2;
  }
  return {};
}

double OutcomeAmplitudes::total_probability() const {
  return std::norm(v1) + std::norm(h1) + std::norm(v2) + std::norm(h2);
}

OutcomeAmplitudes propagate(const CircuitConfig& cfg, const QubitState& state) {
  const Vec4 out = build_unitary(cfg).matrix * on_path_one(state);
  return {out(1), out(0), out(3), out(2)};
}

AngleSolution solve_angles(const Ensemble& e, const FrioSolution& sol) {
  const Target want = target_of(sol);
  check_realizable(want);

  AngleSolution best;
  best.residual = std::numeric_limits<double>::infinity();

  if (sol.tag.interval == Interval::III) {
    // Single rotation: |H1|^2 = cos^2(alpha + theta3) = r1 for state 1.
    CircuitConfig cfg;
    cfg.theta = e.preparation_angle();
    cfg.two_outcome = true;
    cfg.theta3 = std::acos(std::sqrt(std::clamp(want.r1, 0.0, 1.0))) - e.alpha();
    cfg = polish(e, cfg, want);
    best = {cfg, residual_of(want, realized(e, cfg)), 1};
  } else {
    const bool equal_priors = std::abs(e.eta1() - 0.5) < 1e-15;
    int attempt = 0;
    for (const CircuitConfig& seed : seeds(e, want, equal_priors)) {
      ++attempt;
      CircuitConfig cfg = seed;
      double res = residual_of(want, realized(e, cfg));
      if (res > 1e-13) {
        cfg = polish(e, cfg, want);
        res = residual_of(want, realized(e, cfg));
      }
      if (res < best.residual) best = {cfg, res, attempt};
      if (best.residual <= kAngleSuccessThreshold) break;
    }
  }

  if (!(best.residual <= kAngleSuccessThreshold)) {
    std::ostringstream msg;
    msg << "angle solver did not converge: best residual " << best.residual;
    throw SolverError(msg.str(), best.residual);
  }
  return best;
}

}  // namespace frio
