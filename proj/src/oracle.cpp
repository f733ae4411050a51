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

#include "frio/oracle.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <vector>

#include "frio/errors.hpp"

namespace frio {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-14;
constexpr std::uint64_t kStartSeed = 0x6f7261636c65ULL;

struct Problem {
  Mat2 rho1, rho2, rho;
  double eta1, eta2;
  double mass;  // 1 - Q, the weight the identification elements must carry
};

Problem make_problem(const Ensemble& e, double q) {
  const Mat2 r1 = e.rho1().matrix();
  const Mat2 r2 = e.rho2().matrix();
  return {r1, r2, e.eta1() * r1 + e.eta2() * r2, e.eta1(), e.eta2(), 1.0 - q};
}

double tr(const Mat2& a, const Mat2& b) { return (a * b).trace().real(); }

double max_eigenvalue(const Mat2& m) { return -min_eigenvalue(-m); }

struct Weights {
  bool feasible = false;
  double w1 = 0, w2 = 0;
  double error = 0;
  double violation = 0;
  // Both ends of the feasible segment on the constraint line, as (w1, w2).
  std::array<std::pair<double, double>, 2> ends{};
};

// Largest prior mass tr(rho (w1 A1 + w2 A2)) reachable with I - w1 A1 - w2 A2
// positive, scanned over weight directions. Only used to grade infeasible
// shapes.
double reachable_mass(const Problem& pb, const Mat2& a1, const Mat2& a2) {
  double best = 0.0;
  constexpr int kSteps = 32;
  for (int k = 0; k <= kSteps; ++k) {
    const double g = 0.5 * kPi * k / kSteps;
    const Mat2 dir = std::cos(g) * a1 + std::sin(g) * a2;
    const double top = max_eigenvalue(dir);
    if (top <= kTiny) continue;
    best = std::max(best, tr(pb.rho, dir) / top);
  }
  return best;
}

// Exact inner problem for fixed shapes: minimize w1 b1 + w2 b2 subject to
// w1 a1 + w2 a2 = mass, w >= 0, I - w1 A1 - w2 A2 >= 0.
Weights best_weights(const Problem& pb, const Mat2& a1, const Mat2& a2) {
  const double m1 = tr(pb.rho, a1);
  const double m2 = tr(pb.rho, a2);
  const double b1 = pb.eta2 * tr(pb.rho2, a1);
  const double b2 = pb.eta1 * tr(pb.rho1, a2);

  Weights out;
  if (std::max(m1, m2) <= kTiny) {
    out.feasible = pb.mass <= kTiny;
    out.violation = out.feasible ? 0.0 : pb.mass;
    return out;
  }

  // Dependent weight carries the larger prior mass; t is the other weight.
  const bool first_dependent = m1 >= m2;
  const Mat2& dep = first_dependent ? a1 : a2;
  const Mat2& ind = first_dependent ? a2 : a1;
  const double m_dep = first_dependent ? m1 : m2;
  const double m_ind = first_dependent ? m2 : m1;

  // Pi_0(t) = P + t D.
  const Mat2 p = Mat2::Identity() - (pb.mass / m_dep) * dep;
  const Mat2 d = (m_ind / m_dep) * dep - ind;
  const double det_p = p.determinant().real();
  const double det_d = d.determinant().real();
  const double tr_p = p.trace().real();
  const double tr_d = d.trace().real();
  const double lin = tr_p * tr_d - tr(p, d);

  double t_hi = 1.0 / std::max(max_eigenvalue(ind), kTiny);
  if (m_ind > kTiny) t_hi = std::min(t_hi, pb.mass / m_ind);

  auto det_at = [&](double t) { return det_p + t * lin + t * t * det_d; };
  auto ok = [&](double t) {
    return t >= 0.0 && t <= t_hi && det_at(t) >= -1e-13 && tr_p + t * tr_d >= -1e-13;
  };

  std::vector<double> marks = {0.0, t_hi};
  if (std::abs(det_d) > kTiny) {
    const double disc = lin * lin - 4.0 * det_d * det_p;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      // Numerically stable pair of roots.
      const double qv = -0.5 * (lin + std::copysign(sq, lin));
      if (qv != 0.0) {
        marks.push_back(qv / det_d);
        marks.push_back(det_p / qv);
      } else {
        marks.push_back(0.0);
      }
    }
  } else if (std::abs(lin) > kTiny) {
    marks.push_back(-det_p / lin);
  }
  if (std::abs(tr_d) > kTiny) marks.push_back(-tr_p / tr_d);
  std::erase_if(marks, [&](double t) { return !(t >= 0.0 && t <= t_hi); });
  std::sort(marks.begin(), marks.end());

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto take = [&](double t) {
    if (ok(t)) {
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
  };
  for (std::size_t k = 0; k < marks.size(); ++k) {
    take(marks[k]);
    if (k + 1 < marks.size()) take(0.5 * (marks[k] + marks[k + 1]));
  }
  if (!(lo <= hi)) {
    out.violation = std::max(pb.mass - reachable_mass(pb, a1, a2), 1e-12);
    return out;
  }

  auto weights_at = [&](double t) {
    const double w_dep = std::max((pb.mass - m_ind * t) / m_dep, 0.0);
    return first_dependent ? std::pair{w_dep, t} : std::pair{t, w_dep};
  };
  out.feasible = true;
  double best = std::numeric_limits<double>::infinity();
  out.ends = {weights_at(lo), weights_at(hi)};
  for (const auto& [w1, w2] : out.ends) {
    const double err = w1 * b1 + w2 * b2;
    if (err < best) {
      best = err;
      out.w1 = w1;
      out.w2 = w2;
    }
  }
  out.error = best;
  return out;
}

Mat2 projector(double polar, double azimuth) {
  const Vec2 v(std::cos(0.5 * polar), std::polar(std::sin(0.5 * polar), azimuth));
  return v * v.adjoint();
}

// Trace-normalized L L^dagger with L = [[x0, 0], [x1 + i x2, x3]].
std::optional<Mat2> cholesky_shape(const double* x) {
  Mat2 l;
  l << Complex(x[0], 0.0), Complex(0.0, 0.0), Complex(x[1], x[2]), Complex(x[3], 0.0);
  const Mat2 a = l * l.adjoint();
  const double t = a.trace().real();
  if (!(t > kTiny)) return std::nullopt;
  return Mat2(a / t);
}

using Objective = std::function<double(const double*)>;

struct SearchOutcome {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  std::size_t evaluations = 0;
  bool converged = false;
};

struct GslTrampoline {
  const Objective* f;
  std::size_t* evaluations;
};

double gsl_objective(const gsl_vector* v, void* params) {
  auto* tp = static_cast<GslTrampoline*>(params);
  ++*tp->evaluations;
  return (*tp->f)(v->data);
}

// Nelder-Mead from `start`, restarted at its own optimum until a restart
// stops improving or the budget runs out.
SearchOutcome nelder_mead(const Objective& f, std::vector<double> start, double step,
                          std::size_t budget) {
  constexpr double kSizeTolerance = 1e-11;
  constexpr std::size_t kStallIterations = 100;
  const std::size_t n = start.size();
  SearchOutcome out;
  out.x = start;

  GslTrampoline tp{&f, &out.evaluations};
  gsl_multimin_function fn{&gsl_objective, n, &tp};
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* steps = gsl_vector_alloc(n);
  gsl_multimin_fminimizer* s =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);

  for (int round = 0; round < 8 && out.evaluations < budget; ++round) {
    for (std::size_t k = 0; k < n; ++k) gsl_vector_set(x, k, out.x[k]);
    gsl_vector_set_all(steps, round == 0 ? step : 0.1 * step);
    gsl_multimin_fminimizer_set(s, &fn, x, steps);
    bool settled = false;
    // Flat directions keep the simplex from shrinking, so a long run without
    // any decrease of the minimum also ends the round.
    double last = std::numeric_limits<double>::infinity();
    std::size_t stalled = 0;
    while (out.evaluations < budget) {
      if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), kSizeTolerance) ==
          GSL_SUCCESS) {
        settled = true;
        break;
      }
      const double now = gsl_multimin_fminimizer_minimum(s);
      stalled = now < last - 1e-16 ? 0 : stalled + 1;
      last = std::min(last, now);
      if (stalled >= kStallIterations * n) {
        settled = true;
        break;
      }
    }
    const double value = gsl_multimin_fminimizer_minimum(s);
    const bool improved = value < out.value - 1e-15;
    if (value <= out.value) {
      out.value = value;
      const gsl_vector* best = gsl_multimin_fminimizer_x(s);
      out.x.assign(best->data, best->data + n);
    }
    out.converged = settled || (round > 0 && !improved);
    if (round > 0 && !improved) break;
  }

  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(steps);
  gsl_vector_free(x);
  return out;
}

// One evaluated POVM. Infeasible candidates only carry their violation.
struct Candidate {
  bool feasible = false;
  double error = 0;
  double violation = 0;
  Mat2 pi1 = Mat2::Zero();
  Mat2 pi2 = Mat2::Zero();
};

double objective_value(const Candidate& c) { return c.feasible ? c.error : 1.0 + c.violation; }

// Inconclusive element Pi_0 = l1 |n><n| + l2 |n'><n'| with tr(rho Pi_0) = Q
// built from (polar, azimuth, u). The eigenvalue carrying the smaller prior
// weight is free on its admissible range, reached through sin^2(u); the
// other follows from the constraint.
struct InconclusivePart {
  Mat2 pi0;
  Mat2 root_rest;  // (I - Pi_0)^{1/2}
};

InconclusivePart inconclusive_part(const Problem& pb, const double* x) {
  const Vec2 n(std::cos(0.5 * x[0]), std::polar(std::sin(0.5 * x[0]), x[1]));
  const Vec2 m(-std::conj(n(1)), std::conj(n(0)));
  const double a = std::clamp((n.adjoint() * pb.rho * n)(0, 0).real(), 0.0, 1.0);
  const double q = 1.0 - pb.mass;

  const bool n_dependent = a >= 0.5;
  const double c_dep = n_dependent ? a : 1.0 - a;
  const double c_ind = 1.0 - c_dep;
  double lo = 0.0, hi = 1.0;
  if (c_ind > kTiny) {
    lo = std::clamp((q - c_dep) / c_ind, 0.0, 1.0);
    hi = std::clamp(q / c_ind, 0.0, 1.0);
  }
  const double u = std::sin(x[2]);
  const double l_ind = lo + (hi - lo) * u * u;
  const double l_dep = std::clamp((q - c_ind * l_ind) / c_dep, 0.0, 1.0);
  const double ln = n_dependent ? l_dep : l_ind;
  const double lm = n_dependent ? l_ind : l_dep;

  const Mat2 pn = n * n.adjoint();
  const Mat2 pm = m * m.adjoint();
  return {ln * pn + lm * pm, std::sqrt(1.0 - ln) * pn + std::sqrt(1.0 - lm) * pm};
}

// For a fixed Pi_0 the rest I - Pi_0 = R^2 is split as R E R and R (I - E) R.
// The error is linear in E, so the optimal E projects onto the positive
// eigenspace of R (eta1 rho1 - eta2 rho2) R.
Candidate evaluate_inconclusive(const Problem& pb, const double* x) {
  const InconclusivePart part = inconclusive_part(pb, x);
  const Mat2& r = part.root_rest;
  Mat2 gamma = r * (pb.eta1 * pb.rho1 - pb.eta2 * pb.rho2) * r;
  gamma = 0.5 * (gamma + gamma.adjoint()).eval();
  const Eigen::SelfAdjointEigenSolver<Mat2> solver(gamma);
  Mat2 e = Mat2::Zero();
  for (int k = 0; k < 2; ++k) {
    if (solver.eigenvalues()(k) > 0.0) {
      const Vec2 v = solver.eigenvectors().col(k);
      e += v * v.adjoint();
    }
  }
  Candidate c;
  c.feasible = true;
  c.pi1 = r * e * r;
  c.pi2 = r * (Mat2::Identity() - e) * r;
  c.error = pb.eta2 * tr(pb.rho2, c.pi1) + pb.eta1 * tr(pb.rho1, c.pi2);
  return c;
}

Candidate evaluate_full_rank(const Problem& pb, const double* x) {
  const auto a1 = cholesky_shape(x);
  const auto a2 = cholesky_shape(x + 4);
  Candidate c;
  if (!a1 || !a2) {
    c.violation = pb.mass;
    return c;
  }
  const Weights w = best_weights(pb, *a1, *a2);
  c.feasible = w.feasible;
  c.violation = w.violation;
  c.error = w.error;
  c.pi1 = w.w1 * *a1;
  c.pi2 = w.w2 * *a2;
  return c;
}

// w |pi><pi| from the top eigenpair, with the global phase fixed so the
// first amplitude is real and non-negative.
void rank_one(const Mat2& op, double& w, double& polar, double& azimuth) {
  const Eigen::SelfAdjointEigenSolver<Mat2> solver(0.5 * (op + op.adjoint()));
  w = std::max(solver.eigenvalues()(1), 0.0);
  Vec2 v = solver.eigenvectors().col(1);
  if (std::abs(v(0)) > 0.0) v *= std::conj(v(0)) / std::abs(v(0));
  polar = 2.0 * std::atan2(std::abs(v(1)), v(0).real());
  azimuth = std::abs(v(1)) > 0.0 ? std::arg(v(1)) : 0.0;
}

template <typename Evaluate, typename Draw>
OracleResult multistart(const Problem& pb, std::size_t dim, std::size_t budget,
                        Evaluate evaluate, Draw draw) {
  const Objective f = [&](const double* x) { return objective_value(evaluate(pb, x)); };
  const std::size_t per_start = std::max<std::size_t>(budget / kOracleStarts, 1);
  std::mt19937_64 rng(kStartSeed);

  SearchOutcome best;
  std::size_t evaluations = 0;
  for (int k = 0; k < kOracleStarts; ++k) {
    std::vector<double> start(dim);
    for (std::size_t j = 0; j < dim; ++j) start[j] = draw(rng, j);
    SearchOutcome run = nelder_mead(f, start, 0.5, per_start);
    evaluations += run.evaluations;
    if (run.value < best.value) best = std::move(run);
  }

  const Candidate c = evaluate(pb, best.x.data());
  if (!c.feasible) {
    std::ostringstream msg;
    msg << "oracle found no POVM meeting the inconclusive-rate constraint; best violation "
        << c.violation;
    throw InfeasibleError(msg.str(), c.violation);
  }
  OracleResult out;
  out.error = c.error;
  out.evaluations = evaluations;
  out.converged = best.converged && budget >= kMinOracleBudget;
  rank_one(c.pi1, out.ansatz.w1, out.ansatz.polar1, out.ansatz.azimuth1);
  rank_one(c.pi2, out.ansatz.w2, out.ansatz.polar2, out.ansatz.azimuth2);
  const Mat2 pi0 = Mat2::Identity() - c.pi1 - c.pi2;
  out.constraint_violation = std::abs(tr(pb.rho, pi0) - (1.0 - pb.mass));
  out.min_inconclusive_eigenvalue = min_eigenvalue(pi0);
  return out;
}

}  // namespace

std::vector<double> PovmAnsatz::encode() const {
  return {w1, w2, polar1, azimuth1, polar2, azimuth2};
}

PovmAnsatz PovmAnsatz::decode(std::span<const double> params) {
  if (params.size() != kSize) {
    throw DomainError("POVM ansatz needs exactly 6 parameters");
  }
  return {params[0], params[1], params[2], params[3], params[4], params[5]};
}

Mat2 PovmAnsatz::identify1() const { return w1 * projector(polar1, azimuth1); }
Mat2 PovmAnsatz::identify2() const { return w2 * projector(polar2, azimuth2); }
Mat2 PovmAnsatz::inconclusive() const {
  return Mat2::Identity() - identify1() - identify2();
}

Povm PovmAnsatz::povm() const {
  return Povm({{Outcome::identify1, identify1()},
               {Outcome::identify2, identify2()},
               {Outcome::inconclusive, inconclusive()}});
}

OracleResult minimize_error(const Ensemble& e, double q, std::size_t budget) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("inconclusive rate must lie in [0, 1]");
  const Problem pb = make_problem(e, q);
  auto draw = [](std::mt19937_64& rng, std::size_t j) {
    const double span = j == 1 ? 2.0 * kPi : kPi;
    return std::uniform_real_distribution<double>(0.0, span)(rng);
  };
  return multistart(pb, 3, budget, evaluate_inconclusive, draw);
}

OracleResult minimize_error_full_rank(const Ensemble& e, double q, std::size_t budget) {
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("inconclusive rate must lie in [0, 1]");
  const Problem pb = make_problem(e, q);
  auto draw = [](std::mt19937_64& rng, std::size_t) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  };
  return multistart(pb, 8, budget, evaluate_full_rank, draw);
}

std::vector<FeasibleSample> sample_feasible(const Ensemble& e, double q, std::size_t n,
                                            std::uint64_t seed) {
  if (n == 0) throw DomainError("sample count must be at least 1");
  const Problem pb = make_problem(e, q);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);

  std::vector<FeasibleSample> out;
  const std::size_t max_attempts = 100 * n;
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < n; ++attempt) {
    const double x[3] = {angle(rng), angle(rng), angle(rng)};
    const InconclusivePart part = inconclusive_part(pb, x);
    // Random split of the rest: any projector E gives a valid POVM.
    const Mat2 split = projector(angle(rng), angle(rng));
    const Mat2 pi1 = part.root_rest * split * part.root_rest;
    const Mat2 pi2 = part.root_rest * (Mat2::Identity() - split) * part.root_rest;
    PovmAnsatz a;
    rank_one(pi1, a.w1, a.polar1, a.azimuth1);
    rank_one(pi2, a.w2, a.polar2, a.azimuth2);
    const Mat2 pi0 = a.inconclusive();
    const double gap = std::abs(tr(pb.rho, pi0) - q);
    if (min_eigenvalue(pi0) < -kEigenvalueTolerance || gap > 1e-6) {
      closest = std::min(closest, gap);
      continue;
    }
    const double err = pb.eta2 * tr(pb.rho2, a.identify1()) + pb.eta1 * tr(pb.rho1, a.identify2());
    out.push_back({a, err});
  }
  if (out.size() < n) {
    std::ostringstream msg;
    msg << "found only " << out.size() << " of " << n
        << " feasible POVMs; best constraint violation " << closest;
    throw InfeasibleError(msg.str(), closest);
  }
  return out;
}

}  // namespace frio
