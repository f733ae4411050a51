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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "frio/circuit.hpp"
#include "frio/montecarlo.hpp"
#include "frio/optimal.hpp"

// Library side of the command-line tool: sweeps, angle tables and oracle
// certification, plus the CSV/JSON report writers.

namespace frio::report {

inline constexpr int kSchemaVersion = 1;

/// Default overlap grid. The values are approximate, not measured settings.
inline const std::vector<double> kDefaultOverlaps = {0.0, 0.25, 0.38, 0.5, 0.71, 0.87, 1.0};

enum class QMode { med, half, ud, absolute };

struct QSelector {
  QMode mode = QMode::med;
  double value = 0;  // absolute mode only
};

/// "med", "half", "ud" or "absolute:<value>". Throws DomainError.
QSelector parse_q_selector(const std::string& text);
std::string to_string(const QSelector& q);

/// med -> 0, half -> Q0/2, ud -> Qmax, absolute -> value (checked
/// against Qmax, DomainError otherwise).
double resolve_q(const QSelector& q, const Ensemble& e);

struct MonteCarloSettings {
  double rate = kDefaultRate;
  double base_time = kDefaultBaseTime;
  std::uint64_t seed = 0;
};

struct SweepSpec {
  std::vector<double> s_values = kDefaultOverlaps;
  double eta1 = 0.5;
  QSelector q;
  Visibility visibility;
  std::optional<MonteCarloSettings> montecarlo;
};

/// Throws DomainError for out-of-range overlaps, prior or visibility.
void validate(const SweepSpec& spec);

struct SimulatedColumns {
  Estimate p1, r1, q1, p2, r2, q2;
  Estimate success, error, inconclusive;
  std::uint64_t counts1 = 0, counts2 = 0;
};

/// One grid point. Probability columns are noisy Born values of the optimal
/// POVM at the sweep visibility, in the caller's state labels.
struct ReportRow {
  double s = 0, eta1 = 0, q = 0;
  Interval interval = Interval::I;
  OutcomeProbabilities theory;
  /// Optimal error of the ideal (noiseless) problem.
  double error_ideal = 0;
  CircuitConfig circuit;
  double angle_residual = 0;
  Povm povm;
  std::optional<SimulatedColumns> simulated;
};

struct SweepReport {
  SweepSpec spec;
  std::vector<ReportRow> rows;
};

/// Evaluates every overlap in input order. Errors at a grid point are
/// rethrown as std::runtime_error naming the point.
SweepReport run_sweep(const SweepSpec& spec);

enum class Format { csv, json };

struct WriteOptions {
  Format format = Format::csv;
  /// Adds a "# generated=" line (CSV) or "generated" key (JSON).
  bool timestamp = true;
};

void write_report(std::ostream& out, const SweepReport& report, const WriteOptions& opts);

/// Column names of the CSV header, in order.
std::vector<std::string> csv_columns(bool with_simulation);

struct AngleTable {
  double s = 0, eta1 = 0, q = 0;
  Interval interval = Interval::I;
  /// Preparation plate angle for state 1; state 2 uses the negative.
  double preparation_angle = 0;
  AngleSolution solution;
  OutcomeProbabilities target;
};

AngleTable run_angles(double s, double eta1, const QSelector& q);
void write_angle_table(std::ostream& out, const AngleTable& table);

struct VerifyOptions {
  std::vector<double> s_values = kDefaultOverlaps;
  std::vector<double> eta1_values = {0.5, 0.3, 0.1};
  std::size_t budget = 100000;
};

/// Closed-form error under test; the default is solve(e, q).probs.error.
using ErrorFormula = std::function<double(const Ensemble&, double)>;

struct VerifyPoint {
  double s = 0, eta1 = 0, q = 0;
  Interval interval = Interval::I;
  double closed_form = 0;
  double oracle = 0;
  /// oracle - closed_form.
  double gap = 0;
  bool converged = false;
};

inline constexpr double kAgreementTolerance = 1e-4;
inline constexpr double kDominanceTolerance = 1e-6;

struct VerifyReport {
  std::size_t budget = 0;
  std::vector<VerifyPoint> points;

  bool passed() const;
  std::size_t unconverged() const;
  /// First point breaking agreement or dominance, if any.
  const VerifyPoint* first_failure() const;
};

/// Five Q values per (s, eta1): {0, Q0/4, Q0/2, 3Q0/4, Q0} on interval I,
/// {0, Qth/2, Qth, (Qth + Qmax)/2, Qmax} otherwise.
std::vector<double> certification_q_values(const Ensemble& e);

VerifyReport run_verify(const VerifyOptions& opts, const ErrorFormula& formula = {});
void write_verify_report(std::ostream& out, const VerifyReport& report, bool timestamp);

}  // namespace frio::report
