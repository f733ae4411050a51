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

#include "frio/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "frio/errors.hpp"
#include "frio/oracle.hpp"

namespace frio::report {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

SimulatedColumns simulated_columns(const CountRecord& rec, bool swap_labels) {
  const StateCounts& a = swap_labels ? rec.state2 : rec.state1;
  const StateCounts& b = swap_labels ? rec.state1 : rec.state2;
  SimulatedColumns out;
  out.p1 = a.success;
  out.r1 = a.error;
  out.q1 = a.inconclusive;
  out.p2 = b.success;
  out.r2 = b.error;
  out.q2 = b.inconclusive;
  out.success = rec.success;
  out.error = rec.error;
  out.inconclusive = rec.inconclusive;
  out.counts1 = a.total;
  out.counts2 = b.total;
  return out;
}

ReportRow evaluate_point(const SweepSpec& spec, std::size_t index) {
  const double s = spec.s_values[index];
  const Ensemble e = make_ensemble(s, spec.eta1);
  ReportRow row;
  row.s = s;
  row.eta1 = spec.eta1;
  row.q = resolve_q(spec.q, e);
  const FrioSolution sol = solve(e, row.q);
  row.interval = sol.tag.interval;
  row.error_ideal = sol.probs.error;
  const AngleSolution angles = solve_angles(e, sol);
  row.circuit = angles.config;
  row.angle_residual = angles.residual;
  row.povm = effective_povm(build_unitary(angles.config), outcome_map(angles.config));
  row.theory = e.to_caller_labels(born_probabilities(e, row.povm, spec.visibility));
  if (spec.montecarlo) {
    const auto& mc = *spec.montecarlo;
    const AcquisitionPlan plan =
        AcquisitionPlan::for_priors(e, mc.rate, mc.base_time, split_seed(mc.seed, index));
    const CountRecord rec = simulate_counts(e, angles.config, spec.visibility, plan);
    row.simulated = simulated_columns(rec, e.labels_swapped());
  }
  return row;
}

void append_estimate(std::vector<std::string>& cells, const Estimate& est) {
  cells.push_back(fmt(est.value));
  cells.push_back(fmt(est.std_error));
}

std::vector<std::string> csv_cells(const ReportRow& row) {
  const auto& t = row.theory;
  const PhysicalAngles deg = physical_angles(row.circuit);
  std::vector<std::string> cells = {
      fmt(row.s),  fmt(row.eta1), fmt(row.q),  std::string(to_string(row.interval)),
      fmt(t.p1),   fmt(t.r1),     fmt(t.q1),   fmt(t.p2),
      fmt(t.r2),   fmt(t.q2),     fmt(t.success), fmt(t.error),
      fmt(t.inconclusive),        fmt(row.error_ideal),
      fmt(row.circuit.theta),     fmt(row.circuit.theta1),
      fmt(row.circuit.theta2),    fmt(row.circuit.theta3),
      fmt(deg.theta_deg),         fmt(deg.theta1_deg),
      fmt(deg.theta2_deg),        fmt(deg.theta3_deg),
      row.circuit.two_outcome ? "1" : "0", fmt(row.angle_residual)};
  if (row.simulated) {
    const auto& m = *row.simulated;
    cells.push_back(std::to_string(m.counts1));
    cells.push_back(std::to_string(m.counts2));
    for (const Estimate* est :
         {&m.p1, &m.r1, &m.q1, &m.p2, &m.r2, &m.q2, &m.success, &m.error, &m.inconclusive}) {
      append_estimate(cells, *est);
    }
  }
  return cells;
}

Json estimate_json(const Estimate& est) {
  return Json{{"value", est.value}, {"std_error", est.std_error}, {"boundary", est.boundary}};
}

Json povm_json(const Povm& povm) {
  Json out = Json::array();
  for (const auto& el : povm.elements()) {
    Json entries = Json::array();
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        entries.push_back(Json::array({el.op(r, c).real(), el.op(r, c).imag()}));
      }
    }
    out.push_back(Json{{"label", std::string(to_string(el.label))}, {"matrix", entries}});
  }
  return out;
}

Json circuit_json(const CircuitConfig& cfg, double residual) {
  const PhysicalAngles deg = physical_angles(cfg);
  return Json{{"theta", cfg.theta},
              {"theta1", cfg.theta1},
              {"theta2", cfg.theta2},
              {"theta3", cfg.theta3},
              {"two_outcome", cfg.two_outcome},
              {"physical_deg",
               Json{{"theta", deg.theta_deg},
                    {"theta1", deg.theta1_deg},
                    {"theta2", deg.theta2_deg},
                    {"theta3", deg.theta3_deg}}},
              {"residual", residual}};
}

Json spec_json(const SweepSpec& spec) {
  Json out{{"s_values", spec.s_values},
           {"s_values_approximate", spec.s_values == kDefaultOverlaps},
           {"eta1", spec.eta1},
           {"q_mode", to_string(spec.q)},
           {"visibility", spec.visibility.epsilon()},
           {"visibility_uncertainty", spec.visibility.uncertainty()}};
  if (spec.montecarlo) {
    out["montecarlo"] = Json{{"rate", spec.montecarlo->rate},
                             {"base_time", spec.montecarlo->base_time},
                             {"seed", spec.montecarlo->seed}};
  } else {
    out["montecarlo"] = nullptr;
  }
  return out;
}

void write_csv(std::ostream& out, const SweepReport& report, const WriteOptions& opts) {
  const SweepSpec& spec = report.spec;
  out << "# schema=" << kSchemaVersion << '\n';
  if (opts.timestamp) out << "# generated=" << utc_timestamp() << '\n';
  out << "# eta1=" << fmt(spec.eta1) << " q_mode=" << to_string(spec.q)
      << " visibility=" << fmt(spec.visibility.epsilon())
      << " visibility_uncertainty=" << fmt(spec.visibility.uncertainty());
  if (spec.montecarlo) {
    out << " rate=" << fmt(spec.montecarlo->rate) << " base_time=" << fmt(spec.montecarlo->base_time)
        << " seed=" << spec.montecarlo->seed;
  }
  if (spec.s_values == kDefaultOverlaps) out << " s_grid=default(approximate)";
  out << '\n';

  const auto columns = csv_columns(spec.montecarlo.has_value());
  for (std::size_t k = 0; k < columns.size(); ++k) out << (k ? "," : "") << columns[k];
  out << '\n';
  for (const auto& row : report.rows) {
    const auto cells = csv_cells(row);
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << '\n';
  }
}

void write_json(std::ostream& out, const SweepReport& report, const WriteOptions& opts) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  if (opts.timestamp) doc["generated"] = utc_timestamp();
  doc["spec"] = spec_json(report.spec);
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    const auto& t = row.theory;
    Json j{{"s", row.s},
           {"eta1", row.eta1},
           {"Q", row.q},
           {"interval", std::string(to_string(row.interval))},
           {"p1", t.p1},
           {"r1", t.r1},
           {"q1", t.q1},
           {"p2", t.p2},
           {"r2", t.r2},
           {"q2", t.q2},
           {"Ps", t.success},
           {"Pe", t.error},
           {"Q_avg", t.inconclusive},
           {"Pe_ideal", row.error_ideal},
           {"circuit", circuit_json(row.circuit, row.angle_residual)},
           {"povm", povm_json(row.povm)}};
    if (row.simulated) {
      const auto& m = *row.simulated;
      j["simulated"] = Json{{"counts1", m.counts1},
                            {"counts2", m.counts2},
                            {"p1", estimate_json(m.p1)},
                            {"r1", estimate_json(m.r1)},
                            {"q1", estimate_json(m.q1)},
                            {"p2", estimate_json(m.p2)},
                            {"r2", estimate_json(m.r2)},
                            {"q2", estimate_json(m.q2)},
                            {"Ps", estimate_json(m.success)},
                            {"Pe", estimate_json(m.error)},
                            {"Q_avg", estimate_json(m.inconclusive)}};
    }
    rows.push_back(std::move(j));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

std::string describe_point(double s, double eta1) {
  std::ostringstream out;
  out << "grid point s=" << shortest_repr(s) << " eta1=" << shortest_repr(eta1);
  return out.str();
}

}  // namespace

QSelector parse_q_selector(const std::string& text) {
  if (text == "med") return {QMode::med, 0};
  if (text == "half") return {QMode::half, 0};
  if (text == "ud") return {QMode::ud, 0};
  const std::string prefix = "absolute:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string number = text.substr(prefix.size());
    std::size_t used = 0;
    double value = 0;
    try {
      value = std::stod(number, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != number.size() || !(value >= 0.0 && value <= 1.0)) {
      throw DomainError("q-mode absolute value must be a number in [0, 1]: " + text);
    }
    return {QMode::absolute, value};
  }
  throw DomainError("unknown q-mode '" + text + "' (expected med, half, ud or absolute:<Q>)");
}

std::string to_string(const QSelector& q) {
  switch (q.mode) {
    case QMode::med:
      return "med";
    case QMode::half:
      return "half";
    case QMode::ud:
      return "ud";
    case QMode::absolute:
      return "absolute:" + fmt(q.value);
  }
  return "?";
}

double resolve_q(const QSelector& q, const Ensemble& e) {
  const QEndpoints ends = q_endpoints(e);
  switch (q.mode) {
    case QMode::med:
      return 0.0;
    case QMode::half:
      return 0.5 * ends.q0;
    case QMode::ud:
      return ends.qmax;
    case QMode::absolute:
      classify(e, q.value);  // throws with Qmax when out of range
      return q.value;
  }
  return 0.0;
}

void validate(const SweepSpec& spec) {
  if (spec.s_values.empty()) throw DomainError("at least one overlap value is required");
  for (double s : spec.s_values) make_ensemble(s, spec.eta1);
  if (spec.montecarlo) {
    if (!(spec.montecarlo->rate > 0.0)) throw DomainError("rate must be positive");
    if (!(spec.montecarlo->base_time > 0.0)) throw DomainError("time must be positive");
  }
}

SweepReport run_sweep(const SweepSpec& spec) {
  validate(spec);
  SweepReport report{spec, {}};
  report.rows.reserve(spec.s_values.size());
  for (std::size_t k = 0; k < spec.s_values.size(); ++k) {
    try {
      report.rows.push_back(evaluate_point(spec, k));
    } catch (const std::exception& ex) {
      throw std::runtime_error(describe_point(spec.s_values[k], spec.eta1) + ": " + ex.what());
    }
  }
  return report;
}

std::vector<std::string> csv_columns(bool with_simulation) {
  std::vector<std::string> cols = {
      "s",         "eta1",      "Q",          "interval",   "p1",         "r1",
      "q1",        "p2",        "r2",         "q2",         "Ps",         "Pe",
      "Q_avg",     "Pe_ideal",  "theta",      "theta1",     "theta2",     "theta3",
      "theta_deg", "theta1_deg", "theta2_deg", "theta3_deg", "two_outcome", "angle_residual"};
  if (with_simulation) {
    cols.push_back("counts1");
    cols.push_back("counts2");
    for (const char* name : {"p1", "r1", "q1", "p2", "r2", "q2", "Ps", "Pe", "Q_avg"}) {
      cols.push_back(std::string(name) + "_hat");
      cols.push_back(std::string(name) + "_err");
    }
  }
  return cols;
}

void write_report(std::ostream& out, const SweepReport& report, const WriteOptions& opts) {
  if (opts.format == Format::csv) {
    write_csv(out, report, opts);
  } else {
    write_json(out, report, opts);
  }
}

AngleTable run_angles(double s, double eta1, const QSelector& q) {
  const Ensemble e = make_ensemble(s, eta1);
  AngleTable table;
  table.s = s;
  table.eta1 = eta1;
  table.q = resolve_q(q, e);
  const FrioSolution sol = solve(e, table.q);
  table.interval = sol.tag.interval;
  table.preparation_angle = e.preparation_angle();
  table.solution = solve_angles(e, sol);
  table.target = e.to_caller_labels(sol.probs);
  return table;
}

void write_angle_table(std::ostream& out, const AngleTable& t) {
  constexpr double kDeg = 180.0 / std::numbers::pi;
  const CircuitConfig& cfg = t.solution.config;
  const PhysicalAngles deg = physical_angles(cfg);
  // Adding +0.0 turns a negative zero into a positive one.
  const double prep2 = -t.preparation_angle + 0.0;
  out << std::setprecision(10);
  out << "s = " << t.s << "  eta1 = " << t.eta1 << "  Q = " << t.q << "  interval "
      << to_string(t.interval) << '\n';
  out << "preparation HWP: state 1 theta = " << t.preparation_angle << " rad ("
      << t.preparation_angle * kDeg << " deg), state 2 theta = " << prep2 << " rad ("
      << prep2 * kDeg + 0.0 << " deg)\n";
  out << "plate  effective_rad     physical_deg\n";
  out << "HWP1   " << std::setw(16) << cfg.theta1 + 0.0 << "  " << std::setw(14) << deg.theta1_deg + 0.0
      << '\n';
  out << "HWP2   " << std::setw(16) << cfg.theta2 + 0.0 << "  " << std::setw(14) << deg.theta2_deg + 0.0
      << '\n';
  out << "HWP3   " << std::setw(16) << cfg.theta3 + 0.0 << "  " << std::setw(14) << deg.theta3_deg + 0.0
      << '\n';
  out << "mode: " << (cfg.two_outcome ? "two-outcome (V1 inconclusive, H1 identify 2)"
                                      : "three-outcome (V1 identify 1, H1 identify 2, V2 inconclusive)")
      << '\n';
  const auto& p = t.target;
  out << "target state 1: p=" << p.p1 << " r=" << p.r1 << " q=" << p.q1 << '\n';
  out << "target state 2: p=" << p.p2 << " r=" << p.r2 << " q=" << p.q2 << '\n';
  out << "residual " << std::scientific << t.solution.residual << std::defaultfloat << '\n';
}

bool VerifyReport::passed() const { return first_failure() == nullptr; }

std::size_t VerifyReport::unconverged() const {
  std::size_t n = 0;
  for (const auto& p : points) n += p.converged ? 0 : 1;
  return n;
}

const VerifyPoint* VerifyReport::first_failure() const {
  for (const auto& p : points) {
    if (p.gap > kAgreementTolerance || p.gap < -kDominanceTolerance) return &p;
  }
  return nullptr;
}

std::vector<double> certification_q_values(const Ensemble& e) {
  const QEndpoints ends = q_endpoints(e);
  if (!ends.qth) {
    const double q0 = ends.q0;
    return {0.0, 0.25 * q0, 0.5 * q0, 0.75 * q0, q0};
  }
  const double qth = *ends.qth;
  return {0.0, 0.5 * qth, qth, 0.5 * (qth + ends.qmax), ends.qmax};
}

VerifyReport run_verify(const VerifyOptions& opts, const ErrorFormula& formula) {
  VerifyReport report;
  report.budget = opts.budget;
  for (double s : opts.s_values) {
    for (double eta1 : opts.eta1_values) {
      const Ensemble e = make_ensemble(s, eta1);
      for (double q : certification_q_values(e)) {
        VerifyPoint p;
        p.s = s;
        p.eta1 = eta1;
        p.q = q;
        try {
          p.interval = classify(e, q).interval;
          p.closed_form = formula ? formula(e, q) : solve(e, q).probs.error;
          const OracleResult oracle = minimize_error(e, q, opts.budget);
          p.oracle = oracle.error;
          p.converged = oracle.converged;
        } catch (const std::exception& ex) {
          std::ostringstream msg;
          msg << describe_point(s, eta1) << " Q=" << shortest_repr(q) << ": " << ex.what();
          throw std::runtime_error(msg.str());
        }
        p.gap = p.oracle - p.closed_form;
        report.points.push_back(p);
      }
    }
  }
  return report;
}

void write_verify_report(std::ostream& out, const VerifyReport& report, bool timestamp) {
  Json doc;
  doc["schema"] = kSchemaVersion;
  if (timestamp) doc["generated"] = utc_timestamp();
  doc["budget"] = report.budget;
  doc["agreement_tolerance"] = kAgreementTolerance;
  doc["dominance_tolerance"] = kDominanceTolerance;
  doc["passed"] = report.passed();
  doc["unconverged"] = report.unconverged();
  Json points = Json::array();
  for (const auto& p : report.points) {
    points.push_back(Json{{"s", p.s},
                          {"eta1", p.eta1},
                          {"Q", p.q},
                          {"interval", std::string(to_string(p.interval))},
                          {"closed_form", p.closed_form},
                          {"oracle", p.oracle},
                          {"gap", p.gap},
                          {"converged", p.converged}});
  }
  doc["points"] = std::move(points);
  out << doc.dump(2) << '\n';
}

}  // namespace frio::report
