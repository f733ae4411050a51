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

// frio: optimal fixed-rate-of-inconclusive-outcomes discrimination of two
// qubit states. Subcommands: sweep, simulate, angles, verify.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frio/errors.hpp"
#include "frio/oracle.hpp"
#include "frio/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::vector<double> s_values = frio::report::kDefaultOverlaps;
  std::vector<double> eta1_values;
  std::string q_mode = "med";
  double visibility = frio::kMeasuredVisibility;
  double visibility_uncertainty = frio::kMeasuredVisibilityUncertainty;
  double rate = frio::kDefaultRate;
  double time = frio::kDefaultBaseTime;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::size_t budget = 100000;
  bool no_timestamp = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double single_eta1(const Options& o) {
  if (o.eta1_values.empty()) return 0.5;
  if (o.eta1_values.size() != 1) throw UsageError("this subcommand takes a single --eta1");
  return o.eta1_values.front();
}

// Writes through `emit` to --out, or stdout when --out is empty.
template <typename Emit>
void write_output(const std::string& path, Emit emit) {
  if (path.empty()) {
    emit(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + path);
  emit(file);
}

frio::report::SweepSpec sweep_spec(const Options& o, bool montecarlo) {
  frio::report::SweepSpec spec;
  spec.s_values = o.s_values;
  spec.eta1 = single_eta1(o);
  spec.q = frio::report::parse_q_selector(o.q_mode);
  spec.visibility = frio::Visibility(o.visibility, o.visibility_uncertainty);
  if (montecarlo) spec.montecarlo = frio::report::MonteCarloSettings{o.rate, o.time, o.seed};
  frio::report::validate(spec);
  return spec;
}

frio::report::Format parse_format(const std::string& f) {
  if (f == "csv") return frio::report::Format::csv;
  if (f == "json") return frio::report::Format::json;
  throw UsageError("unknown --format '" + f + "' (expected csv or json)");
}

int run_sweep(const Options& o, bool montecarlo) {
  const auto spec = sweep_spec(o, montecarlo);
  const auto format = parse_format(o.format);
  const auto report = frio::report::run_sweep(spec);
  write_output(o.out, [&](std::ostream& os) {
    frio::report::write_report(os, report, {format, !o.no_timestamp});
  });
  return kExitOk;
}

int run_angles(const Options& o) {
  if (o.s_values.size() != 1) throw UsageError("angles takes a single --s value");
  const auto q = frio::report::parse_q_selector(o.q_mode);
  const auto table = frio::report::run_angles(o.s_values.front(), single_eta1(o), q);
  write_output(o.out, [&](std::ostream& os) { frio::report::write_angle_table(os, table); });
  return kExitOk;
}

int run_verify(const Options& o) {
  frio::report::VerifyOptions vo;
  vo.s_values = o.s_values;
  if (!o.eta1_values.empty()) vo.eta1_values = o.eta1_values;
  vo.budget = o.budget;
  if (vo.budget < frio::kMinOracleBudget) {
    std::cerr << "warning: budget " << vo.budget << " is below " << frio::kMinOracleBudget
              << "; oracle points will not converge\n";
  }
  const auto report = frio::report::run_verify(vo);
  if (!o.out.empty()) {
    write_output(o.out, [&](std::ostream& os) {
      frio::report::write_verify_report(os, report, !o.no_timestamp);
    });
  }
  double worst = 0;
  for (const auto& p : report.points) worst = std::max(worst, std::abs(p.gap));
  std::cout << report.points.size() << " points, largest |gap| " << worst << '\n';
  if (const std::size_t n = report.unconverged(); n > 0) {
    std::cerr << "warning: " << n << " of " << report.points.size()
              << " oracle points did not converge within the budget\n";
  }
  if (const auto* bad = report.first_failure()) {
    using frio::shortest_repr;
    std::cout << "FAIL at s=" << shortest_repr(bad->s) << " eta1=" << shortest_repr(bad->eta1)
              << " Q=" << shortest_repr(bad->q) << " interval " << frio::to_string(bad->interval)
              << ": closed form " << shortest_repr(bad->closed_form) << ", oracle "
              << shortest_repr(bad->oracle) << ", gap " << shortest_repr(bad->gap) << '\n';
    return kExitFailure;
  }
  std::cout << "PASS\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal fixed-rate-of-inconclusive-outcomes discrimination of two qubit states"};
  app.set_config("--config", "", "Flat key = value file mirroring the flags");
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--s", o.s_values, "Overlap values, comma separated")->delimiter(',');
  app.add_option("--eta1", o.eta1_values, "Prior of state 1 (verify: comma separated grid)")
      ->delimiter(',');
  app.add_option("--q-mode", o.q_mode, "med | half | ud | absolute:<Q>");
  app.add_option("--visibility", o.visibility, "Interferometer visibility epsilon");
  app.add_option("--visibility-uncertainty", o.visibility_uncertainty,
                 "Reported uncertainty of epsilon");
  auto* rate = app.add_option("--rate", o.rate, "Coincidence rate (1/s)");
  auto* time = app.add_option("--time", o.time, "Integration time at eta = 1/2 (s)");
  auto* seed = app.add_option("--seed", o.seed, "Top-level random seed");
  app.add_option("--out", o.out, "Output file (default stdout)");
  app.add_option("--format", o.format, "csv | json");
  app.add_option("--budget", o.budget, "Oracle evaluations per grid point");
  app.add_flag("--no-timestamp", o.no_timestamp, "Omit the generation timestamp");

  auto* sweep = app.add_subcommand("sweep", "Theory (and optional Monte Carlo) sweep over s");
  auto* simulate = app.add_subcommand("simulate", "Sweep with the counting experiment simulated");
  auto* angles = app.add_subcommand("angles", "Waveplate settings for one (s, eta1, Q)");
  auto* verify = app.add_subcommand("verify", "Certify the closed forms with the brute-force oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sweep) {
      const bool montecarlo = rate->count() + time->count() + seed->count() > 0;
      return run_sweep(o, montecarlo);
    }
    if (*simulate) return run_sweep(o, true);
    if (*angles) return run_angles(o);
    if (*verify) return run_verify(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const frio::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
