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

#include <charconv>
#include <stdexcept>
#include <string>

namespace frio {

/// Shortest decimal form that reads back to the same double. For messages.
inline std::string shortest_repr(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Input outside an operation's domain (overlap, prior, Q, visibility...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A matrix, state or POVM failed its numerical invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Requested probabilities lie outside what the circuit or ansatz can realize.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, double violation)
      : std::runtime_error(what), violation_(violation) {}
  double violation() const noexcept { return violation_; }

 private:
  double violation_;
};

/// Iterative solver gave up; carries the best residual reached.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace frio
