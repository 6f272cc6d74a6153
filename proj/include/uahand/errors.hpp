// Copyright 2026 The uahand Authors
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

#ifndef UAHAND_ERRORS_HPP_
#define UAHAND_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace uahand {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input text. Lines and columns are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}

  int line;
  int column;
};

// A design (or problem) that violates its invariants. Violations are data:
// the full list is preserved so callers can report all of them at once.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations(std::move(violations)) {}

  std::vector<std::string> violations;

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "design validation failed:";
    for (const auto& line : v) s += "\n  - " + line;
    return s;
  }
};

enum class SolverErrorKind {
  kInfeasible,        // constraint set has no feasible point
  kDegenerateDesign,  // zero-stiffness joint: minimizer not unique
  kIterationLimit,    // active-set iteration cap exceeded
  kNoFeasibleSample,  // grid oracle found no feasible grid point
};

class SolverError : public Error {
 public:
  SolverError(SolverErrorKind kind, const std::string& what)
      : Error(what), kind(kind) {}

  SolverErrorKind kind;
};

// Violated operation precondition (out-of-range motor angle, unknown id, ...).
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

}  // namespace uahand

#endif  // UAHAND_ERRORS_HPP_
