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

// Command-line workflows. Artifacts are byte-deterministic given identical
// inputs and seeds.
//
// Exit codes:
//   0  success (and qualified-zone pass for `check`)
//   1  `check` reported a qualified-zone failure
//   2  file syntax error
//   3  design or problem validation error
//   4  solver error (infeasible constraints, degenerate design)
//   5  usage or configuration error

#ifndef UAHAND_CLI_HPP_
#define UAHAND_CLI_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace uahand {

struct RunConfig {
  // classify | validate | simulate | profile | check | select-springs |
  // optimize
  std::string subcommand;

  std::string design_path;    // design file, or
  std::string builtin;        // "iss" for the built-in design
  std::string problem_path;   // optimize
  std::string catalog_path;   // select-springs
  std::string out_dir;        // artifact directory (created on demand)

  // "MOTOR_ANGLE:JOINT:BLOCKED_AT" entries for simulate.
  std::vector<std::string> contacts;

  // Numeric overrides; negative / unset means the documented default.
  int samples = -1;
  double stiction_override = -1.0;
  long budget = -1;
  std::int64_t seed = -1;
  int restarts = -1;
  double preload_grid = 0.05;
};

// Executes one subcommand, writing artifacts under config.out_dir and a
// short report to `out`. Returns the exit code documented above.
int run(const RunConfig& config, std::ostream& out);

}  // namespace uahand

#endif  // UAHAND_CLI_HPP_
