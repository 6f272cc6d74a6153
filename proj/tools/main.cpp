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

#include <iostream>

#include <CLI11.hpp>

#include "uahand/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"uahand: model, analyze and optimize tendon-driven "
               "underactuated hands"};
  app.require_subcommand(1);

  uahand::RunConfig config;

  const auto add_design = [&config](CLI::App* sub) {
    sub->add_option("--design", config.design_path, "design file");
    sub->add_option("--builtin", config.builtin,
                    "built-in design name (iss)");
  };
  const auto add_out = [&config](CLI::App* sub) {
    sub->add_option("--out", config.out_dir,
                    "output directory (default: current)");
  };

  CLI::App* classify =
      app.add_subcommand("classify", "place each tendon in the design matrix");
  add_design(classify);
  add_out(classify);

  CLI::App* validate =
      app.add_subcommand("validate", "check design invariants");
  add_design(validate);

  CLI::App* simulate =
      app.add_subcommand("simulate", "closing sweep over the motor range");
  add_design(simulate);
  add_out(simulate);
  simulate->add_option("--samples", config.samples, "motor angle samples");
  simulate->add_option("--contact", config.contacts,
                       "MOTOR_ANGLE:JOINT:BLOCKED_AT (repeatable)");

  CLI::App* profile =
      app.add_subcommand("profile", "net shaft torque over the motor range");
  add_design(profile);
  add_out(profile);
  profile->add_option("--samples", config.samples, "motor angle samples");
  profile->add_option("--stiction", config.stiction_override,
                      "override gearbox stiction (N*mm)");

  CLI::App* check = app.add_subcommand(
      "check", "qualified-zone test: |net| < stiction everywhere");
  add_design(check);
  check->add_option("--samples", config.samples, "motor angle samples");
  check->add_option("--stiction", config.stiction_override,
                    "override gearbox stiction (N*mm)");

  CLI::App* select = app.add_subcommand(
      "select-springs", "pick SA springs minimizing max |net|");
  add_design(select);
  add_out(select);
  select->add_option("--catalog", config.catalog_path, "spring catalog file")
      ->required();
  select->add_option("--grid", config.preload_grid,
                     "preload grid resolution (rad)");
  select->add_option("--samples", config.samples, "profile samples");

  CLI::App* optimize = app.add_subcommand(
      "optimize", "fit underactuation parameters to target grasps");
  add_design(optimize);
  add_out(optimize);
  optimize->add_option("--problem", config.problem_path, "problem file")
      ->required();
  optimize->add_option("--budget", config.budget, "objective evaluations");
  optimize->add_option("--seed", config.seed, "random seed");
  optimize->add_option("--restarts", config.restarts, "restart count");
  optimize->add_option("--samples", config.samples,
                       "trajectory samples per evaluation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 5;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  return uahand::run(config, std::cout);
}
