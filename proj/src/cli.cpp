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

#include "uahand/cli.hpp"

#include <cmath>
#include <filesystem>
#include <string>

#include "uahand/cancellation.hpp"
#include "uahand/design_io.hpp"
#include "uahand/errors.hpp"
#include "uahand/quasistatic.hpp"
#include "uahand/report.hpp"
#include "uahand/synergy.hpp"

namespace uahand {
namespace {

HandDesign load_input_design(const RunConfig& config) {
  const bool has_file = !config.design_path.empty();
  const bool has_builtin = !config.builtin.empty();
  if (has_file == has_builtin)
    throw PreconditionError(
        "provide exactly one of --design FILE or --builtin NAME");
  if (has_builtin) {
    if (config.builtin != "iss")
      throw PreconditionError("unknown built-in design '" + config.builtin +
                              "' (available: iss)");
    return default_iss_hand();
  }
  return load_design(config.design_path);
}

std::string artifact_path(const RunConfig& config, const std::string& name) {
  const std::string dir = config.out_dir.empty() ? "." : config.out_dir;
  std::filesystem::create_directories(dir);
  return dir + "/" + name;
}

std::vector<ScheduledContact> parse_contacts(const RunConfig& config) {
  std::vector<ScheduledContact> schedule;
  for (const std::string& spec : config.contacts) {
    const size_t c1 = spec.find(':');
    const size_t c2 = c1 == std::string::npos ? std::string::npos
                                              : spec.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw PreconditionError("contact '" + spec +
                              "' is not MOTOR_ANGLE:JOINT:BLOCKED_AT");
    ScheduledContact sc;
    try {
      sc.motor_angle = std::stod(spec.substr(0, c1));
      sc.contact.blocked_at = std::stod(spec.substr(c2 + 1));
    } catch (const std::exception&) {
      throw PreconditionError("contact '" + spec + "' has malformed numbers");
    }
    sc.contact.joint = spec.substr(c1 + 1, c2 - c1 - 1);
    schedule.push_back(std::move(sc));
  }
  return schedule;
}

int run_classify(const RunConfig& config, std::ostream& out) {
  const HandDesign design = load_input_design(config);
  require_valid(design);
  Table table;
  table.header = {"tendon", "role", "agonist", "coupling", "group_size"};
  for (const TendonRoute& t : design.tendons) {
    const ParadigmCell cell = classify_paradigm(design, t.id);
    table.rows.push_back({t.id, to_string(t.role), to_string(cell.agonist),
                          to_string(cell.coupling),
                          std::to_string(cell.group_size)});
    out << t.id << ": " << to_string(cell.agonist) << "+"
        << to_string(cell.coupling) << " (group of " << cell.group_size
        << ")\n";
  }
  if (!config.out_dir.empty())
    table.write_csv(artifact_path(config, "classify.csv"));
  return 0;
}

int run_validate(const RunConfig& config, std::ostream& out) {
  const HandDesign design = load_input_design(config);
  const std::vector<std::string> violations = validate_design(design);
  if (violations.empty()) {
    out << "design valid: " << design.joints.size() << " joints, "
        << design.tendons.size() << " tendons\n";
    return 0;
  }
  for (const std::string& v : violations) out << "violation: " << v << "\n";
  return 3;
}

int run_simulate(const RunConfig& config, std::ostream& out) {
  const HandDesign design = load_input_design(config);
  require_valid(design);
  const int samples = config.samples > 0 ? config.samples : 100;
  if (samples < 2) throw PreconditionError("--samples must be at least 2");
  const std::vector<double> grid =
      uniform_grid(design.motor.angle_min, design.motor.angle_max, samples);
  const std::vector<ScheduledContact> schedule = parse_contacts(config);
  const ClosingTrace trace = simulate_closing(design, grid, schedule);

  Table table;
  table.header = {"motor_angle"};
  for (const Joint& j : design.joints) table.header.push_back(j.id);
  for (const TendonRoute& t : design.tendons)
    table.header.push_back("tension:" + t.id);
  for (const TendonRoute& t : design.tendons)
    table.header.push_back("slack:" + t.id);
  for (size_t i = 0; i < trace.samples.size(); ++i) {
    std::vector<std::string> row = {g9(trace.motor_angles[i])};
    for (double a : trace.samples[i].configuration.angles)
      row.push_back(g9(a));
    for (const TendonStatus& s : trace.samples[i].tendon_statuses)
      row.push_back(g9(s.tension));
    for (const TendonStatus& s : trace.samples[i].tendon_statuses)
      row.push_back(g9(s.slack));
    table.rows.push_back(std::move(row));
  }
  table.write_csv(artifact_path(config, "trace.csv"));

  Table events;
  events.header = {"motor_angle", "event", "subject"};
  for (const ClosingEventRecord& e : trace.events)
    events.rows.push_back({g9(e.motor_angle), to_string(e.event), e.subject});
  events.write_csv(artifact_path(config, "events.csv"));

  out << "simulated " << trace.samples.size() << " samples, "
      << trace.events.size() << " events\n";
  for (const ClosingEventRecord& e : trace.events)
    out << "  " << g9(e.motor_angle) << "  " << to_string(e.event) << "  "
        << e.subject << "\n";
  return 0;
}

Table profile_table(const TorqueProfile& profile) {
  Table table;
  table.header = {"motor_angle", "agonist", "antagonist",
                  "net",         "upper_band", "lower_band"};
  for (size_t i = 0; i < profile.motor_angles.size(); ++i)
    table.rows.push_back({g9(profile.motor_angles[i]),
                          g9(profile.agonist_torque[i]),
                          g9(profile.antagonist_torque[i]),
                          g9(profile.net_torque[i]), g9(profile.stiction),
                          g9(-profile.stiction)});
  return table;
}

int run_profile(const RunConfig& config, std::ostream& out) {
  HandDesign design = load_input_design(config);
  require_valid(design);
  if (config.stiction_override >= 0.0)
    design.motor.stiction = config.stiction_override;
  const int samples = config.samples > 0 ? config.samples : 1000;
  const TorqueProfile profile = torque_profile(design, samples);
  profile_table(profile).write_csv(artifact_path(config, "profile.csv"));
  const ZoneCheck check = check_qualified_zone(profile);
  out << "profile: " << samples << " samples, max |net| = "
      << g9(check.worst_violation + profile.stiction) << " N*mm\n";
  return 0;
}

int run_check(const RunConfig& config, std::ostream& out) {
  HandDesign design = load_input_design(config);
  require_valid(design);
  if (config.stiction_override >= 0.0)
    design.motor.stiction = config.stiction_override;
  const int samples = config.samples > 0 ? config.samples : 1000;
  const TorqueProfile profile = torque_profile(design, samples);
  const ZoneCheck check = check_qualified_zone(profile);
  const double max_net = check.worst_violation + profile.stiction;
  out << "qualified zone: max |net| = " << g9(max_net) << " N*mm "
      << (check.pass ? "<" : ">=") << " stiction " << g9(profile.stiction)
      << " N*mm: " << (check.pass ? "PASS" : "FAIL") << " (worst at motor angle "
      << g9(check.worst_angle) << ")\n";
  return check.pass ? 0 : 1;
}

int run_select_springs(const RunConfig& config, std::ostream& out) {
  const HandDesign design = load_input_design(config);
  require_valid(design);
  if (config.catalog_path.empty())
    throw PreconditionError("select-springs needs --catalog FILE");
  const std::vector<SpringCatalogEntry> catalog =
      load_catalog(config.catalog_path);
  const int samples = config.samples > 0 ? config.samples : 257;
  const SpringSelection selection = select_adduction_springs(
      design, catalog, config.preload_grid, samples);

  Table table;
  table.header = {"stiffness", "preload", "max_abs_net", "qualified"};
  table.rows.push_back({g9(selection.stiffness), g9(selection.preload),
                        g9(selection.max_abs_net),
                        selection.qualified ? "yes" : "no"});
  table.write_csv(artifact_path(config, "springs.csv"));
  save_design(selection.design, artifact_path(config, "selected.hand"));

  out << "selected stiffness " << g9(selection.stiffness)
      << " N*mm/rad, preload " << g9(selection.preload)
      << " rad: max |net| = " << g9(selection.max_abs_net) << " N*mm ("
      << (selection.qualified ? "qualified" : "NOT qualified") << ")\n";
  return 0;
}

int run_optimize(const RunConfig& config, std::ostream& out) {
  const HandDesign design = load_input_design(config);
  require_valid(design);
  if (config.problem_path.empty())
    throw PreconditionError("optimize needs --problem FILE");
  SynergyProblem problem = load_problem(config.problem_path, design);
  if (config.budget > 0) problem.budget = static_cast<int>(config.budget);
  if (config.seed >= 0) problem.seed = static_cast<std::uint64_t>(config.seed);
  if (config.restarts > 0) problem.restarts = config.restarts;
  if (config.samples > 0) problem.trajectory_samples = config.samples;

  const SynergyResult result = optimize_design(problem);
  save_design(result.design, artifact_path(config, "optimized.hand"));

  Table restarts;
  restarts.header = {"restart", "evaluations", "best_objective"};
  for (const RestartReport& r : result.restart_reports)
    restarts.rows.push_back({std::to_string(r.restart),
                             std::to_string(r.evaluations),
                             g9(r.best_objective)});
  restarts.write_csv(artifact_path(config, "restarts.csv"));

  Table residuals;
  residuals.header = {"grasp", "distance", "motor_angle"};
  for (size_t g = 0; g < result.residuals.size(); ++g)
    residuals.rows.push_back({std::to_string(g),
                              g9(result.residuals[g].distance),
                              g9(result.residuals[g].motor_angle)});
  residuals.write_csv(artifact_path(config, "residuals.csv"));

  out << "optimized objective " << g9(result.objective) << " after "
      << result.evaluations << " evaluations\n";
  return 0;
}

int dispatch(const RunConfig& config, std::ostream& out) {
  if (config.subcommand == "classify") return run_classify(config, out);
  if (config.subcommand == "validate") return run_validate(config, out);
  if (config.subcommand == "simulate") return run_simulate(config, out);
  if (config.subcommand == "profile") return run_profile(config, out);
  if (config.subcommand == "check") return run_check(config, out);
  if (config.subcommand == "select-springs")
    return run_select_springs(config, out);
  if (config.subcommand == "optimize") return run_optimize(config, out);
  throw PreconditionError("unknown subcommand '" + config.subcommand + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
  try {
    return dispatch(config, out);
  } catch (const ParseError& e) {
    out << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    out << "error: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    out << "solver error: " << e.what() << "\n";
    return 4;
  } catch (const PreconditionError& e) {
    out << "error: " << e.what() << "\n";
    return 5;
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return 5;
  }
}

}  // namespace uahand
