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

#include "uahand/cancellation.hpp"

#include <cmath>
#include <set>
#include <string>

#include "uahand/errors.hpp"
#include "uahand/quasistatic.hpp"

namespace uahand {

ShaftTorque net_motor_torque(const HandDesign& design,
                             const JointConfiguration& config) {
  if (config.angles.size() != design.joints.size())
    throw PreconditionError("configuration does not match the design");
  ShaftTorque torque;
  for (const TendonRoute& route : design.tendons) {
    if (route.stops.empty()) continue;
    // One tendon, one force: counted once at the lead (proximal) stop.
    const TendonStop& lead = route.stops.front();
    const size_t j = static_cast<size_t>(design.joint_index(lead.joint));
    const Joint& joint = design.joints[j];
    const double term = joint.stiffness *
                        (config.angles[j] + joint.preload) *
                        design.motor.radius / lead.radius;
    if (route.role == TendonRole::kTendonAgonist)
      torque.agonist += term;
    else
      torque.antagonist += term;
  }
  torque.net = torque.agonist - torque.antagonist;
  return torque;
}

TorqueProfile torque_profile(const HandDesign& design, int n_samples) {
  if (n_samples < 2)
    throw PreconditionError("torque_profile needs at least 2 samples");
  TorqueProfile profile;
  profile.stiction = design.motor.stiction;
  profile.motor_angles =
      uniform_grid(design.motor.angle_min, design.motor.angle_max, n_samples);
  profile.agonist_torque.reserve(profile.motor_angles.size());
  profile.antagonist_torque.reserve(profile.motor_angles.size());
  profile.net_torque.reserve(profile.motor_angles.size());
  for (size_t i = 0; i < profile.motor_angles.size(); ++i) {
    EquilibriumResult eq;
    try {
      eq = solve_pose(design, profile.motor_angles[i]);
    } catch (const SolverError& e) {
      throw SolverError(e.kind, "profile sample " + std::to_string(i) + ": " +
                                    e.what());
    }
    const ShaftTorque t = net_motor_torque(design, eq.configuration);
    profile.agonist_torque.push_back(t.agonist);
    profile.antagonist_torque.push_back(t.antagonist);
    profile.net_torque.push_back(t.net);
  }
  return profile;
}

ZoneCheck check_qualified_zone(const TorqueProfile& profile) {
  if (profile.net_torque.empty())
    throw PreconditionError("empty torque profile");
  size_t worst = 0;
  for (size_t i = 1; i < profile.net_torque.size(); ++i)
    if (std::abs(profile.net_torque[i]) > std::abs(profile.net_torque[worst]))
      worst = i;
  ZoneCheck check;
  check.worst_violation =
      std::abs(profile.net_torque[worst]) - profile.stiction;
  check.worst_angle = profile.motor_angles[worst];
  check.pass = check.worst_violation < 0.0;
  return check;
}

SpringSelection select_adduction_springs(
    const HandDesign& design, std::span<const SpringCatalogEntry> catalog,
    double preload_grid, int profile_samples) {
  if (catalog.empty()) throw PreconditionError("empty spring catalog");
  if (!(preload_grid > 0.0))
    throw PreconditionError("preload grid resolution must be positive");
  for (const SpringCatalogEntry& e : catalog) {
    if (!(e.stiffness > 0.0) || e.preload_min < 0.0 ||
        e.preload_max < e.preload_min)
      throw PreconditionError("invalid spring catalog entry");
  }

  std::set<size_t> sa_joints;
  for (const TendonRoute& t : design.tendons)
    if (t.role == TendonRole::kSpringAgonist)
      for (const TendonStop& s : t.stops)
        sa_joints.insert(static_cast<size_t>(design.joint_index(s.joint)));
  if (sa_joints.empty())
    throw PreconditionError(
        "design has no SA tendon: nothing to select springs for");

  bool have_best = false;
  SpringSelection best;
  for (size_t ci = 0; ci < catalog.size(); ++ci) {
    const SpringCatalogEntry& entry = catalog[ci];
    for (int pi = 0;; ++pi) {
      const double preload = entry.preload_min + pi * preload_grid;
      if (preload > entry.preload_max + 1e-9) break;

      HandDesign candidate = design;
      for (size_t j : sa_joints) {
        candidate.joints[j].stiffness = entry.stiffness;
        candidate.joints[j].preload = preload;
      }
      if (!validate_design(candidate).empty()) continue;

      double max_abs = 0.0;
      try {
        const TorqueProfile p = torque_profile(candidate, profile_samples);
        for (double net : p.net_torque) max_abs = std::max(max_abs,
                                                           std::abs(net));
      } catch (const SolverError&) {
        continue;
      }

      const bool better =
          !have_best || max_abs < best.max_abs_net ||
          (max_abs == best.max_abs_net &&
           (entry.stiffness < best.stiffness ||
            (entry.stiffness == best.stiffness && preload < best.preload)));
      if (better) {
        have_best = true;
        best.stiffness = entry.stiffness;
        best.preload = preload;
        best.max_abs_net = max_abs;
        best.qualified = max_abs < design.motor.stiction;
        best.design = std::move(candidate);
      }
    }
  }
  if (!have_best)
    throw SolverError(SolverErrorKind::kInfeasible,
                      "every spring candidate was infeasible for the solver");
  return best;
}

double backdrive_margin(const HandDesign& design,
                        const JointConfiguration& config) {
  return design.motor.stiction - std::abs(net_motor_torque(design,
                                                           config).net);
}

std::vector<SpringCatalogEntry> default_spring_catalog() {
  std::vector<SpringCatalogEntry> catalog;
  for (double k : {5.0, 8.0, 10.0, 12.0, 15.0, 20.0, 25.0, 30.0, 40.0, 60.0})
    catalog.push_back({k, 0.0, 2.0});
  return catalog;
}

}  // namespace uahand
