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

// Spring force cancellation on the motor shaft.
//
// Without contact forces and with every tendon taut, the resultant spring
// torque reflected to the shaft is
//   net = sum_TA k_lead (theta_lead + preload_lead) r_mot / r_lead
//       - sum_SA k_j    (theta_j    + preload_j)    r_mot / r_j
// with "lead" the route's first stop: an MJT chain shares one tendon force,
// so it is counted once, at the proximal joint. The hand keeps pose
// unpowered wherever |net| stays below the gearbox stiction.

#ifndef UAHAND_CANCELLATION_HPP_
#define UAHAND_CANCELLATION_HPP_

#include <span>
#include <vector>

#include "uahand/hand_model.hpp"

namespace uahand {

struct ShaftTorque {
  double agonist = 0.0;     // N*mm, TA side
  double antagonist = 0.0;  // N*mm, SA side
  double net = 0.0;         // agonist - antagonist
};

struct TorqueProfile {
  std::vector<double> motor_angles;
  std::vector<double> agonist_torque;
  std::vector<double> antagonist_torque;
  std::vector<double> net_torque;  // agonist - antagonist, per sample
  double stiction = 0.0;           // N*mm
};

// One commercially available spring: a stiffness plus the preload range it
// can be assembled with.
struct SpringCatalogEntry {
  double stiffness = 0.0;    // N*mm/rad, > 0
  double preload_min = 0.0;  // rad, >= 0
  double preload_max = 0.0;  // rad, >= preload_min
};

struct ZoneCheck {
  bool pass = false;
  double worst_violation = 0.0;  // max |net| - stiction; negative when passing
  double worst_angle = 0.0;      // motor angle of the worst sample
};

struct SpringSelection {
  double stiffness = 0.0;    // applied to every SA-driven joint
  double preload = 0.0;
  double max_abs_net = 0.0;  // over the evaluated profile
  bool qualified = false;    // max_abs_net < stiction
  HandDesign design;         // input design with the chosen springs applied
};

// Spring torques reflected to the motor shaft at an arbitrary configuration.
ShaftTorque net_motor_torque(const HandDesign& design,
                             const JointConfiguration& config);

// Free-motion net torque sampled on a uniform motor-angle grid (n >= 2,
// endpoints included). Solver errors are annotated with the sample index.
TorqueProfile torque_profile(const HandDesign& design, int n_samples);

// Pass iff max |net| < stiction over the profile. Ties in the worst sample
// resolve to the first.
ZoneCheck check_qualified_zone(const TorqueProfile& profile);

// Exhaustive search over catalog entries x discretized preloads (one
// candidate applies the same stiffness and preload to every SA-driven
// joint), minimizing max |net| over the free-motion profile. Ties break
// toward lower stiffness, then lower preload, then catalog order.
// Candidates the solver rejects are skipped; throws if none survive or the
// design has no SA tendon or the catalog is empty.
// The torque curves are piecewise linear in the motor angle pre-contact and
// the grid includes both range endpoints, so the default 257 samples
// evaluate max |net| exactly for tie-breaking purposes.
SpringSelection select_adduction_springs(
    const HandDesign& design, std::span<const SpringCatalogEntry> catalog,
    double preload_grid = 0.05, int profile_samples = 257);

// Extra torque (N*mm, reflected to the shaft) a human must exceed to
// backdrive the hand at this configuration; the hand holds pose unpowered
// while external torques stay below it. Negative: pose not held.
double backdrive_margin(const HandDesign& design,
                        const JointConfiguration& config);

// The 10-entry catalog the built-in hand's abduction springs were chosen
// from.
std::vector<SpringCatalogEntry> default_spring_catalog();

}  // namespace uahand

#endif  // UAHAND_CANCELLATION_HPP_
