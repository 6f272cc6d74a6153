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

// Quasi-static equilibrium of a hand design at a given motor angle.
//
// The equilibrium is the minimizer of the total spring potential
//   V(theta) = sum_j 1/2 k_j (theta_j + preload_j)^2
// subject to, per tendon, the inextensibility constraint slack >= 0 with
//   slack = sum_stops pull_sign * r * (theta - theta_ref)
//           - winding * r_mot * (motor_angle - motor_ref)        [mm]
// plus joint limits and contact caps. Tendon tensions and contact torques
// are the KKT multipliers of the active constraints, so "soft" MJT position
// coupling, strict MTS coupling, breakaway, and tendon-slack decoupling all
// emerge from the same convex program.

#ifndef UAHAND_QUASISTATIC_HPP_
#define UAHAND_QUASISTATIC_HPP_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "uahand/hand_model.hpp"

namespace uahand {

// A joint's closing motion is stopped by an object at blocked_at: an upper
// cap for flexion joints, a lower cap for abduction-adduction joints (whose
// grasping motion decreases the angle). Contacts are supplied, not derived
// from object geometry.
struct ContactConstraint {
  std::string joint;
  double blocked_at = 0.0;  // rad
};

struct TendonStatus {
  std::string tendon;
  double tension = 0.0;  // N, >= 0
  double slack = 0.0;    // mm, >= 0
  bool taut = true;      // slack < kSlackTolerance
};

struct EquilibriumResult {
  JointConfiguration configuration;
  std::vector<TendonStatus> tendon_statuses;  // aligned with design.tendons
  // Signed torque (N*mm, in the +angle sense) exerted by each active
  // contact on its joint.
  std::map<std::string, double> contact_torques;
  // Same for joints resting on their own angle stops.
  std::map<std::string, double> limit_torques;
  double energy = 0.0;  // N*mm
};

enum class ClosingEvent { kTendonWentSlack, kContactActivated, kJointLimitHit };

const char* to_string(ClosingEvent event);

struct ClosingEventRecord {
  double motor_angle = 0.0;
  ClosingEvent event = ClosingEvent::kTendonWentSlack;
  std::string subject;  // tendon or joint id
};

struct ClosingTrace {
  std::vector<double> motor_angles;  // strictly increasing
  std::vector<EquilibriumResult> samples;
  std::vector<ClosingEventRecord> events;
};

// A contact that becomes (and stays) active once the motor reaches
// motor_angle during a closing simulation.
struct ScheduledContact {
  double motor_angle = 0.0;
  ContactConstraint contact;
};

inline constexpr double kSlackTolerance = 1e-6;   // mm
inline constexpr double kEnergyTolerance = 1e-9;  // N*mm

// Free length of one tendon at an arbitrary configuration. Returns the
// nonnegative slack; a raw value below -kSlackTolerance means the
// configuration would stretch the tendon and throws SolverError
// (kInfeasible). Unknown tendon ids throw PreconditionError.
double tendon_slack(const HandDesign& design, const JointConfiguration& config,
                    std::string_view tendon_id);

// Total stored spring energy sum_j 1/2 k_j (theta_j + preload_j)^2.
// Independent of the motor angle.
double potential_energy(const HandDesign& design,
                        const JointConfiguration& config);

// Equilibrium pose at the given motor angle under the given contacts.
// Throws SolverError (kInfeasible) when the constraint set is empty,
// SolverError (kDegenerateDesign) when some joint has zero stiffness, and
// PreconditionError for an out-of-range motor angle or unknown contact
// joints.
EquilibriumResult solve_pose(const HandDesign& design, double motor_angle,
                             std::span<const ContactConstraint> contacts = {});

// Brute-force oracle for solve_pose: exhaustive multilevel grid search over
// the joint box, refined until the cell size reaches `resolution`. Only the
// sampling machinery is shared with solve_pose; the minimization path is
// independent. Restricted to designs with at most 3 joints.
EquilibriumResult grid_search_pose(const HandDesign& design,
                                   double motor_angle,
                                   std::span<const ContactConstraint> contacts,
                                   double resolution);

// Solves every sample of a strictly increasing motor-angle sweep,
// accumulating scheduled contacts (a contact activates at the first sample
// at or past its motor angle and persists). Logs contact-activated,
// tendon-went-slack (first sample a previously taut tendon exceeds the
// slack tolerance) and joint-limit-hit events. Solver errors are rethrown
// annotated with the failing sample index.
ClosingTrace simulate_closing(const HandDesign& design,
                              std::span<const double> motor_angles,
                              std::span<const ScheduledContact> schedule = {});

// Evenly spaced values over [lo, hi] inclusive; n >= 2.
std::vector<double> uniform_grid(double lo, double hi, int n);

double angle_of(const HandDesign& design, const JointConfiguration& config,
                std::string_view joint_id);

}  // namespace uahand

#endif  // UAHAND_QUASISTATIC_HPP_
