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

// Parametric description of a tendon-driven underactuated hand.
//
// Units are fixed throughout the library: lengths and moment arms in mm,
// torques in N*mm, tensions in N, angles in radians.
//
// Angle convention: every joint angle is measured so that the joint spring's
// deflection is (angle + preload); the spring always restores toward
// -preload. For flexion joints +angle is flexion (the grasping direction).
// For abduction-adduction joints +angle is abduction, so the spring drives
// the joint toward adduction (grasping) as its antagonist tendon is paid out.
// The motor angle increases toward "hand closed".

#ifndef UAHAND_HAND_MODEL_HPP_
#define UAHAND_HAND_MODEL_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace uahand {

enum class JointKind { kFlexion, kAbduction };

struct Joint {
  std::string id;
  JointKind kind = JointKind::kFlexion;
  double angle_min = 0.0;  // rad
  double angle_max = 0.0;  // rad
  double stiffness = 0.0;  // N*mm/rad, >= 0
  double preload = 0.0;    // rad, >= 0; spring torque at angle 0
};

// One routing point of a tendon. pull_sign is +1 when tension pulls the
// joint toward +angle and -1 toward -angle.
struct TendonStop {
  std::string joint;
  double radius = 0.0;  // moment arm, mm, > 0
  int pull_sign = +1;
};

// TA tendons are the agonists of their joints (motor winds them in to
// close); SA tendons restrain agonist springs and are paid out to close.
enum class TendonRole { kTendonAgonist, kSpringAgonist };

struct TendonRoute {
  std::string id;
  TendonRole role = TendonRole::kTendonAgonist;
  int winding = +1;  // sign of take-up on the motor shaft; SA opposite to TA
  std::vector<TendonStop> stops;
};

struct MotorShaft {
  double radius = 0.0;     // pulley radius, mm, > 0
  double angle_min = 0.0;  // rad
  double angle_max = 0.0;  // rad
  double stiction = 0.0;   // gearbox stiction, N*mm, >= 0
};

// Joint angles aligned with HandDesign::joints, plus the motor angle.
struct JointConfiguration {
  std::vector<double> angles;
  double motor_angle = 0.0;
};

struct HandDesign {
  std::vector<Joint> joints;
  std::vector<TendonRoute> tendons;
  MotorShaft motor;
  // Datum at which every tendon is exactly taut with zero slack.
  JointConfiguration reference_pose;

  int joint_index(std::string_view id) const;   // -1 when absent
  int tendon_index(std::string_view id) const;  // -1 when absent
};

enum class AgonistChoice { kTendon, kSpring };
enum class CouplingScheme { kJointsPerTendon, kTendonsPerShaft };

// One cell of the actuation design matrix. group_size counts the coupled
// elements: stops on the route for MJT, single-stop tendons sharing the
// shaft for MTS (1 for the degenerate single-tendon single-joint case).
struct ParadigmCell {
  AgonistChoice agonist = AgonistChoice::kTendon;
  CouplingScheme coupling = CouplingScheme::kJointsPerTendon;
  int group_size = 1;
};

const char* to_string(JointKind kind);
const char* to_string(TendonRole role);
const char* to_string(AgonistChoice agonist);
const char* to_string(CouplingScheme coupling);

// Places a tendon in the design matrix. Throws PreconditionError for an
// unknown tendon id.
ParadigmCell classify_paradigm(const HandDesign& design,
                               std::string_view tendon_id);

// Checks every structural invariant; returns one human-readable violation
// per broken rule (empty list means the design is valid). Violations are
// data, not failures.
std::vector<std::string> validate_design(const HandDesign& design);

// Throws ValidationError unless validate_design(design) is empty.
void require_valid(const HandDesign& design);

// The built-in three-finger eight-joint one-motor hand: TA+MJT flexion
// chains (proximal idler + distal anchor), SA+MTS abduction tendons wound
// opposite on the shaft, motor range [0, 2*pi/3], stiction 84 N*mm.
// Abduction springs (k = 15 N*mm/rad, preload 1.70 rad) are the frozen
// result of select_adduction_springs on the documented default catalog.
HandDesign default_iss_hand();

}  // namespace uahand

#endif  // UAHAND_HAND_MODEL_HPP_
