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

#include "uahand/hand_model.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "uahand/errors.hpp"

namespace uahand {

int HandDesign::joint_index(std::string_view id) const {
  for (size_t i = 0; i < joints.size(); ++i)
    if (joints[i].id == id) return static_cast<int>(i);
  return -1;
}

int HandDesign::tendon_index(std::string_view id) const {
  for (size_t i = 0; i < tendons.size(); ++i)
    if (tendons[i].id == id) return static_cast<int>(i);
  return -1;
}

const char* to_string(JointKind kind) {
  return kind == JointKind::kFlexion ? "flexion" : "abduction";
}

const char* to_string(TendonRole role) {
  return role == TendonRole::kTendonAgonist ? "ta" : "sa";
}

const char* to_string(AgonistChoice agonist) {
  return agonist == AgonistChoice::kTendon ? "TA" : "SA";
}

const char* to_string(CouplingScheme coupling) {
  return coupling == CouplingScheme::kJointsPerTendon ? "MJT" : "MTS";
}

ParadigmCell classify_paradigm(const HandDesign& design,
                               std::string_view tendon_id) {
  const int idx = design.tendon_index(tendon_id);
  if (idx < 0)
    throw PreconditionError("unknown tendon id '" + std::string(tendon_id) +
                            "'");
  const TendonRoute& route = design.tendons[static_cast<size_t>(idx)];
  ParadigmCell cell;
  cell.agonist = route.role == TendonRole::kTendonAgonist
                     ? AgonistChoice::kTendon
                     : AgonistChoice::kSpring;
  if (route.stops.size() >= 2) {
    cell.coupling = CouplingScheme::kJointsPerTendon;
    cell.group_size = static_cast<int>(route.stops.size());
  } else {
    // Single joint per tendon: the coupling set is every single-stop tendon
    // sharing the motor shaft (1 in the degenerate single-tendon case).
    cell.coupling = CouplingScheme::kTendonsPerShaft;
    int group = 0;
    for (const TendonRoute& t : design.tendons)
      if (t.stops.size() == 1) ++group;
    cell.group_size = group;
  }
  return cell;
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

std::vector<std::string> validate_design(const HandDesign& design) {
  std::vector<std::string> out;
  const auto add = [&out](const std::string& s) { out.push_back(s); };

  if (!(design.motor.radius > 0.0))
    add("motor.radius: must be positive, got " + num(design.motor.radius));
  if (!(design.motor.angle_min < design.motor.angle_max))
    add("motor: angle_min (" + num(design.motor.angle_min) +
        ") must be below angle_max (" + num(design.motor.angle_max) + ")");
  if (design.motor.stiction < 0.0)
    add("motor.stiction: must be nonnegative, got " +
        num(design.motor.stiction));

  std::set<std::string> joint_ids;
  for (const Joint& j : design.joints) {
    const std::string where = "joint " + j.id;
    if (j.id.empty()) add("joint: empty id");
    if (!joint_ids.insert(j.id).second) add(where + ": duplicate id");
    if (!(j.angle_min < j.angle_max))
      add(where + ": angle_min (" + num(j.angle_min) +
          ") must be below angle_max (" + num(j.angle_max) + ")");
    if (j.stiffness < 0.0)
      add(where + ".stiffness: must be nonnegative, got " + num(j.stiffness));
    if (j.preload < 0.0)
      add(where + ".preload: must be nonnegative, got " + num(j.preload));
    if (j.angle_min < -j.preload)
      add(where + ": spring goes slack within the range (angle_min " +
          num(j.angle_min) + " below -preload " + num(-j.preload) + ")");
  }

  std::set<std::string> tendon_ids;
  std::set<std::string> routed_joints;
  for (const TendonRoute& t : design.tendons) {
    const std::string where = "tendon " + t.id;
    if (t.id.empty()) add("tendon: empty id");
    if (!tendon_ids.insert(t.id).second) add(where + ": duplicate id");
    if (t.winding != 1 && t.winding != -1)
      add(where + ".winding: must be +1 or -1, got " + num(t.winding));
    if (t.stops.empty()) add(where + ": route has no stops");
    for (const TendonStop& s : t.stops) {
      const std::string stop = where + " stop " + s.joint;
      if (design.joint_index(s.joint) < 0)
        add(stop + ": references unknown joint");
      if (!(s.radius > 0.0))
        add(stop + ".radius: moment arm must be positive, got " +
            num(s.radius));
      if (s.pull_sign != 1 && s.pull_sign != -1)
        add(stop + ".sign: must be +1 or -1, got " + num(s.pull_sign));
      if (!routed_joints.insert(s.joint).second)
        add(stop + ": joint appears in more than one tendon stop");
    }
  }
  for (const TendonRoute& t : design.tendons) {
    if (t.role != TendonRole::kSpringAgonist) continue;
    for (const TendonRoute& u : design.tendons) {
      if (u.role != TendonRole::kTendonAgonist) continue;
      if (t.winding != -u.winding) {
        add("tendon " + t.id +
            ".winding: SA tendon must wind opposite to TA tendon " + u.id);
        break;
      }
    }
  }

  if (design.reference_pose.angles.size() != design.joints.size()) {
    add("reference_pose: has " + num(design.reference_pose.angles.size()) +
        " angles for " + num(design.joints.size()) + " joints");
  } else {
    for (size_t i = 0; i < design.joints.size(); ++i) {
      const Joint& j = design.joints[i];
      const double a = design.reference_pose.angles[i];
      if (a < j.angle_min || a > j.angle_max)
        add("reference_pose." + j.id + ": angle " + num(a) +
            " outside [" + num(j.angle_min) + ", " + num(j.angle_max) + "]");
    }
  }
  const double mref = design.reference_pose.motor_angle;
  if (mref < design.motor.angle_min || mref > design.motor.angle_max)
    add("reference_pose.motor_angle: " + num(mref) + " outside motor range");

  return out;
}

void require_valid(const HandDesign& design) {
  std::vector<std::string> violations = validate_design(design);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

HandDesign default_iss_hand() {
  constexpr double kTwoPiOverThree = 2.0943951023931953;

  HandDesign d;
  d.motor = MotorShaft{6.0, 0.0, kTwoPiOverThree, 84.0};

  const auto flexion = [](const char* id) {
    return Joint{id, JointKind::kFlexion, -0.2, 1.6, 30.0, 0.3};
  };
  // Abduction spring values frozen from select_adduction_springs on the
  // default catalog (see default_spring_catalog): max |net| = 52.08 N*mm.
  const auto abduction = [](const char* id) {
    return Joint{id, JointKind::kAbduction, 0.0, 1.6, 15.0, 1.70};
  };
  d.joints = {flexion("TP"),   flexion("TD"),   flexion("F1P"),
              flexion("F1D"),  flexion("F2P"),  flexion("F2D"),
              abduction("F1A"), abduction("F2A")};

  const auto flex_tendon = [](const char* id, const char* prox,
                              const char* dist) {
    return TendonRoute{id,
                       TendonRole::kTendonAgonist,
                       +1,
                       {TendonStop{prox, 8.0, +1}, TendonStop{dist, 6.0, +1}}};
  };
  const auto abd_tendon = [](const char* id, const char* joint) {
    return TendonRoute{
        id, TendonRole::kSpringAgonist, -1, {TendonStop{joint, 8.0, +1}}};
  };
  d.tendons = {flex_tendon("T_flex", "TP", "TD"),
               flex_tendon("F1_flex", "F1P", "F1D"),
               flex_tendon("F2_flex", "F2P", "F2D"),
               abd_tendon("F1_abd", "F1A"), abd_tendon("F2_abd", "F2A")};

  // Fully open datum: flexion joints extended, abduction joints spread so
  // the SA tendons stay taut over the whole motor travel
  // (1.58 > (r_mot/r) * 2*pi/3 = pi/2).
  d.reference_pose.angles = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.58, 1.58};
  d.reference_pose.motor_angle = 0.0;
  return d;
}

}  // namespace uahand
