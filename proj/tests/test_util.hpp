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

#ifndef UAHAND_TESTS_TEST_UTIL_HPP_
#define UAHAND_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstdlib>

#include "uahand/hand_model.hpp"
#include "uahand/quasistatic.hpp"

namespace uahand_test {

// Single TA joint: spring k with preload, moment arm r, motor pulley r_mot.
inline uahand::HandDesign single_ta(double k = 1.0, double preload = 1.0,
                                    double r = 10.0, double r_mot = 5.0,
                                    double motor_max = 1.0) {
  uahand::HandDesign d;
  d.motor = {r_mot, 0.0, motor_max, 10.0};
  d.joints = {{"J", uahand::JointKind::kFlexion, -preload, 2.0, k, preload}};
  d.tendons = {{"flex",
                uahand::TendonRole::kTendonAgonist,
                +1,
                {{"J", r, +1}}}};
  d.reference_pose.angles = {0.0};
  d.reference_pose.motor_angle = 0.0;
  return d;
}

// Two-joint TA+MJT chain: proximal r=10, distal r=5, k=1, preload=1.
inline uahand::HandDesign two_joint_mjt() {
  uahand::HandDesign d;
  d.motor = {5.0, 0.0, 1.0, 10.0};
  d.joints = {{"P", uahand::JointKind::kFlexion, -1.0, 2.0, 1.0, 1.0},
              {"D", uahand::JointKind::kFlexion, -1.0, 2.0, 1.0, 1.0}};
  d.tendons = {{"flex",
                uahand::TendonRole::kTendonAgonist,
                +1,
                {{"P", 10.0, +1}, {"D", 5.0, +1}}}};
  d.reference_pose.angles = {0.0, 0.0};
  d.reference_pose.motor_angle = 0.0;
  return d;
}

// One TA joint plus one SA (abduction) joint on the same shaft.
inline uahand::HandDesign ta_plus_sa(double k_ta = 2.0, double p_ta = 0.5,
                                     double k_sa = 2.0, double p_sa = 0.5,
                                     double r = 10.0, double r_mot = 5.0,
                                     double motor_max = 1.0,
                                     double sa_reference = 0.6) {
  uahand::HandDesign d;
  d.motor = {r_mot, 0.0, motor_max, 10.0};
  d.joints = {{"F", uahand::JointKind::kFlexion, -p_ta, 2.0, k_ta, p_ta},
              {"A", uahand::JointKind::kAbduction, -p_sa, 2.0, k_sa, p_sa}};
  d.tendons = {
      {"flex", uahand::TendonRole::kTendonAgonist, +1, {{"F", r, +1}}},
      {"abd", uahand::TendonRole::kSpringAgonist, -1, {{"A", r, +1}}}};
  d.reference_pose.angles = {0.0, sa_reference};
  d.reference_pose.motor_angle = 0.0;
  return d;
}

// Largest per-joint stationarity residual |k(theta+p) - tendon torque -
// contact torque - limit torque| in N*mm.
inline double kkt_residual_max(const uahand::HandDesign& design,
                               const uahand::EquilibriumResult& result) {
  double worst = 0.0;
  for (size_t j = 0; j < design.joints.size(); ++j) {
    const uahand::Joint& joint = design.joints[j];
    double torque = 0.0;
    for (size_t t = 0; t < design.tendons.size(); ++t)
      for (const uahand::TendonStop& s : design.tendons[t].stops)
        if (s.joint == joint.id)
          torque += result.tendon_statuses[t].tension * s.radius *
                    s.pull_sign;
    const auto c = result.contact_torques.find(joint.id);
    if (c != result.contact_torques.end()) torque += c->second;
    const auto l = result.limit_torques.find(joint.id);
    if (l != result.limit_torques.end()) torque += l->second;
    const double spring =
        joint.stiffness * (result.configuration.angles[j] + joint.preload);
    worst = std::max(worst, std::abs(spring - torque));
  }
  return worst;
}

// Largest tension*slack product (N*mm).
inline double complementarity_max(const uahand::EquilibriumResult& result) {
  double worst = 0.0;
  for (const uahand::TendonStatus& s : result.tendon_statuses)
    worst = std::max(worst, s.tension * s.slack);
  return worst;
}

}  // namespace uahand_test

#endif  // UAHAND_TESTS_TEST_UTIL_HPP_
