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

#include <doctest.h>

#include "test_util.hpp"
#include "uahand/errors.hpp"
#include "uahand/hand_model.hpp"
#include "uahand/quasistatic.hpp"

using namespace uahand;

TEST_CASE("default hand has 8 joints, 5 tendons, one motor") {
  const HandDesign d = default_iss_hand();
  CHECK(d.joints.size() == 8);
  CHECK(d.tendons.size() == 5);
  CHECK(d.motor.angle_max - d.motor.angle_min ==
        doctest::Approx(2.0943951023931953).epsilon(1e-15));
  CHECK(d.motor.stiction == 84.0);
  CHECK(validate_design(d).empty());
}

TEST_CASE("default hand is taut at the reference pose") {
  const HandDesign d = default_iss_hand();
  for (const TendonRoute& t : d.tendons)
    CHECK(tendon_slack(d, d.reference_pose, t.id) == 0.0);
}

TEST_CASE("classify: flexion chains are TA+MJT, abduction tendons SA+MTS") {
  const HandDesign d = default_iss_hand();

  const ParadigmCell flex = classify_paradigm(d, "F1_flex");
  CHECK(flex.agonist == AgonistChoice::kTendon);
  CHECK(flex.coupling == CouplingScheme::kJointsPerTendon);
  CHECK(flex.group_size == 2);

  const ParadigmCell abd = classify_paradigm(d, "F1_abd");
  CHECK(abd.agonist == AgonistChoice::kSpring);
  CHECK(abd.coupling == CouplingScheme::kTendonsPerShaft);
  CHECK(abd.group_size == 2);

  int ta_mjt = 0, sa_mts = 0;
  for (const TendonRoute& t : d.tendons) {
    const ParadigmCell cell = classify_paradigm(d, t.id);
    if (cell.agonist == AgonistChoice::kTendon &&
        cell.coupling == CouplingScheme::kJointsPerTendon)
      ++ta_mjt;
    if (cell.agonist == AgonistChoice::kSpring &&
        cell.coupling == CouplingScheme::kTendonsPerShaft)
      ++sa_mts;
  }
  CHECK(ta_mjt == 3);
  CHECK(sa_mts == 2);
}

TEST_CASE("classify: single-tendon single-joint design degenerates to MTS") {
  const HandDesign d = uahand_test::single_ta();
  const ParadigmCell cell = classify_paradigm(d, "flex");
  CHECK(cell.agonist == AgonistChoice::kTendon);
  CHECK(cell.coupling == CouplingScheme::kTendonsPerShaft);
  CHECK(cell.group_size == 1);
}

TEST_CASE("classify rejects unknown tendon ids") {
  CHECK_THROWS_AS(classify_paradigm(default_iss_hand(), "nope"),
                  PreconditionError);
}

TEST_CASE("validate flags nonpositive moment arms") {
  HandDesign d = uahand_test::single_ta();
  d.tendons[0].stops[0].radius = 0.0;
  const auto violations = validate_design(d);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("stop J") != std::string::npos);
  CHECK(violations[0].find("positive") != std::string::npos);
}

TEST_CASE("validate flags SA tendons wound like TA tendons") {
  HandDesign d = uahand_test::ta_plus_sa();
  d.tendons[1].winding = +1;
  const auto violations = validate_design(d);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("opposite") != std::string::npos);
}

TEST_CASE("validate flags joints shared between tendons") {
  HandDesign d = uahand_test::two_joint_mjt();
  d.tendons.push_back(
      {"extra", TendonRole::kTendonAgonist, +1, {{"D", 4.0, +1}}});
  const auto violations = validate_design(d);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("more than one tendon") != std::string::npos);
}

TEST_CASE("validate flags reference poses outside joint limits") {
  HandDesign d = uahand_test::single_ta();
  d.reference_pose.angles[0] = 5.0;
  CHECK(validate_design(d).size() == 1);
}

TEST_CASE("validate flags springs that go slack inside the range") {
  HandDesign d = uahand_test::single_ta(1.0, 0.5);
  d.joints[0].angle_min = -0.6;  // below -preload
  const auto violations = validate_design(d);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].find("slack") != std::string::npos);
}
