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

// Text formats: design files, synergy problem files, spring catalogs.
//
// Design file grammar (whitespace-separated tokens, '#' comments):
//
//   hand {
//     motor { radius R angle_min A angle_max B stiction S reference M }
//     joint <id> { kind flexion|abduction min A max B
//                  stiffness K preload P reference R }
//     tendon <id> { role ta|sa winding 1|-1
//                   stop <joint> { radius R sign 1|-1 } ... }
//   }
//
// Angles in radians, lengths in mm. Numbers serialize with shortest
// round-trip precision, so parse(serialize(parse(text))) is field-exact.
// Parsing applies every hand_model validation rule.

#ifndef UAHAND_DESIGN_IO_HPP_
#define UAHAND_DESIGN_IO_HPP_

#include <string>
#include <vector>

#include "uahand/cancellation.hpp"
#include "uahand/hand_model.hpp"
#include "uahand/synergy.hpp"

namespace uahand {

HandDesign parse_design(const std::string& text);
HandDesign load_design(const std::string& path);
std::string serialize_design(const HandDesign& design);
void save_design(const HandDesign& design, const std::string& path);

// Problem file:
//   problem {
//     joints <id...>              # column order, all design joints
//     target <angle...>           # one row per grasp, in `joints` order
//     param <path> <lower> <upper>
//     weight <joint id> <value>   # optional, default 1
//     budget N   seed N   restarts N   samples N
//   }
SynergyProblem parse_problem(const std::string& text, const HandDesign& base);
SynergyProblem load_problem(const std::string& path, const HandDesign& base);

// Catalog file:
//   catalog { spring <stiffness> <preload_min> <preload_max> ... }
std::vector<SpringCatalogEntry> parse_catalog(const std::string& text);
std::vector<SpringCatalogEntry> load_catalog(const std::string& path);

// Exact field-for-field equality (ids, doubles bitwise-comparable values).
bool designs_equal(const HandDesign& a, const HandDesign& b);

}  // namespace uahand

#endif  // UAHAND_DESIGN_IO_HPP_
