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

// Fitting underactuation parameters to target grasp postures.
//
// A single-motor hand sweeps a one-dimensional manifold of free-motion
// postures. optimize_design shapes that manifold - through pulley radii,
// flexion spring stiffnesses and preloads, and the motor radius - so it
// passes as close as possible to a set of target postures, using
// derivative-free pattern search with random restarts (the objective has
// active-set kinks, so no gradients).

#ifndef UAHAND_SYNERGY_HPP_
#define UAHAND_SYNERGY_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uahand/hand_model.hpp"

namespace uahand {

// A tunable scalar of the design, addressed by path:
//   motor.radius
//   joint.<id>.stiffness | joint.<id>.preload
//   tendon.<id>.stop.<joint>.radius
// Spring parameters of SA-driven joints are not legal paths here: they do
// not affect the free-motion kinematics (that freedom belongs to the
// cancellation module).
struct ParameterSpec {
  std::string path;
  double lower = 0.0;
  double upper = 0.0;
};

struct SynergyProblem {
  HandDesign base;  // topology fixed; must validate
  // Target joint-angle vectors aligned with base.joints, within limits.
  std::vector<std::vector<double>> target_grasps;
  std::vector<ParameterSpec> parameters;
  std::vector<double> weights;  // per joint; empty means all 1
  int budget = 5000;            // max objective evaluations
  std::uint64_t seed = 0;
  int restarts = 8;
  int trajectory_samples = 200;  // dense motor-angle sampling per residual
};

struct GraspResidual {
  double distance = 0.0;     // weighted Euclidean, radians
  double motor_angle = 0.0;  // minimizer along the trajectory
};

struct RestartReport {
  int restart = 0;
  long evaluations = 0;      // objective evaluations this restart spent
  double best_objective = 0.0;
};

struct SynergyResult {
  HandDesign design;
  std::vector<GraspResidual> residuals;         // one per target grasp
  std::vector<double> objective_history;        // best-so-far, nonincreasing
  std::vector<RestartReport> restart_reports;
  long evaluations = 0;
  double objective = 0.0;  // sum of squared residual distances
};

// Free-motion equilibria at n_samples uniform motor angles: the hand's
// posture manifold parameterized by the motor.
std::vector<JointConfiguration> trajectory_postures(const HandDesign& design,
                                                    int n_samples);

// Minimum weighted distance between the free-motion trajectory and a target
// posture: dense sampling plus golden-section refinement of the bracketed
// minimum to 1e-4 rad in motor angle.
GraspResidual grasp_residual(const HandDesign& design,
                             std::span<const double> target,
                             std::span<const double> weights = {},
                             int n_samples = 200);

// Deterministic given the seed. Restart 0 starts from the base design's
// parameter values; the rest start uniformly within bounds. Invalid
// candidates score +infinity. Throws PreconditionError on an ill-formed
// problem (bad bounds or paths, SA spring paths, unreachable budget).
SynergyResult optimize_design(const SynergyProblem& problem);

// Parameter path plumbing; both throw PreconditionError on bad paths.
double get_parameter(const HandDesign& design, const std::string& path);
void set_parameter(HandDesign& design, const std::string& path, double value);

}  // namespace uahand

#endif  // UAHAND_SYNERGY_HPP_
