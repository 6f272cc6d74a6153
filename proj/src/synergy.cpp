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

#include "uahand/synergy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "uahand/errors.hpp"
#include "uahand/quasistatic.hpp"

namespace uahand {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMotorAngleTol = 1e-4;  // golden-section refinement, rad

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double* locate(HandDesign& design, const std::string& path) {
  const std::vector<std::string> p = split(path, '.');
  if (p.size() == 2 && p[0] == "motor" && p[1] == "radius")
    return &design.motor.radius;
  if (p.size() == 3 && p[0] == "joint") {
    const int j = design.joint_index(p[1]);
    if (j >= 0) {
      Joint& joint = design.joints[static_cast<size_t>(j)];
      if (p[2] == "stiffness") return &joint.stiffness;
      if (p[2] == "preload") return &joint.preload;
    }
  }
  if (p.size() == 5 && p[0] == "tendon" && p[2] == "stop" && p[4] == "radius") {
    const int t = design.tendon_index(p[1]);
    if (t >= 0)
      for (TendonStop& s : design.tendons[static_cast<size_t>(t)].stops)
        if (s.joint == p[3]) return &s.radius;
  }
  return nullptr;
}

struct TrajectoryCache {
  std::vector<double> motor_angles;
  std::vector<JointConfiguration> postures;
};

TrajectoryCache make_cache(const HandDesign& design, int n_samples) {
  TrajectoryCache cache;
  cache.motor_angles =
      uniform_grid(design.motor.angle_min, design.motor.angle_max, n_samples);
  cache.postures.reserve(cache.motor_angles.size());
  for (double phi : cache.motor_angles)
    cache.postures.push_back(solve_pose(design, phi).configuration);
  return cache;
}

double weighted_distance(const JointConfiguration& pose,
                         std::span<const double> target,
                         std::span<const double> weights) {
  double sum = 0.0;
  for (size_t j = 0; j < target.size(); ++j) {
    const double w = weights.empty() ? 1.0 : weights[j];
    const double d = w * (pose.angles[j] - target[j]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

GraspResidual residual_against(const HandDesign& design,
                               const TrajectoryCache& cache,
                               std::span<const double> target,
                               std::span<const double> weights) {
  size_t best = 0;
  double best_d = kInf;
  for (size_t i = 0; i < cache.postures.size(); ++i) {
    const double d = weighted_distance(cache.postures[i], target, weights);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }

  const auto at = [&](double phi) {
    return weighted_distance(solve_pose(design, phi).configuration, target,
                             weights);
  };

  // Golden-section on the bracket around the best dense sample.
  double a = cache.motor_angles[best > 0 ? best - 1 : 0];
  double b = cache.motor_angles[
      std::min(best + 1, cache.motor_angles.size() - 1)];
  GraspResidual res{best_d, cache.motor_angles[best]};
  if (b - a > kMotorAngleTol) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = at(x1), f2 = at(x2);
    while (b - a > kMotorAngleTol) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = at(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = at(x2);
      }
    }
    const double mid = 0.5 * (a + b);
    const double fm = at(mid);
    if (fm < res.distance) res = {fm, mid};
    if (f1 < res.distance) res = {f1, x1};
    if (f2 < res.distance) res = {f2, x2};
  }
  return res;
}

void check_targets(const HandDesign& design,
                   const std::vector<std::vector<double>>& targets) {
  for (size_t g = 0; g < targets.size(); ++g) {
    if (targets[g].size() != design.joints.size())
      throw PreconditionError("target grasp " + std::to_string(g) + " has " +
                              std::to_string(targets[g].size()) +
                              " angles for " +
                              std::to_string(design.joints.size()) +
                              " joints");
    for (size_t j = 0; j < targets[g].size(); ++j) {
      const Joint& joint = design.joints[j];
      if (targets[g][j] < joint.angle_min - 1e-12 ||
          targets[g][j] > joint.angle_max + 1e-12)
        throw PreconditionError("target grasp " + std::to_string(g) +
                                ": angle for joint " + joint.id +
                                " outside its limits");
    }
  }
}

}  // namespace

double get_parameter(const HandDesign& design, const std::string& path) {
  HandDesign& mutable_design = const_cast<HandDesign&>(design);
  const double* p = locate(mutable_design, path);
  if (!p) throw PreconditionError("unknown parameter path '" + path + "'");
  return *p;
}

void set_parameter(HandDesign& design, const std::string& path, double value) {
  double* p = locate(design, path);
  if (!p) throw PreconditionError("unknown parameter path '" + path + "'");
  *p = value;
}

std::vector<JointConfiguration> trajectory_postures(const HandDesign& design,
                                                    int n_samples) {
  if (n_samples < 2)
    throw PreconditionError("trajectory needs at least 2 samples");
  return make_cache(design, n_samples).postures;
}

GraspResidual grasp_residual(const HandDesign& design,
                             std::span<const double> target,
                             std::span<const double> weights, int n_samples) {
  if (n_samples < 2)
    throw PreconditionError("grasp_residual needs at least 2 samples");
  check_targets(design, {{target.begin(), target.end()}});
  if (!weights.empty() && weights.size() != design.joints.size())
    throw PreconditionError("weight vector does not match the joint count");
  return residual_against(design, make_cache(design, n_samples), target,
                          weights);
}

SynergyResult optimize_design(const SynergyProblem& problem) {
  require_valid(problem.base);
  check_targets(problem.base, problem.target_grasps);
  if (!problem.weights.empty() &&
      problem.weights.size() != problem.base.joints.size())
    throw PreconditionError("weight vector does not match the joint count");
  for (double w : problem.weights)
    if (w < 0.0) throw PreconditionError("weights must be nonnegative");
  if (problem.restarts < 1)
    throw PreconditionError("at least one restart is required");
  if (problem.trajectory_samples < 2)
    throw PreconditionError("trajectory sampling needs at least 2 samples");

  const size_t dim = problem.parameters.size();
  const long min_per_restart = static_cast<long>(2 * dim + 2);
  if (problem.budget < problem.restarts * min_per_restart)
    throw PreconditionError(
        "budget " + std::to_string(problem.budget) + " below " +
        std::to_string(problem.restarts) + " restarts x " +
        std::to_string(min_per_restart) + " evaluations");

  // SA-driven joints' spring parameters do not move the posture manifold;
  // they are reserved for the cancellation step.
  std::set<std::string> sa_joints;
  for (const TendonRoute& t : problem.base.tendons)
    if (t.role == TendonRole::kSpringAgonist)
      for (const TendonStop& s : t.stops) sa_joints.insert(s.joint);

  std::vector<double> base_params(dim);
  for (size_t i = 0; i < dim; ++i) {
    const ParameterSpec& spec = problem.parameters[i];
    if (!(spec.lower < spec.upper) || !std::isfinite(spec.lower) ||
        !std::isfinite(spec.upper))
      throw PreconditionError("parameter '" + spec.path +
                              "': bounds must be finite with lower < upper");
    const std::vector<std::string> parts = split(spec.path, '.');
    if (parts.size() == 3 && parts[0] == "joint" && sa_joints.count(parts[1]))
      throw PreconditionError(
          "parameter '" + spec.path +
          "': SA-driven joint springs are selected by cancellation, not "
          "fitted here");
    base_params[i] = get_parameter(problem.base, spec.path);
    if (base_params[i] < spec.lower || base_params[i] > spec.upper)
      throw PreconditionError("parameter '" + spec.path +
                              "': base design value outside bounds");
  }

  SynergyResult result;
  result.objective = kInf;

  const auto evaluate = [&](const std::vector<double>& params) {
    ++result.evaluations;
    HandDesign candidate = problem.base;
    for (size_t i = 0; i < dim; ++i)
      set_parameter(candidate, problem.parameters[i].path, params[i]);
    if (!validate_design(candidate).empty()) return kInf;
    for (const Joint& j : candidate.joints)
      if (!(j.stiffness > 0.0)) return kInf;
    double objective = 0.0;
    try {
      const TrajectoryCache cache =
          make_cache(candidate, problem.trajectory_samples);
      for (const std::vector<double>& target : problem.target_grasps) {
        const GraspResidual r =
            residual_against(candidate, cache, target, problem.weights);
        objective += r.distance * r.distance;
      }
    } catch (const Error&) {
      return kInf;
    }
    return objective;
  };

  std::vector<double> best_params = base_params;
  const auto consider = [&](const std::vector<double>& params, double f) {
    if (f < result.objective) {
      result.objective = f;
      best_params = params;
      result.objective_history.push_back(f);
    }
  };

  const auto to_params = [&](const std::vector<double>& u) {
    std::vector<double> p(dim);
    for (size_t i = 0; i < dim; ++i)
      p[i] = problem.parameters[i].lower +
             u[i] * (problem.parameters[i].upper - problem.parameters[i].lower);
    return p;
  };

  std::mt19937_64 rng(problem.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int restart = 0; restart < problem.restarts; ++restart) {
    if (result.evaluations >= problem.budget) break;
    const long evals_before = result.evaluations;

    std::vector<double> u(dim);
    if (restart == 0) {
      for (size_t i = 0; i < dim; ++i) {
        const ParameterSpec& spec = problem.parameters[i];
        u[i] = (base_params[i] - spec.lower) / (spec.upper - spec.lower);
      }
    } else {
      for (size_t i = 0; i < dim; ++i) u[i] = unit(rng);
    }

    double f = evaluate(to_params(u));
    consider(to_params(u), f);

    double step = 0.25;
    int stall = 0;
    bool stop_restart = false;
    while (!stop_restart && step > 1e-7 &&
           result.evaluations < problem.budget) {
      // One exploratory pass around u; pattern moves ride on top of it.
      bool improved = false;
      for (size_t i = 0; i < dim && !stop_restart; ++i) {
        for (double dir : {+1.0, -1.0}) {
          if (result.evaluations >= problem.budget) {
            stop_restart = true;
            break;
          }
          std::vector<double> v = u;
          v[i] = std::clamp(u[i] + dir * step, 0.0, 1.0);
          if (v[i] == u[i]) continue;
          const double fv = evaluate(to_params(v));
          consider(to_params(v), fv);
          if (fv < f) {
            const double rel = (f - fv) / std::max(std::abs(f), 1e-12);
            stall = rel < 1e-6 ? stall + 1 : 0;
            u = v;
            f = fv;
            improved = true;
            if (stall >= 20) {
              stop_restart = true;
              break;
            }
            // Pattern move: keep going while the same direction pays off.
            while (result.evaluations < problem.budget) {
              std::vector<double> w = u;
              w[i] = std::clamp(u[i] + dir * step, 0.0, 1.0);
              if (w[i] == u[i]) break;
              const double fw = evaluate(to_params(w));
              consider(to_params(w), fw);
              if (fw >= f) break;
              const double rel2 = (f - fw) / std::max(std::abs(f), 1e-12);
              stall = rel2 < 1e-6 ? stall + 1 : 0;
              u = w;
              f = fw;
              if (stall >= 20) {
                stop_restart = true;
                break;
              }
            }
            break;  // re-poll this coordinate set from the new point
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    result.restart_reports.push_back(
        {restart, result.evaluations - evals_before, f});
  }

  result.design = problem.base;
  for (size_t i = 0; i < dim; ++i)
    set_parameter(result.design, problem.parameters[i].path, best_params[i]);

  if (std::isfinite(result.objective)) {
    const TrajectoryCache cache =
        make_cache(result.design, problem.trajectory_samples);
    for (const std::vector<double>& target : problem.target_grasps)
      result.residuals.push_back(
          residual_against(result.design, cache, target, problem.weights));
  }
  return result;
}

}  // namespace uahand
