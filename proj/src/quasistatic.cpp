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

#include "uahand/quasistatic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "uahand/errors.hpp"
#include "uahand/qp.hpp"

namespace uahand {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// Per-joint box after tightening with contact caps. contact_side records
// which side (if any) is owned by a contact so its multiplier can be
// reported as a contact torque rather than a joint-limit force.
struct EffectiveBox {
  std::vector<double> lo, hi;
  std::vector<int> contact_side;  // 0 none, -1 lower cap, +1 upper cap
};

EffectiveBox make_box(const HandDesign& design,
                      std::span<const ContactConstraint> contacts) {
  const size_t n = design.joints.size();
  EffectiveBox box;
  box.lo.resize(n);
  box.hi.resize(n);
  box.contact_side.assign(n, 0);
  for (size_t j = 0; j < n; ++j) {
    box.lo[j] = design.joints[j].angle_min;
    box.hi[j] = design.joints[j].angle_max;
  }
  for (const ContactConstraint& c : contacts) {
    const int j = design.joint_index(c.joint);
    if (j < 0)
      throw PreconditionError("contact references unknown joint '" + c.joint +
                              "'");
    const size_t idx = static_cast<size_t>(j);
    if (design.joints[idx].kind == JointKind::kFlexion) {
      // Object stops flexion: cap from above.
      if (c.blocked_at <= box.hi[idx]) {
        box.hi[idx] = c.blocked_at;
        box.contact_side[idx] = +1;
      }
    } else {
      // Object stops adduction, which decreases the angle: cap from below.
      if (c.blocked_at >= box.lo[idx]) {
        box.lo[idx] = c.blocked_at;
        box.contact_side[idx] = -1;
      }
    }
  }
  return box;
}

// Linear form of one tendon's slack: slack = a . theta - b (mm).
struct SlackRow {
  Eigen::VectorXd a;
  double b = 0.0;
};

SlackRow slack_row(const HandDesign& design, const TendonRoute& route,
                   double motor_angle) {
  const size_t n = design.joints.size();
  SlackRow row;
  row.a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  row.b = route.winding * design.motor.radius *
          (motor_angle - design.reference_pose.motor_angle);
  for (const TendonStop& s : route.stops) {
    const int j = design.joint_index(s.joint);
    row.a[j] += s.pull_sign * s.radius;
    row.b += s.pull_sign * s.radius * design.reference_pose.angles[
        static_cast<size_t>(j)];
  }
  return row;
}

void check_motor_angle(const HandDesign& design, double motor_angle) {
  if (motor_angle < design.motor.angle_min - 1e-9 ||
      motor_angle > design.motor.angle_max + 1e-9)
    throw PreconditionError("motor angle " + fmt(motor_angle) +
                            " outside motor range [" +
                            fmt(design.motor.angle_min) + ", " +
                            fmt(design.motor.angle_max) + "]");
}

void check_strictly_convex(const HandDesign& design) {
  for (const Joint& j : design.joints)
    if (!(j.stiffness > 0.0))
      throw SolverError(SolverErrorKind::kDegenerateDesign,
                        "joint " + j.id +
                            " has zero stiffness: equilibrium not unique");
}

}  // namespace

const char* to_string(ClosingEvent event) {
  switch (event) {
    case ClosingEvent::kTendonWentSlack:
      return "tendon-went-slack";
    case ClosingEvent::kContactActivated:
      return "contact-activated";
    case ClosingEvent::kJointLimitHit:
      return "joint-limit-hit";
  }
  return "?";
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<size_t>(i)] =
        i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  return g;
}

double angle_of(const HandDesign& design, const JointConfiguration& config,
                std::string_view joint_id) {
  const int j = design.joint_index(joint_id);
  if (j < 0)
    throw PreconditionError("unknown joint id '" + std::string(joint_id) +
                            "'");
  return config.angles[static_cast<size_t>(j)];
}

double tendon_slack(const HandDesign& design, const JointConfiguration& config,
                    std::string_view tendon_id) {
  const int t = design.tendon_index(tendon_id);
  if (t < 0)
    throw PreconditionError("unknown tendon id '" + std::string(tendon_id) +
                            "'");
  if (config.angles.size() != design.joints.size())
    throw PreconditionError("configuration has " +
                            fmt(config.angles.size()) + " angles for " +
                            fmt(design.joints.size()) + " joints");
  const SlackRow row =
      slack_row(design, design.tendons[static_cast<size_t>(t)],
                config.motor_angle);
  double raw = -row.b;
  for (Eigen::Index j = 0; j < row.a.size(); ++j)
    raw += row.a[j] * config.angles[static_cast<size_t>(j)];
  if (raw < -kSlackTolerance)
    throw SolverError(SolverErrorKind::kInfeasible,
                      "configuration stretches tendon " +
                          std::string(tendon_id) + " by " + fmt(-raw) + " mm");
  return std::max(raw, 0.0);
}

double potential_energy(const HandDesign& design,
                        const JointConfiguration& config) {
  if (config.angles.size() != design.joints.size())
    throw PreconditionError("configuration has " +
                            fmt(config.angles.size()) + " angles for " +
                            fmt(design.joints.size()) + " joints");
  double v = 0.0;
  for (size_t j = 0; j < design.joints.size(); ++j) {
    const double d = config.angles[j] + design.joints[j].preload;
    v += 0.5 * design.joints[j].stiffness * d * d;
  }
  return v;
}

EquilibriumResult solve_pose(const HandDesign& design, double motor_angle,
                             std::span<const ContactConstraint> contacts) {
  check_strictly_convex(design);
  check_motor_angle(design, motor_angle);

  const Eigen::Index n = static_cast<Eigen::Index>(design.joints.size());
  const Eigen::Index nt = static_cast<Eigen::Index>(design.tendons.size());
  const EffectiveBox box = make_box(design, contacts);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (box.lo[static_cast<size_t>(j)] > box.hi[static_cast<size_t>(j)])
      throw SolverError(SolverErrorKind::kInfeasible,
                        "joint " + design.joints[static_cast<size_t>(j)].id +
                            ": contact cap leaves an empty angle range");
  }

  // Rows: tendons first, then (lower, upper) bound per joint.
  const Eigen::Index m = nt + 2 * n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd b(m);
  for (Eigen::Index t = 0; t < nt; ++t) {
    const SlackRow row =
        slack_row(design, design.tendons[static_cast<size_t>(t)], motor_angle);
    A.row(t) = row.a.transpose();
    b[t] = row.b;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    A(nt + 2 * j, j) = 1.0;
    b[nt + 2 * j] = box.lo[static_cast<size_t>(j)];
    A(nt + 2 * j + 1, j) = -1.0;
    b[nt + 2 * j + 1] = -box.hi[static_cast<size_t>(j)];
  }

  Eigen::VectorXd h(n), g(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    h[j] = design.joints[static_cast<size_t>(j)].stiffness;
    g[j] = h[j] * design.joints[static_cast<size_t>(j)].preload;
  }

  const qp::Solution sol = qp::solve(h, g, A, b);
  if (!sol.feasible)
    throw SolverError(SolverErrorKind::kInfeasible,
                      "no joint configuration satisfies the tendon and "
                      "contact constraints at motor angle " +
                          fmt(motor_angle));

  EquilibriumResult result;
  result.configuration.motor_angle = motor_angle;
  result.configuration.angles.resize(static_cast<size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j)
    result.configuration.angles[static_cast<size_t>(j)] =
        std::clamp(sol.x[j], box.lo[static_cast<size_t>(j)],
                   box.hi[static_cast<size_t>(j)]);

  result.tendon_statuses.resize(static_cast<size_t>(nt));
  for (Eigen::Index t = 0; t < nt; ++t) {
    TendonStatus& st = result.tendon_statuses[static_cast<size_t>(t)];
    st.tendon = design.tendons[static_cast<size_t>(t)].id;
    st.tension = std::max(sol.multipliers[t], 0.0);
    st.slack = std::max(A.row(t).dot(sol.x) - b[t], 0.0);
    st.taut = st.slack < kSlackTolerance;
  }

  for (Eigen::Index j = 0; j < n; ++j) {
    const double mu_lo = sol.multipliers[nt + 2 * j];
    const double mu_hi = sol.multipliers[nt + 2 * j + 1];
    const double torque = mu_lo - mu_hi;  // signed, +angle sense
    if (mu_lo <= 0.0 && mu_hi <= 0.0) continue;
    const Joint& joint = design.joints[static_cast<size_t>(j)];
    const int side = box.contact_side[static_cast<size_t>(j)];
    if ((side == -1 && mu_lo > 0.0) || (side == +1 && mu_hi > 0.0))
      result.contact_torques[joint.id] = torque;
    else
      result.limit_torques[joint.id] = torque;
  }

  result.energy = potential_energy(design, result.configuration);
  return result;
}

namespace {

// Least-squares KKT multiplier recovery for the grid oracle: enumerate
// subsets of the near-active constraints and keep the nonnegative solution
// with the smallest stationarity residual. Independent of the active-set
// solver's machinery.
void recover_multipliers(const HandDesign& design, const EffectiveBox& box,
                         const std::vector<SlackRow>& rows,
                         const Eigen::VectorXd& theta, double resolution,
                         EquilibriumResult& result) {
  const Eigen::Index n = theta.size();
  Eigen::VectorXd grad(n);
  for (Eigen::Index j = 0; j < n; ++j)
    grad[j] = design.joints[static_cast<size_t>(j)].stiffness *
              (theta[j] + design.joints[static_cast<size_t>(j)].preload);

  struct Candidate {
    Eigen::VectorXd normal;
    int tendon = -1;  // index into design.tendons, or
    int joint = -1;   // index into design.joints (bound constraint)
  };
  std::vector<Candidate> cands;
  for (size_t t = 0; t < rows.size(); ++t) {
    const double slack = rows[t].a.dot(theta) - rows[t].b;
    const double act = 2.0 * resolution * (rows[t].a.cwiseAbs().sum() + 1.0);
    if (slack <= act)
      cands.push_back({rows[t].a, static_cast<int>(t), -1});
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const double act = 2.0 * resolution + 1e-12;
    if (theta[j] - box.lo[static_cast<size_t>(j)] <= act) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[j] = 1.0;
      cands.push_back({e, -1, static_cast<int>(j)});
    } else if (box.hi[static_cast<size_t>(j)] - theta[j] <= act) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[j] = -1.0;
      cands.push_back({e, -1, static_cast<int>(j)});
    }
  }

  const size_t nc = cands.size();
  double best_res = grad.norm();
  Eigen::VectorXd best_lambda;
  unsigned best_mask = 0;
  for (unsigned mask = 1; mask < (1u << nc); ++mask) {
    std::vector<size_t> sel;
    for (size_t c = 0; c < nc; ++c)
      if (mask & (1u << c)) sel.push_back(c);
    if (sel.size() > static_cast<size_t>(n)) continue;
    Eigen::MatrixXd At(n, static_cast<Eigen::Index>(sel.size()));
    for (size_t c = 0; c < sel.size(); ++c)
      At.col(static_cast<Eigen::Index>(c)) = cands[sel[c]].normal;
    const Eigen::VectorXd lambda =
        At.colPivHouseholderQr().solve(grad);
    if ((lambda.array() < -1e-9).any()) continue;
    const double res = (grad - At * lambda).norm();
    if (res < best_res - 1e-12) {
      best_res = res;
      best_lambda = lambda;
      best_mask = mask;
    }
  }

  if (best_lambda.size() == 0) return;
  Eigen::Index li = 0;
  for (size_t c = 0; c < nc; ++c) {
    if (!(best_mask & (1u << c))) continue;
    const double lam = std::max(best_lambda[li++], 0.0);
    if (cands[c].tendon >= 0) {
      result.tendon_statuses[static_cast<size_t>(cands[c].tendon)].tension =
          lam;
    } else {
      const size_t j = static_cast<size_t>(cands[c].joint);
      const double torque = cands[c].normal[cands[c].joint] * lam;
      const int side = box.contact_side[j];
      const bool is_contact = (side == -1 && cands[c].normal[cands[c].joint] >
                               0.0) ||
                              (side == +1 && cands[c].normal[cands[c].joint] <
                               0.0);
      if (is_contact)
        result.contact_torques[design.joints[j].id] = torque;
      else
        result.limit_torques[design.joints[j].id] = torque;
    }
  }
}

}  // namespace

EquilibriumResult grid_search_pose(const HandDesign& design,
                                   double motor_angle,
                                   std::span<const ContactConstraint> contacts,
                                   double resolution) {
  if (design.joints.size() > 3)
    throw PreconditionError(
        "grid_search_pose is restricted to designs with at most 3 joints");
  if (!(resolution > 0.0))
    throw PreconditionError("resolution must be positive");
  check_motor_angle(design, motor_angle);

  const size_t n = design.joints.size();
  const EffectiveBox box = make_box(design, contacts);
  for (size_t j = 0; j < n; ++j)
    if (box.lo[j] > box.hi[j])
      throw SolverError(SolverErrorKind::kNoFeasibleSample,
                        "joint " + design.joints[j].id +
                            ": contact cap leaves an empty angle range");

  std::vector<SlackRow> rows;
  rows.reserve(design.tendons.size());
  for (const TendonRoute& t : design.tendons)
    rows.push_back(slack_row(design, t, motor_angle));

  const auto feasible = [&](const Eigen::VectorXd& theta) {
    for (const SlackRow& r : rows)
      if (r.a.dot(theta) - r.b < -1e-12) return false;
    return true;
  };

  // Each joint belongs to at most one tendon, so all slacks are maximized
  // simultaneously at this corner; if it is infeasible, nothing is.
  Eigen::VectorXd corner(static_cast<Eigen::Index>(n));
  for (size_t j = 0; j < n; ++j) {
    double sign = 0.0;
    for (const TendonRoute& t : design.tendons)
      for (const TendonStop& s : t.stops)
        if (design.joint_index(s.joint) == static_cast<int>(j))
          sign = s.pull_sign;
    corner[static_cast<Eigen::Index>(j)] = sign >= 0.0 ? box.hi[j] : box.lo[j];
  }
  if (!feasible(corner))
    throw SolverError(SolverErrorKind::kNoFeasibleSample,
                      "no feasible joint configuration at motor angle " +
                          fmt(motor_angle));

  constexpr int kPointsPerDim = 15;
  std::vector<double> lo = box.lo, hi = box.hi;
  Eigen::VectorXd best = corner;
  double best_energy = kInf;
  {
    JointConfiguration c;
    c.motor_angle = motor_angle;
    c.angles.assign(corner.data(), corner.data() + corner.size());
    best_energy = potential_energy(design, c);
  }

  JointConfiguration probe;
  probe.motor_angle = motor_angle;
  probe.angles.resize(n);

  for (int level = 0; level < 80; ++level) {
    double max_cell = 0.0;
    std::vector<std::vector<double>> axes(n);
    std::vector<double> cell(n, 0.0);
    for (size_t j = 0; j < n; ++j) {
      if (hi[j] - lo[j] < 1e-15) {
        axes[j] = {lo[j]};
      } else {
        axes[j] = uniform_grid(lo[j], hi[j], kPointsPerDim);
        cell[j] = (hi[j] - lo[j]) / (kPointsPerDim - 1);
      }
      max_cell = std::max(max_cell, cell[j]);
    }

    std::vector<size_t> idx(n, 0);
    Eigen::VectorXd theta(static_cast<Eigen::Index>(n));
    while (true) {
      for (size_t j = 0; j < n; ++j)
        theta[static_cast<Eigen::Index>(j)] = axes[j][idx[j]];
      if (feasible(theta)) {
        for (size_t j = 0; j < n; ++j) probe.angles[j] = theta[
            static_cast<Eigen::Index>(j)];
        const double e = potential_energy(design, probe);
        if (e < best_energy - 1e-15) {
          best_energy = e;
          best = theta;
        }
      }
      size_t d = 0;
      while (d < n && ++idx[d] == axes[d].size()) idx[d++] = 0;
      if (d == n) break;
    }

    if (max_cell <= resolution) break;
    for (size_t j = 0; j < n; ++j) {
      if (cell[j] == 0.0) continue;
      lo[j] = std::max(box.lo[j], best[static_cast<Eigen::Index>(j)] -
                                      2.0 * cell[j]);
      hi[j] = std::min(box.hi[j], best[static_cast<Eigen::Index>(j)] +
                                      2.0 * cell[j]);
    }
  }

  EquilibriumResult result;
  result.configuration.motor_angle = motor_angle;
  result.configuration.angles.assign(best.data(), best.data() + best.size());
  result.tendon_statuses.resize(design.tendons.size());
  for (size_t t = 0; t < design.tendons.size(); ++t) {
    TendonStatus& st = result.tendon_statuses[t];
    st.tendon = design.tendons[t].id;
    st.tension = 0.0;
    st.slack = std::max(rows[t].a.dot(best) - rows[t].b, 0.0);
    st.taut = st.slack < kSlackTolerance;
  }
  recover_multipliers(design, box, rows, best, resolution, result);
  result.energy = best_energy;
  return result;
}

ClosingTrace simulate_closing(const HandDesign& design,
                              std::span<const double> motor_angles,
                              std::span<const ScheduledContact> schedule) {
  for (size_t i = 0; i < motor_angles.size(); ++i) {
    check_motor_angle(design, motor_angles[i]);
    if (i > 0 && !(motor_angles[i] > motor_angles[i - 1]))
      throw PreconditionError(
          "motor angle sequence must be strictly increasing");
  }
  {
    std::vector<std::string> seen;
    for (const ScheduledContact& s : schedule) {
      if (design.joint_index(s.contact.joint) < 0)
        throw PreconditionError("scheduled contact references unknown joint '" +
                                s.contact.joint + "'");
      if (std::find(seen.begin(), seen.end(), s.contact.joint) != seen.end())
        throw PreconditionError("joint " + s.contact.joint +
                                " scheduled for contact more than once");
      seen.push_back(s.contact.joint);
    }
  }

  std::vector<ScheduledContact> pending(schedule.begin(), schedule.end());
  std::stable_sort(pending.begin(), pending.end(),
                   [](const ScheduledContact& a, const ScheduledContact& b) {
                     return a.motor_angle < b.motor_angle;
                   });

  ClosingTrace trace;
  std::vector<ContactConstraint> active;
  std::vector<char> was_taut(design.tendons.size(), 1);
  std::vector<char> was_at_limit(design.joints.size(), 0);
  size_t next = 0;

  for (size_t i = 0; i < motor_angles.size(); ++i) {
    const double phi = motor_angles[i];
    while (next < pending.size() && pending[next].motor_angle <= phi + 1e-12) {
      active.push_back(pending[next].contact);
      trace.events.push_back({phi, ClosingEvent::kContactActivated,
                              pending[next].contact.joint});
      ++next;
    }

    EquilibriumResult res;
    try {
      res = solve_pose(design, phi, active);
    } catch (const SolverError& e) {
      throw SolverError(e.kind, "sample " + fmt(i) + " (motor angle " +
                                    fmt(phi) + "): " + e.what());
    }

    for (size_t t = 0; t < res.tendon_statuses.size(); ++t) {
      const bool taut = res.tendon_statuses[t].slack <= kSlackTolerance;
      if (!taut && was_taut[t])
        trace.events.push_back({phi, ClosingEvent::kTendonWentSlack,
                                res.tendon_statuses[t].tendon});
      was_taut[t] = taut;
    }
    for (size_t j = 0; j < design.joints.size(); ++j) {
      const Joint& joint = design.joints[j];
      const double a = res.configuration.angles[j];
      const bool at = std::abs(a - joint.angle_min) <= 1e-9 ||
                      std::abs(a - joint.angle_max) <= 1e-9;
      if (at && !was_at_limit[j])
        trace.events.push_back({phi, ClosingEvent::kJointLimitHit, joint.id});
      was_at_limit[j] = at;
    }

    trace.motor_angles.push_back(phi);
    trace.samples.push_back(std::move(res));
  }
  return trace;
}

}  // namespace uahand
