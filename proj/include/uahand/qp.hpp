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

// Dense dual active-set solver (Goldfarb-Idnani scheme) for strictly convex
// quadratic programs with a diagonal Hessian:
//
//   minimize 1/2 x' diag(h) x + g' x   subject to  A x >= b.
//
// Problems here are tiny (<= ~10 variables, <= ~25 rows), so each step
// re-solves the small KKT system directly instead of maintaining updated
// factorizations. Multipliers of the active rows are returned; they are the
// tendon tensions and contact torques of the statics problem.

#ifndef UAHAND_QP_HPP_
#define UAHAND_QP_HPP_

#include <Eigen/Dense>
#include <vector>

namespace uahand::qp {

struct Solution {
  bool feasible = false;
  Eigen::VectorXd x;
  // One multiplier per row of A; zero for inactive rows, >= 0 for active.
  Eigen::VectorXd multipliers;
  int iterations = 0;
};

// h must be elementwise positive (strict convexity). Returns
// feasible = false when the constraints are inconsistent. Throws
// std::runtime_error if the iteration cap is exceeded (which indicates a
// solver defect, not a property of the input).
Solution solve(const Eigen::VectorXd& h, const Eigen::VectorXd& g,
               const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

}  // namespace uahand::qp

#endif  // UAHAND_QP_HPP_
