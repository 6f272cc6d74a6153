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

#include "uahand/qp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace uahand::qp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Step directions for adding normal `np` to the working set W:
// z moves x without violating the active rows, r is the rate at which the
// active multipliers must drop to keep stationarity.
void step_directions(const Eigen::VectorXd& inv_h, const Eigen::MatrixXd& A,
                     const std::vector<int>& active,
                     const Eigen::VectorXd& np, Eigen::VectorXd& z,
                     Eigen::VectorXd& r) {
  const Eigen::Index n = np.size();
  const Eigen::Index k = static_cast<Eigen::Index>(active.size());
  const Eigen::VectorXd hinv_np = inv_h.cwiseProduct(np);
  if (k == 0) {
    z = hinv_np;
    r.resize(0);
    return;
  }
  Eigen::MatrixXd N(k, n);
  for (Eigen::Index i = 0; i < k; ++i) N.row(i) = A.row(active[i]);
  const Eigen::MatrixXd NHinv = N * inv_h.asDiagonal();
  const Eigen::MatrixXd G = NHinv * N.transpose();
  r = G.ldlt().solve(N * hinv_np);
  z = hinv_np - NHinv.transpose() * r;
}

}  // namespace

Solution solve(const Eigen::VectorXd& h, const Eigen::VectorXd& g,
               const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const Eigen::Index n = h.size();
  const Eigen::Index m = A.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(h[j] > 0.0))
      throw std::runtime_error("qp::solve requires a positive diagonal Hessian");
  }

  Solution sol;
  const Eigen::VectorXd inv_h = h.cwiseInverse();
  sol.x = -inv_h.cwiseProduct(g);
  sol.multipliers = Eigen::VectorXd::Zero(m);

  std::vector<int> active;
  std::vector<char> in_active(static_cast<size_t>(m), 0);
  active.reserve(static_cast<size_t>(std::min(m, n)));

  const int iter_cap = 100 * static_cast<int>(m + n + 1);
  Eigen::VectorXd z, r;

  for (int iter = 0; iter < iter_cap; ++iter) {
    // Most violated inactive row.
    int p = -1;
    double worst = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (in_active[static_cast<size_t>(i)]) continue;
      const double tol = 1e-10 * (1.0 + std::abs(b[i]));
      const double v = A.row(i).dot(sol.x) - b[i];
      if (v < -tol && v < worst) {
        worst = v;
        p = static_cast<int>(i);
      }
    }
    if (p < 0) {
      sol.feasible = true;
      sol.iterations = iter;
      return sol;
    }

    const Eigen::VectorXd np = A.row(p).transpose();
    const double zn_tol =
        1e-11 * std::max(1.0, np.squaredNorm() * inv_h.maxCoeff());
    double u = 0.0;  // multiplier being built up for row p

    while (true) {
      if (++sol.iterations > iter_cap)
        throw std::runtime_error("qp::solve iteration cap exceeded");

      step_directions(inv_h, A, active, np, z, r);
      const double zn = np.dot(z);

      // Dual blocking step: first active multiplier to hit zero.
      double t1 = kInf;
      int blocking = -1;
      for (size_t j = 0; j < active.size(); ++j) {
        if (r[static_cast<Eigen::Index>(j)] > 1e-12) {
          const double t = sol.multipliers[active[j]] /
                           r[static_cast<Eigen::Index>(j)];
          if (t < t1) {
            t1 = t;
            blocking = static_cast<int>(j);
          }
        }
      }

      // Primal step length to make row p feasible.
      double t2 = kInf;
      if (zn > zn_tol) {
        const double v = A.row(p).dot(sol.x) - b[p];
        t2 = -v / zn;
        if (t2 < 0.0) t2 = 0.0;
      }

      if (t1 == kInf && t2 == kInf) {
        sol.feasible = false;  // inconsistent constraints
        return sol;
      }
      const double t = std::min(t1, t2);

      sol.x += t * z;
      for (size_t j = 0; j < active.size(); ++j)
        sol.multipliers[active[j]] -= t * r[static_cast<Eigen::Index>(j)];
      u += t;

      if (t2 <= t1) {
        sol.multipliers[p] = u;
        active.push_back(p);
        in_active[static_cast<size_t>(p)] = 1;
        break;
      }
      // Partial step: drop the blocking row and retry with the same p.
      const int dropped = active[static_cast<size_t>(blocking)];
      sol.multipliers[dropped] = 0.0;
      in_active[static_cast<size_t>(dropped)] = 0;
      active.erase(active.begin() + blocking);
    }
  }
  throw std::runtime_error("qp::solve iteration cap exceeded");
}

}  // namespace uahand::qp
