/*
 * Copyright (c) 2026 The qkdps Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace qkdps {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

// min c.x  s.t.  a_eq x = b_eq,  lower <= x <= upper  (lower finite).
struct LpProblem {
  Eigen::VectorXd c;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;  // +inf allowed
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;  // multipliers of the equality rows
  int pivots = 0;
};

LpResult lp_solve(const LpProblem& p);
// b.y + sum_j min over [lower_j, upper_j] of (c - A^T y)_j x_j: a lower bound on
// the optimum for any y.
double lp_dual_bound(const LpProblem& p, const Eigen::VectorXd& y);

}  // namespace qkdps
