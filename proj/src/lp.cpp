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

#include "lp.hpp"

#include <cmath>

#include "error.hpp"

namespace qkdps {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-10;
constexpr int kMaxPivots = 200000;

// Dense tableau; the last row holds reduced costs, the last column the rhs.
class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<int> basis) : t_(std::move(t)), basis_(std::move(basis)) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  Eigen::MatrixXd& t() { return t_; }
  std::vector<int>& basis() { return basis_; }
  int pivots() const { return pivots_; }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i < t_.rows(); ++i)
      if (i != r && t_(i, c) != 0.0) t_.row(i) -= t_(i, c) * t_.row(r);
    basis_[r] = c;
    ++pivots_;
  }

  // Bland's rule over columns [0, ncols_allowed).
  LpStatus run(int ncols_allowed) {
    while (true) {
      if (pivots_ > kMaxPivots) return LpStatus::kIterationLimit;
      const int obj = rows();
      int enter = -1;
      for (int j = 0; j < ncols_allowed; ++j)
        if (t_(obj, j) < -kCostTol) {
          enter = j;
          break;
        }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a <= kPivotTol) continue;
        const double ratio = t_(i, cols()) / a;
        if (leave < 0 || ratio < best - 1e-12 || (std::abs(ratio - best) <= 1e-12 && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      pivot(leave, enter);
    }
  }

  void drop_row(int r) {
    const int n = static_cast<int>(t_.rows());
    Eigen::MatrixXd keep(n - 1, t_.cols());
    for (int i = 0, k = 0; i < n; ++i)
      if (i != r) keep.row(k++) = t_.row(i);
    t_ = std::move(keep);
    basis_.erase(basis_.begin() + r);
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  int pivots_ = 0;
};

}  // namespace

double lp_dual_bound(const LpProblem& p, const Eigen::VectorXd& y) {
  const Eigen::VectorXd z = p.c - p.a_eq.transpose() * y;
  double v = p.b_eq.dot(y);
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    if (z(j) >= 0.0) {
      v += z(j) * p.lower(j);
    } else {
      if (!std::isfinite(p.upper(j))) return -std::numeric_limits<double>::infinity();
      v += z(j) * p.upper(j);
    }
  }
  return v;
}

LpResult lp_solve(const LpProblem& p) {
  const int n = static_cast<int>(p.c.size());
  const int m_eq = static_cast<int>(p.b_eq.size());
  require(p.a_eq.rows() == m_eq && p.a_eq.cols() == n && p.lower.size() == n && p.upper.size() == n,
          ErrorCode::kDimensionMismatch, "lp_solve: inconsistent problem dimensions");
  for (int j = 0; j < n; ++j)
    require(std::isfinite(p.lower(j)) && p.lower(j) <= p.upper(j), ErrorCode::kInvalidArgument,
            "lp_solve: each variable needs a finite lower bound not above its upper bound");

  // Shift x = lower + x', add a slack row for every finite upper bound.
  std::vector<int> ub_vars;
  for (int j = 0; j < n; ++j)
    if (std::isfinite(p.upper(j))) ub_vars.push_back(j);
  const int m_ub = static_cast<int>(ub_vars.size());
  const int m = m_eq + m_ub;
  const int n_struct = n + m_ub;        // x' then upper-bound slacks
  const int n_total = n_struct + m_eq;  // then one artificial per equality row

  Eigen::MatrixXd std_a = Eigen::MatrixXd::Zero(m, n_struct);
  Eigen::VectorXd rhs(m);
  Eigen::VectorXd row_sign = Eigen::VectorXd::Ones(m_eq);
  const Eigen::VectorXd shifted = p.b_eq - p.a_eq * p.lower;
  for (int i = 0; i < m_eq; ++i) {
    row_sign(i) = shifted(i) < 0.0 ? -1.0 : 1.0;
    std_a.block(i, 0, 1, n) = row_sign(i) * p.a_eq.row(i);
    rhs(i) = row_sign(i) * shifted(i);
  }
  for (int k = 0; k < m_ub; ++k) {
    std_a(m_eq + k, ub_vars[k]) = 1.0;
    std_a(m_eq + k, n + k) = 1.0;
    rhs(m_eq + k) = p.upper(ub_vars[k]) - p.lower(ub_vars[k]);
  }

  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n_total + 1);
  t.block(0, 0, m, n_struct) = std_a;
  t.block(0, n_total, m, 1) = rhs;
  std::vector<int> basis(m);
  for (int i = 0; i < m_eq; ++i) {
    t(i, n_struct + i) = 1.0;
    basis[i] = n_struct + i;
  }
  for (int k = 0; k < m_ub; ++k) basis[m_eq + k] = n + k;
  // Phase one: minimize the sum of artificials.
  for (int i = 0; i < m_eq; ++i) t.row(m) -= t.row(i);
  for (int i = 0; i < m_eq; ++i) t(m, n_struct + i) = 0.0;

  Tableau tab(std::move(t), std::move(basis));
  std::vector<int> row_origin(m);
  for (int i = 0; i < m; ++i) row_origin[i] = i;

  LpResult res;
  LpStatus st = tab.run(n_total);
  if (st == LpStatus::kIterationLimit) {
    res.status = st;
    return res;
  }
  const double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
  if (m > 0 && -tab.t()(tab.rows(), n_total) > 1e-9 * scale) {
    res.status = LpStatus::kInfeasible;
    res.pivots = tab.pivots();
    return res;
  }
  // Drive artificials out of the basis; rows where that is impossible are redundant.
  for (int r = 0; r < tab.rows();) {
    if (tab.basis()[r] < n_struct) {
      ++r;
      continue;
    }
    int col = -1;
    for (int j = 0; j < n_struct; ++j)
      if (std::abs(tab.t()(r, j)) > kPivotTol) {
        col = j;
        break;
      }
    if (col >= 0) {
      tab.pivot(r, col);
      ++r;
    } else {
      tab.drop_row(r);
      row_origin.erase(row_origin.begin() + r);
    }
  }

  // Phase two objective row.
  const int obj = tab.rows();
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(n_total);
  cost.head(n) = p.c;
  tab.t().row(obj).setZero();
  tab.t().block(obj, 0, 1, n_struct) = cost.head(n_struct).transpose();
  for (int i = 0; i < tab.rows(); ++i) {
    const double cb = cost(tab.basis()[i]);
    if (cb != 0.0) tab.t().row(obj) -= cb * tab.t().row(i);
  }
  st = tab.run(n_struct);
  res.status = st;
  res.pivots = tab.pivots();
  if (st != LpStatus::kOptimal) return res;

  Eigen::VectorXd xs = Eigen::VectorXd::Zero(n_struct);
  for (int i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] < n_struct) xs(tab.basis()[i]) = tab.t()(i, tab.cols());
  res.x = p.lower + xs.head(n);
  res.value = p.c.dot(res.x);

  // Multipliers: solve B^T w = c_B on the surviving rows, then undo the sign flips.
  const int mb = tab.rows();
  res.y = Eigen::VectorXd::Zero(m_eq);
  if (mb > 0) {
    Eigen::MatrixXd bmat(mb, mb);
    Eigen::VectorXd cb(mb);
    for (int k = 0; k < mb; ++k) {
      for (int i = 0; i < mb; ++i) bmat(i, k) = std_a(row_origin[i], tab.basis()[k]);
      cb(k) = cost(tab.basis()[k]);
    }
    const Eigen::VectorXd w = bmat.transpose().fullPivLu().solve(cb);
    for (int i = 0; i < mb; ++i)
      if (row_origin[i] < m_eq) res.y(row_origin[i]) = w(i) * row_sign(row_origin[i]);
  }
  return res;
}

}  // namespace qkdps
