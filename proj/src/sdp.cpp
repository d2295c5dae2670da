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

#include "sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"

namespace qkdps {

void SdpProblem::validate() const {
  const int nb = static_cast<int>(block_dims.size());
  require(static_cast<int>(c.size()) == nb, ErrorCode::kDimensionMismatch, "SdpProblem: one cost block per cone block");
  require(c_lp.size() == n_lp, ErrorCode::kDimensionMismatch, "SdpProblem: LP cost has wrong length");
  for (int b = 0; b < nb; ++b)
    require(c[b].rows() == block_dims[b] && c[b].cols() == block_dims[b], ErrorCode::kDimensionMismatch,
            "SdpProblem: cost block has wrong shape");
  for (const auto& r : rows) {
    for (const auto& [b, a] : r.blocks)
      require(b >= 0 && b < nb && a.rows() == block_dims[b] && a.cols() == block_dims[b],
              ErrorCode::kDimensionMismatch, "SdpProblem: constraint block has wrong shape");
    for (const auto& [k, v] : r.lp)
      require(k >= 0 && k < n_lp && std::isfinite(v), ErrorCode::kDimensionMismatch, "SdpProblem: bad LP coefficient");
  }
}

namespace {

struct Iterate {
  std::vector<CMat> x, s;
  RVec x_lp, s_lp, y;
};

struct Direction {
  std::vector<CMat> dx, ds;
  RVec dx_lp, ds_lp, dy;
};

double inner(const std::vector<CMat>& a, const std::vector<CMat>& b) {
  double v = 0.0;
  for (size_t i = 0; i < a.size(); ++i) v += trace_prod(a[i], b[i]);
  return v;
}

CMat herm(const CMat& m) { return 0.5 * (m + m.adjoint()); }

// Largest alpha with x + alpha dx >= 0 (may be +inf).
double max_step(const CMat& x, const CMat& dx) {
  Eigen::LLT<CMat> llt(x);
  if (llt.info() != Eigen::Success) return 0.0;
  const CMat linv_dx = llt.matrixL().solve(dx);
  const CMat z = llt.matrixL().solve(linv_dx.adjoint()).adjoint();
  const double lmin = lambda_min(herm(z));
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

double max_step_lp(const RVec& x, const RVec& dx) {
  double a = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (dx(i) < 0.0) a = std::min(a, -x(i) / dx(i));
  return a;
}

class Solver {
 public:
  Solver(const SdpProblem& p, const SdpOptions& o) : p_(p), o_(o), nb_(static_cast<int>(p.block_dims.size())) {
    m_ = static_cast<int>(p.rows.size());
    b_.resize(m_);
    for (int i = 0; i < m_; ++i) b_(i) = p.rows[i].rhs;
    n_cone_ = p.n_lp;
    for (int d : p.block_dims) n_cone_ += d;
  }

  SdpResult run() {
    init();
    SdpResult best;
    double best_score = std::numeric_limits<double>::infinity();
    for (int it = 0; it <= o_.max_iterations; ++it) {
      residuals();
      const double pobj = inner(p_.c, z_.x) + p_.c_lp.dot(z_.x_lp);
      const double dobj = b_.dot(z_.y);
      const double gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
      const double compl_gap = (inner(z_.x, z_.s) + z_.x_lp.dot(z_.s_lp)) / (1.0 + std::abs(pobj) + std::abs(dobj));
      const double pinf = rp_.norm() / (1.0 + b_.norm());
      const double dinf = dual_residual_norm() / (1.0 + cost_norm_);
      const double score = std::max({gap, compl_gap, pinf, dinf});
      if (score < best_score) {
        best_score = score;
        best = snapshot(pobj, dobj, pinf, dinf, it);
      }
      if (score <= o_.tol) {
        best.status = SdpStatus::kOptimal;
        return best;
      }
      if (dobj > 1e10 * (1.0 + std::abs(pobj)) && dinf <= 1e-6) {
        best = snapshot(pobj, dobj, pinf, dinf, it);
        best.status = SdpStatus::kInfeasible;
        return best;
      }
      if (it == o_.max_iterations || !step()) break;
    }
    best.status = best_score <= 1e-6 ? SdpStatus::kInaccurate : SdpStatus::kFailed;
    return best;
  }

 private:
  SdpResult snapshot(double pobj, double dobj, double pinf, double dinf, int it) const {
    SdpResult r;
    r.x = z_.x;
    r.s = z_.s;
    r.x_lp = z_.x_lp;
    r.s_lp = z_.s_lp;
    r.y = z_.y;
    r.primal_objective = pobj;
    r.dual_objective = dobj;
    r.primal_infeasibility = pinf;
    r.dual_infeasibility = dinf;
    r.iterations = it;
    return r;
  }

  void init() {
    z_.x.resize(nb_);
    z_.s.resize(nb_);
    cost_norm_ = p_.c_lp.norm();
    for (int b = 0; b < nb_; ++b) cost_norm_ = std::hypot(cost_norm_, p_.c[b].norm());
    std::vector<double> a_norm_block(nb_, 0.0);
    for (int b = 0; b < nb_; ++b) {
      const double n = p_.block_dims[b];
      double xi = std::max(10.0, std::sqrt(n)), eta = std::max(10.0, std::sqrt(n));
      for (const auto& r : p_.rows)
        for (const auto& [bb, a] : r.blocks)
          if (bb == b) {
            const double an = a.norm();
            xi = std::max(xi, n * (1.0 + std::abs(r.rhs)) / (1.0 + an));
            eta = std::max(eta, an);
          }
      eta = std::max(eta, p_.c[b].norm());
      z_.x[b] = xi * CMat::Identity(p_.block_dims[b], p_.block_dims[b]);
      z_.s[b] = eta * CMat::Identity(p_.block_dims[b], p_.block_dims[b]);
    }
    z_.x_lp = RVec::Constant(p_.n_lp, 10.0);
    z_.s_lp = RVec::Constant(p_.n_lp, 10.0);
    for (const auto& r : p_.rows)
      for (const auto& [k, v] : r.lp) {
        z_.x_lp(k) = std::max(z_.x_lp(k), (1.0 + std::abs(r.rhs)) / (1.0 + std::abs(v)));
        z_.s_lp(k) = std::max(z_.s_lp(k), std::abs(v));
      }
    for (int k = 0; k < p_.n_lp; ++k) z_.s_lp(k) = std::max(z_.s_lp(k), std::abs(p_.c_lp(k)));
    z_.y = RVec::Zero(m_);
  }

  // A(X) for block matrices / LP vector.
  RVec apply_a(const std::vector<CMat>& x, const RVec& x_lp) const {
    RVec out(m_);
    for (int i = 0; i < m_; ++i) {
      double v = 0.0;
      for (const auto& [b, a] : p_.rows[i].blocks) v += trace_prod(a, x[b]);
      for (const auto& [k, c] : p_.rows[i].lp) v += c * x_lp(k);
      out(i) = v;
    }
    return out;
  }

  // A^*(y) into blocks and LP vector.
  void apply_at(const RVec& y, std::vector<CMat>& out, RVec& out_lp) const {
    out.resize(nb_);
    for (int b = 0; b < nb_; ++b) out[b] = CMat::Zero(p_.block_dims[b], p_.block_dims[b]);
    out_lp = RVec::Zero(p_.n_lp);
    for (int i = 0; i < m_; ++i) {
      if (y(i) == 0.0) continue;
      for (const auto& [b, a] : p_.rows[i].blocks) out[b] += y(i) * a;
      for (const auto& [k, c] : p_.rows[i].lp) out_lp(k) += y(i) * c;
    }
  }

  void residuals() {
    rp_ = b_ - apply_a(z_.x, z_.x_lp);
    std::vector<CMat> aty;
    RVec aty_lp;
    apply_at(z_.y, aty, aty_lp);
    rd_.resize(nb_);
    for (int b = 0; b < nb_; ++b) rd_[b] = p_.c[b] - z_.s[b] - aty[b];
    rd_lp_ = p_.c_lp - z_.s_lp - aty_lp;
  }

  double dual_residual_norm() const {
    double v = rd_lp_.norm();
    for (const auto& r : rd_) v = std::hypot(v, r.norm());
    return v;
  }

  bool factor() {
    sinv_.resize(nb_);
    for (int b = 0; b < nb_; ++b) {
      Eigen::LLT<CMat> llt(z_.s[b]);
      if (llt.info() != Eigen::Success) return false;
      sinv_[b] = herm(llt.solve(CMat::Identity(p_.block_dims[b], p_.block_dims[b])));
    }
    // Schur complement M_ij = <A_i, X A_j S^-1> + sum_k a_ik a_jk x_k / s_k.
    Eigen::MatrixXd mm = Eigen::MatrixXd::Zero(m_, m_);
    std::vector<std::vector<CMat>> g(m_);
    for (int j = 0; j < m_; ++j)
      for (const auto& [b, a] : p_.rows[j].blocks) g[j].push_back(z_.x[b] * a * sinv_[b]);
    for (int i = 0; i < m_; ++i)
      for (int j = i; j < m_; ++j) {
        double v = 0.0;
        const auto& ri = p_.rows[i].blocks;
        const auto& rj = p_.rows[j].blocks;
        for (size_t u = 0; u < ri.size(); ++u)
          for (size_t w = 0; w < rj.size(); ++w)
            if (ri[u].first == rj[w].first) v += trace_prod(ri[u].second, g[j][w]);
        for (const auto& [ki, ci] : p_.rows[i].lp)
          for (const auto& [kj, cj] : p_.rows[j].lp)
            if (ki == kj) v += ci * cj * z_.x_lp(ki) / z_.s_lp(ki);
        mm(i, j) = mm(j, i) = v;
      }
    double jitter = 0.0;
    const double scale = std::max(1.0, mm.diagonal().cwiseAbs().maxCoeff());
    for (int attempt = 0; attempt < 8; ++attempt) {
      Eigen::MatrixXd reg = mm;
      reg.diagonal().array() += jitter;
      schur_.compute(reg);
      if (schur_.info() == Eigen::Success) return true;
      jitter = jitter == 0.0 ? 1e-14 * scale : jitter * 100.0;
    }
    return false;
  }

  // Solve for the HKM direction with complementarity target sigma_mu and an
  // optional second-order correction term (dX_a dS_a).
  Direction solve(double sigma_mu, const Direction* corr) const {
    std::vector<CMat> rc(nb_);
    for (int b = 0; b < nb_; ++b) {
      CMat t = sigma_mu * sinv_[b] - z_.x[b];
      if (corr) t -= corr->dx[b] * corr->ds[b] * sinv_[b];
      rc[b] = t;
    }
    RVec rc_lp(p_.n_lp);
    for (int k = 0; k < p_.n_lp; ++k) {
      double t = sigma_mu / z_.s_lp(k) - z_.x_lp(k);
      if (corr) t -= corr->dx_lp(k) * corr->ds_lp(k) / z_.s_lp(k);
      rc_lp(k) = t;
    }
    std::vector<CMat> xrs(nb_);
    for (int b = 0; b < nb_; ++b) xrs[b] = z_.x[b] * rd_[b] * sinv_[b];
    RVec xrs_lp = z_.x_lp.cwiseProduct(rd_lp_).cwiseQuotient(z_.s_lp);
    const RVec rhs = rp_ - apply_a(rc, rc_lp) + apply_a(xrs, xrs_lp);

    Direction d;
    d.dy = schur_.solve(rhs);
    std::vector<CMat> atdy;
    RVec atdy_lp;
    apply_at(d.dy, atdy, atdy_lp);
    d.ds.resize(nb_);
    d.dx.resize(nb_);
    for (int b = 0; b < nb_; ++b) {
      d.ds[b] = herm(rd_[b] - atdy[b]);
      d.dx[b] = herm(rc[b] - z_.x[b] * d.ds[b] * sinv_[b]);
    }
    d.ds_lp = rd_lp_ - atdy_lp;
    d.dx_lp = rc_lp - z_.x_lp.cwiseProduct(d.ds_lp).cwiseQuotient(z_.s_lp);
    return d;
  }

  std::pair<double, double> step_lengths(const Direction& d) const {
    double ap = max_step_lp(z_.x_lp, d.dx_lp), ad = max_step_lp(z_.s_lp, d.ds_lp);
    for (int b = 0; b < nb_; ++b) {
      ap = std::min(ap, max_step(z_.x[b], d.dx[b]));
      ad = std::min(ad, max_step(z_.s[b], d.ds[b]));
    }
    return {ap, ad};
  }

  bool step() {
    if (!factor()) return false;
    const double mu = (inner(z_.x, z_.s) + z_.x_lp.dot(z_.s_lp)) / n_cone_;
    const Direction aff = solve(0.0, nullptr);
    auto [ap, ad] = step_lengths(aff);
    ap = std::min(1.0, ap);
    ad = std::min(1.0, ad);
    double mu_aff = 0.0;
    for (int b = 0; b < nb_; ++b) mu_aff += trace_prod(z_.x[b] + ap * aff.dx[b], z_.s[b] + ad * aff.ds[b]);
    mu_aff += (z_.x_lp + ap * aff.dx_lp).dot(z_.s_lp + ad * aff.ds_lp);
    mu_aff /= n_cone_;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
    const Direction d = solve(sigma * mu, &aff);
    auto [sp, sd] = step_lengths(d);
    sp = std::min(1.0, o_.step_fraction * sp);
    sd = std::min(1.0, o_.step_fraction * sd);
    if (!(sp > 0.0) || !(sd > 0.0)) return false;
    for (int b = 0; b < nb_; ++b) {
      z_.x[b] = herm(z_.x[b] + sp * d.dx[b]);
      z_.s[b] = herm(z_.s[b] + sd * d.ds[b]);
    }
    z_.x_lp += sp * d.dx_lp;
    z_.s_lp += sd * d.ds_lp;
    z_.y += sd * d.dy;
    return true;
  }

  const SdpProblem& p_;
  const SdpOptions& o_;
  int nb_;
  int m_ = 0;
  double n_cone_ = 0.0;
  double cost_norm_ = 0.0;
  RVec b_;
  Iterate z_;
  RVec rp_, rd_lp_;
  std::vector<CMat> rd_, sinv_;
  Eigen::LDLT<Eigen::MatrixXd> schur_;
};

}  // namespace

SdpResult solve_sdp(const SdpProblem& p, const SdpOptions& opts) {
  p.validate();
  Solver s(p, opts);
  return s.run();
}

}  // namespace qkdps
