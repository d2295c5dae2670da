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

#include "entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/tools/minima.hpp>

#include "error.hpp"

namespace qkdps {

void KeyMapSpec::validate() const {
  require(g_map.in_dim() > 0, ErrorCode::kInvalidArgument, "KeyMapSpec: empty key map");
  require(!z_pinching.empty(), ErrorCode::kInvalidArgument, "KeyMapSpec: no pinching projectors");
  const int d = g_map.out_dim();
  CMat sum = CMat::Zero(d, d);
  for (size_t i = 0; i < z_pinching.size(); ++i) {
    const CMat& p = z_pinching[i].matrix();
    require(p.rows() == d, ErrorCode::kDimensionMismatch, "KeyMapSpec: projector dimension mismatch");
    require(max_abs(p * p - p) <= 1e-10, ErrorCode::kInvalidArgument, "KeyMapSpec: pinching element is not a projector");
    for (size_t j = 0; j < i; ++j)
      require(max_abs(p * z_pinching[j].matrix()) <= 1e-10, ErrorCode::kInvalidArgument,
              "KeyMapSpec: pinching projectors are not orthogonal");
    sum += p;
  }
  require(max_abs(sum - CMat::Identity(d, d)) <= 1e-10, ErrorCode::kInvalidArgument,
          "KeyMapSpec: pinching projectors do not sum to identity");
}

void ConstraintSet::validate() const {
  require(dim_a > 0 && dim_b > 0, ErrorCode::kInvalidArgument, "ConstraintSet: dimensions must be positive");
  require(fixed_marginal.dim() == dim_a, ErrorCode::kDimensionMismatch, "ConstraintSet: marginal dimension mismatch");
  require(fixed_marginal.normalization() == Normalization::kState, ErrorCode::kInvalidArgument,
          "ConstraintSet: marginal must be a normalized state");
  const size_t k = observables.size();
  require(static_cast<size_t>(lower.size()) == k && static_cast<size_t>(upper.size()) == k,
          ErrorCode::kDimensionMismatch, "ConstraintSet: one interval per observable");
  for (size_t i = 0; i < k; ++i) {
    require(observables[i].dim() == dim_a * dim_b, ErrorCode::kDimensionMismatch,
            "ConstraintSet: observable dimension mismatch");
    require(std::isfinite(lower(i)) && std::isfinite(upper(i)) && lower(i) <= upper(i), ErrorCode::kInvalidArgument,
            "ConstraintSet: interval " + std::to_string(i) + " has lower > upper");
  }
  if (!b_blocks.empty()) {
    std::vector<int> seen(dim_b, 0);
    for (const auto& blk : b_blocks) {
      require(!blk.empty(), ErrorCode::kInvalidArgument, "ConstraintSet: empty B block");
      for (int i : blk) {
        require(i >= 0 && i < dim_b, ErrorCode::kInvalidArgument, "ConstraintSet: B block index out of range");
        ++seen[i];
      }
    }
    for (int s : seen) require(s == 1, ErrorCode::kInvalidArgument, "ConstraintSet: B blocks must partition B");
  }
}

namespace {

double xlogx_sum(const CMat& m, double floor) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  double v = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 0.0) v += l * std::log2(std::max(l, floor));
  }
  return v;
}

CMat pinch(const CMat& g, const std::vector<HermOp>& proj) {
  CMat out = CMat::Zero(g.rows(), g.cols());
  for (const auto& p : proj) out += p.matrix() * g * p.matrix();
  return out;
}

// D(g || Z(g)) in bits.
double rel_ent_to_pinching(const CMat& g, const std::vector<HermOp>& proj) {
  const CMat h = 0.5 * (g + g.adjoint());
  return xlogx_sum(h, kLogFloor) - xlogx_sum(pinch(h, proj), kLogFloor);
}

CMat log_difference(const CMat& g, const std::vector<HermOp>& proj) {
  const CMat h = 0.5 * (g + g.adjoint());
  return mat_log2_clamped(h, kLogFloor) - mat_log2_clamped(pinch(h, proj), kLogFloor);
}

std::vector<CMat> hermitian_basis(int r) {
  std::vector<CMat> out;
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < r; ++i) out.push_back(basis_projector(r, i));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      CMat a = CMat::Zero(r, r), b = CMat::Zero(r, r);
      a(i, j) = a(j, i) = s;
      b(i, j) = Complex(0, -s);
      b(j, i) = Complex(0, s);
      out.push_back(a);
      out.push_back(b);
    }
  return out;
}

enum class RowKind { kEquality, kLower, kUpper };

// The constraint set restricted to the support of the marginal and, when
// requested, to block-diagonal states; lowered to a block SDP.
class Reduced {
 public:
  explicit Reduced(const ConstraintSet& cs) {
    cs.validate();
    da_ = cs.dim_a;
    db_ = cs.dim_b;
    const Eigh me = eigh(cs.fixed_marginal.herm());
    const double thr = 1e-10 * std::max(1.0, me.values.maxCoeff());
    std::vector<int> keep;
    for (int i = 0; i < da_; ++i)
      if (me.values(i) > thr) keep.push_back(i);
    r_ = static_cast<int>(keep.size());
    require(r_ > 0, ErrorCode::kInvalidArgument, "ConstraintSet: marginal has empty support");
    v_ = CMat(da_, r_);
    for (int i = 0; i < r_; ++i) v_.col(i) = me.vectors.col(keep[i]);

    blocks_ = cs.b_blocks;
    if (blocks_.empty()) {
      blocks_.emplace_back();
      for (int i = 0; i < db_; ++i) blocks_.back().push_back(i);
    }
    for (const auto& blk : blocks_) {
      const int nb = static_cast<int>(blk.size());
      CMat e = CMat::Zero(da_ * db_, r_ * nb);
      for (int a = 0; a < r_; ++a)
        for (int j = 0; j < nb; ++j)
          for (int al = 0; al < da_; ++al) e(al * db_ + blk[j], a * nb + j) = v_(al, a);
      embed_.push_back(e);
      problem_.block_dims.push_back(r_ * nb);
    }
    if (cs.b_blocks.size() > 1)
      for (const auto& o : cs.observables)
        require(is_block_diagonal(o.matrix()), ErrorCode::kInvalidArgument,
                "ConstraintSet: observable does not respect the declared B blocks");

    const CMat marg = v_.adjoint() * cs.fixed_marginal.matrix() * v_;
    trace_ = marg.trace().real();
    struct EqRow {
      std::vector<CMat> a;
      double rhs;
    };
    std::vector<EqRow> eq;
    for (const CMat& h : hermitian_basis(r_)) eq.push_back({compress(kron(v_ * h * v_.adjoint(), CMat::Identity(db_, db_))), trace_prod(h, marg)});

    struct IneqRow {
      std::vector<CMat> a;
      double rhs;
      RowKind kind;
    };
    std::vector<IneqRow> ineq;
    for (size_t k = 0; k < cs.observables.size(); ++k) {
      std::vector<CMat> a = compress(cs.observables[k].matrix());
      double lo_eig = std::numeric_limits<double>::infinity(), hi_eig = -lo_eig;
      for (const auto& blk : a) {
        const Eigh e = eigh_unchecked(0.5 * (blk + blk.adjoint()));
        lo_eig = std::min(lo_eig, e.values(0) * trace_);
        hi_eig = std::max(hi_eig, e.values(e.values.size() - 1) * trace_);
      }
      const double lo = cs.lower(k), hi = cs.upper(k);
      const double slack = 1e-12 * (1.0 + std::abs(lo_eig) + std::abs(hi_eig));
      require(lo <= hi_eig + 1e-9 && hi >= lo_eig - 1e-9, ErrorCode::kInfeasible,
              "ConstraintSet: interval " + std::to_string(k) + " lies outside the observable's range");
      if (hi - lo <= 1e-14) {
        eq.push_back({a, 0.5 * (lo + hi)});
        continue;
      }
      if (lo > lo_eig + slack) ineq.push_back({a, lo, RowKind::kLower});
      if (hi < hi_eig - slack) ineq.push_back({a, hi, RowKind::kUpper});
    }

    // Keep an independent subset of the equality rows (Gram-Schmidt on the
    // real vectorization), checking that dropped rows are consistent.
    std::vector<Eigen::VectorXd> q;
    std::vector<double> q_rhs;
    for (const EqRow& row : eq) {
      Eigen::VectorXd v = vectorize(row.a);
      double rhs = row.rhs;
      const double n0 = v.norm();
      for (size_t i = 0; i < q.size(); ++i) {
        const double c = q[i].dot(v);
        v -= c * q[i];
        rhs -= c * q_rhs[i];
      }
      for (size_t i = 0; i < q.size(); ++i) {
        const double c = q[i].dot(v);
        v -= c * q[i];
        rhs -= c * q_rhs[i];
      }
      const double n1 = v.norm();
      if (n1 <= 1e-9 * std::max(1.0, n0)) {
        require(std::abs(rhs) <= 1e-8 * (1.0 + std::abs(row.rhs)), ErrorCode::kInfeasible,
                "ConstraintSet: equality constraints are inconsistent");
        continue;
      }
      q.push_back(v / n1);
      q_rhs.push_back(rhs / n1);
      add_row(row.a, row.rhs, RowKind::kEquality, 0.0);
    }
    for (const IneqRow& row : ineq) add_row(row.a, row.rhs, row.kind, row.kind == RowKind::kLower ? -1.0 : 1.0);
    problem_.c_lp = RVec::Zero(problem_.n_lp);
  }

  int n_blocks() const { return static_cast<int>(embed_.size()); }
  double trace() const { return trace_; }
  int dim_a() const { return da_; }
  int dim_b() const { return db_; }
  const std::vector<std::vector<int>>& b_blocks() const { return blocks_; }
  const CMat& embedding(int k) const { return embed_[k]; }

  std::vector<CMat> compress(const CMat& full) const {
    std::vector<CMat> out;
    for (const auto& e : embed_) out.push_back(e.adjoint() * full * e);
    return out;
  }

  CMat embed(const std::vector<CMat>& x) const {
    CMat out = CMat::Zero(da_ * db_, da_ * db_);
    for (size_t k = 0; k < x.size(); ++k) out += embed_[k] * x[k] * embed_[k].adjoint();
    return out;
  }

  bool is_block_diagonal(const CMat& full) const {
    for (size_t k = 0; k < blocks_.size(); ++k)
      for (size_t l = 0; l < blocks_.size(); ++l) {
        if (k == l) continue;
        for (int a = 0; a < da_; ++a)
          for (int b = 0; b < da_; ++b)
            for (int i : blocks_[k])
              for (int j : blocks_[l])
                if (std::abs(full(a * db_ + i, b * db_ + j)) > 1e-12) return false;
      }
    return true;
  }

  SdpResult solve(const std::vector<CMat>& w, const SdpOptions& opts) const {
    SdpProblem p = problem_;
    p.c = w;
    for (auto& c : p.c) c = 0.5 * (c + c.adjoint());
    return solve_sdp(p, opts);
  }

  // Lower bound on min <W, sigma> over the set, valid for any multipliers y.
  double certify(const std::vector<CMat>& w, const RVec& y_raw) const {
    const int m = static_cast<int>(kinds_.size());
    RVec y = RVec::Zero(m);
    if (y_raw.size() == m && y_raw.allFinite()) y = y_raw;
    double bound = 0.0;
    std::vector<CMat> s = w;
    for (int i = 0; i < m; ++i) {
      if (kinds_[i] == RowKind::kLower) y(i) = std::max(y(i), 0.0);
      if (kinds_[i] == RowKind::kUpper) y(i) = std::min(y(i), 0.0);
      if (y(i) == 0.0) continue;
      bound += y(i) * problem_.rows[i].rhs;
      for (const auto& [b, a] : problem_.rows[i].blocks) s[b] -= y(i) * a;
    }
    double lmin = 0.0;
    for (const auto& sb : s) lmin = std::min(lmin, lambda_min(0.5 * (sb + sb.adjoint())));
    return bound + lmin * trace_;
  }

 private:
  Eigen::VectorXd vectorize(const std::vector<CMat>& a) const {
    Eigen::Index n = 0;
    for (const auto& b : a) n += 2 * b.size();
    Eigen::VectorXd v(n);
    Eigen::Index k = 0;
    for (const auto& b : a)
      for (Eigen::Index i = 0; i < b.size(); ++i) {
        v(k++) = b.data()[i].real();
        v(k++) = b.data()[i].imag();
      }
    return v;
  }

  void add_row(const std::vector<CMat>& a, double rhs, RowKind kind, double slack_coeff) {
    SdpRow row;
    for (size_t b = 0; b < a.size(); ++b)
      if (max_abs(a[b]) > 1e-15) row.blocks.emplace_back(static_cast<int>(b), 0.5 * (a[b] + a[b].adjoint()));
    if (kind != RowKind::kEquality) row.lp.emplace_back(problem_.n_lp++, slack_coeff);
    row.rhs = rhs;
    problem_.rows.push_back(std::move(row));
    kinds_.push_back(kind);
  }

  int da_ = 0, db_ = 0, r_ = 0;
  double trace_ = 1.0;
  CMat v_;
  std::vector<std::vector<int>> blocks_;
  std::vector<CMat> embed_;
  SdpProblem problem_;
  std::vector<RowKind> kinds_;
};

DensityOp as_state(const CMat& m) {
  CMat h = 0.5 * (m + m.adjoint());
  h /= h.trace().real();
  // Clip rounding-level negative eigenvalues.
  const Eigh e = eigh_unchecked(h);
  if (e.values(0) < 0.0) {
    h = e.vectors * e.values.cwiseMax(0.0).asDiagonal() * e.vectors.adjoint();
    h /= h.trace().real();
    h = 0.5 * (h + h.adjoint());
  }
  return DensityOp(h);
}

double inner(const std::vector<CMat>& a, const std::vector<CMat>& b) {
  double v = 0.0;
  for (size_t i = 0; i < a.size(); ++i) v += trace_prod(a[i], b[i]);
  return v;
}

// Key map acting directly on the reduced blocks.
class ReducedKeyMap {
 public:
  ReducedKeyMap(const KeyMapSpec& km, const Reduced& red) : proj_(km.z_pinching), dout_(km.g_map.out_dim()) {
    for (const auto& k : km.g_map.ops()) {
      std::vector<CMat> per_block;
      for (int b = 0; b < red.n_blocks(); ++b) per_block.push_back(k * red.embedding(b));
      ke_.push_back(std::move(per_block));
    }
  }

  CMat image(const std::vector<CMat>& x) const {
    CMat g = CMat::Zero(dout_, dout_);
    for (const auto& per_block : ke_)
      for (size_t b = 0; b < per_block.size(); ++b) g.noalias() += per_block[b] * x[b] * per_block[b].adjoint();
    return g;
  }

  std::vector<CMat> adjoint(const CMat& y) const {
    std::vector<CMat> out;
    for (size_t b = 0; b < ke_.front().size(); ++b) {
      CMat acc = CMat::Zero(ke_.front()[b].cols(), ke_.front()[b].cols());
      for (const auto& per_block : ke_) acc.noalias() += per_block[b].adjoint() * y * per_block[b];
      out.push_back(0.5 * (acc + acc.adjoint()));
    }
    return out;
  }

  const std::vector<HermOp>& pinching() const { return proj_; }
  int out_dim() const { return dout_; }

 private:
  std::vector<std::vector<CMat>> ke_;
  std::vector<HermOp> proj_;
  int dout_;
};

void check_keymap_blocks(const KeyMapSpec& km, const Reduced& red) {
  if (red.b_blocks().size() <= 1) return;
  const int db = red.dim_b(), dout = km.g_map.out_dim();
  require(dout % db == 0, ErrorCode::kInvalidArgument,
          "key map output must factor as (register) x B when B blocks are declared");
  const int dr = dout / db;
  for (const auto& blk : red.b_blocks()) {
    CMat pb = CMat::Zero(db, db);
    for (int i : blk) pb(i, i) = 1.0;
    const CMat in_p = kron(CMat::Identity(red.dim_a(), red.dim_a()), pb);
    const CMat out_p = kron(CMat::Identity(dr, dr), pb);
    for (const auto& k : km.g_map.ops())
      require(max_abs(k * in_p - out_p * k) <= 1e-12, ErrorCode::kInvalidArgument,
              "key map does not commute with the declared B blocks");
    for (const auto& p : km.z_pinching)
      require(max_abs(p.matrix() * out_p - out_p * p.matrix()) <= 1e-12, ErrorCode::kInvalidArgument,
              "pinching does not commute with the declared B blocks");
  }
}

}  // namespace

ObjectiveValue objective_value(const DensityOp& sigma, const KeyMapSpec& km) {
  km.validate();
  require(sigma.dim() == km.g_map.in_dim(), ErrorCode::kDimensionMismatch, "objective: state dimension mismatch");
  const CMat g = km.g_map.apply(sigma.matrix());
  if (g.trace().real() <= 1e-15) return {0.0, true};
  return {rel_ent_to_pinching(g, km.z_pinching), false};
}

double objective(const DensityOp& sigma, const KeyMapSpec& km) { return objective_value(sigma, km).bits; }

HermOp gradient(const DensityOp& sigma, const KeyMapSpec& km) {
  km.validate();
  require(sigma.dim() == km.g_map.in_dim(), ErrorCode::kDimensionMismatch, "gradient: state dimension mismatch");
  const CMat g = km.g_map.apply(sigma.matrix());
  require(g.trace().real() > 1e-15, ErrorCode::kInvalidArgument, "gradient: key map image has zero trace");
  return HermOp::hermitize(km.g_map.adjoint(log_difference(g, km.z_pinching)));
}

LinearMin sdp_linear_min(const HermOp& w, const ConstraintSet& cs, const SdpOptions& opts) {
  const Reduced red(cs);
  require(w.dim() == cs.dim_a * cs.dim_b, ErrorCode::kDimensionMismatch, "sdp_linear_min: objective dimension mismatch");
  const std::vector<CMat> wb = red.compress(w.matrix());
  const SdpResult r = red.solve(wb, opts);
  require(r.status != SdpStatus::kInfeasible, ErrorCode::kInfeasible, "sdp_linear_min: constraint set is infeasible");
  require(r.status != SdpStatus::kFailed, ErrorCode::kNumerical, "sdp_linear_min: interior-point solver failed");
  LinearMin out;
  out.argument = as_state(red.embed(r.x));
  out.value = trace_prod(w.matrix(), out.argument.matrix());
  out.dual_bound = red.certify(wb, r.y);
  return out;
}

EntropyBound min_entropy_lower_bound(const ConstraintSet& cs, const KeyMapSpec& km, const EntropyOptions& opts) {
  km.validate();
  require(km.g_map.in_dim() == cs.dim_a * cs.dim_b, ErrorCode::kDimensionMismatch,
          "min_entropy_lower_bound: key map input dimension mismatch");
  const Reduced red(cs);
  check_keymap_blocks(km, red);
  const ReducedKeyMap g(km, red);
  const double eps = opts.perturbation;
  require(eps > 0.0 && eps < 1.0, ErrorCode::kInvalidArgument, "min_entropy_lower_bound: perturbation must lie in (0,1)");
  const int dout = g.out_dim();
  const double zeta = dout > 1 ? 2.0 * eps * (dout - 1) * std::log2(dout / (eps * (dout - 1))) : 0.0;
  const CMat noise = (eps / dout) * CMat::Identity(dout, dout);
  auto perturbed = [&](const CMat& gx) { return CMat((1.0 - eps) * gx + noise); };

  std::vector<CMat> zero_w;
  for (int b = 0; b < red.n_blocks(); ++b) zero_w.push_back(CMat::Zero(red.embedding(b).cols(), red.embedding(b).cols()));
  const SdpResult start = red.solve(zero_w, opts.sdp);
  require(start.status != SdpStatus::kInfeasible && start.primal_infeasibility <= 1e-6, ErrorCode::kInfeasible,
          "min_entropy_lower_bound: constraint set is infeasible");
  require(start.status != SdpStatus::kFailed, ErrorCode::kNumerical, "min_entropy_lower_bound: interior-point solver failed");

  std::vector<CMat> x = start.x;
  EntropyBound out;
  double best_bound = -std::numeric_limits<double>::infinity();
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<CMat> best_x = x;

  for (int it = 0; it < opts.max_iterations; ++it) {
    out.iterations = it + 1;
    const CMat gx = g.image(x);
    const double value = gx.trace().real() > 1e-15 ? rel_ent_to_pinching(gx, g.pinching()) : 0.0;
    if (value < best_value) {
      best_value = value;
      best_x = x;
    }
    const CMat gxe = perturbed(gx);
    const double fe = rel_ent_to_pinching(gxe, g.pinching());
    std::vector<CMat> grad = g.adjoint(log_difference(gxe, g.pinching()));
    for (auto& gb : grad) gb *= (1.0 - eps);

    const SdpResult lmo = red.solve(grad, opts.sdp);
    const double lin_lb = red.certify(grad, lmo.y);
    best_bound = std::max(best_bound, fe + lin_lb - inner(grad, x) - zeta);

    const double gap = best_value - best_bound;
    const double target = std::max(opts.gap_target, opts.relative_gap_target * std::abs(best_value));
    if (gap <= target) {
      out.status = BoundStatus::kConverged;
      break;
    }
    if (lmo.status == SdpStatus::kFailed) break;

    std::vector<CMat> d(x.size());
    for (size_t b = 0; b < x.size(); ++b) d[b] = lmo.x[b] - x[b];
    const CMat gd = g.image(d);
    auto phi = [&](double t) { return rel_ent_to_pinching(perturbed(gx + t * gd), g.pinching()); };
    const auto [t_star, f_star] = boost::math::tools::brent_find_minima(phi, 0.0, 1.0, 30);
    double step = t_star;
    if (phi(1.0) < f_star) step = 1.0;
    if (step <= 0.0) continue;
    for (size_t b = 0; b < x.size(); ++b) x[b] += step * d[b];
  }

  out.feasible_value = best_value;
  out.lower_bound = std::min(std::max(best_bound, 0.0), best_value);
  out.gap = out.feasible_value - out.lower_bound;
  out.argument = as_state(red.embed(best_x));
  return out;
}

double conditional_shannon(const std::vector<JointRow>& joint) {
  double total = 0.0;
  std::map<std::tuple<int, int, int>, double> zyc;
  std::map<std::pair<int, int>, double> yc;
  for (const auto& r : joint) {
    require(r.p >= 0.0 && std::isfinite(r.p), ErrorCode::kInvalidArgument, "conditional_shannon: negative frequency");
    total += r.p;
    zyc[{r.z, r.y, r.c}] += r.p;
    yc[{r.y, r.c}] += r.p;
  }
  require(std::abs(total - 1.0) <= 1e-9, ErrorCode::kInvalidArgument, "conditional_shannon: frequencies do not sum to 1");
  auto h = [](double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; };
  double v = 0.0;
  for (const auto& [k, p] : zyc) v += h(p);
  for (const auto& [k, p] : yc) v -= h(p);
  return std::max(v, 0.0);
}

}  // namespace qkdps
