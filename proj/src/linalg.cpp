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

#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace qkdps {

namespace {

void require_square(const CMat& m, const char* what) {
  require(m.rows() == m.cols() && m.rows() > 0, ErrorCode::kDimensionMismatch,
          std::string(what) + ": matrix must be square and nonempty");
}

void require_finite(const CMat& m, const char* what) {
  require(m.allFinite(), ErrorCode::kInvalidArgument, std::string(what) + ": non-finite entry");
}

double herm_defect(const CMat& m) { return max_abs(m - m.adjoint()); }

}  // namespace

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double trace_prod(const CMat& a, const CMat& b) {
  return (a.cwiseProduct(b.transpose())).sum().real();
}

CMat basis_projector(int dim, int i) {
  CMat p = CMat::Zero(dim, dim);
  p(i, i) = 1.0;
  return p;
}

HermOp::HermOp(CMat m) {
  require_square(m, "HermOp");
  require_finite(m, "HermOp");
  const double d = herm_defect(m);
  if (d > kHermTol) {
    std::ostringstream os;
    os << "HermOp: matrix is not Hermitian (max deviation " << d << ")";
    fail(ErrorCode::kNotHermitian, os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermOp HermOp::hermitize(const CMat& m) {
  require_square(m, "HermOp");
  require_finite(m, "HermOp");
  return HermOp(CMat(0.5 * (m + m.adjoint())), Trusted{});
}

HermOp HermOp::identity(int dim) { return HermOp(CMat::Identity(dim, dim), Trusted{}); }
HermOp HermOp::zero(int dim) { return HermOp(CMat::Zero(dim, dim), Trusted{}); }

HermOp HermOp::operator+(const HermOp& o) const {
  require(dim() == o.dim(), ErrorCode::kDimensionMismatch, "HermOp sum: dimension mismatch");
  return HermOp(CMat(m_ + o.m_), Trusted{});
}

HermOp HermOp::operator-(const HermOp& o) const {
  require(dim() == o.dim(), ErrorCode::kDimensionMismatch, "HermOp difference: dimension mismatch");
  return HermOp(CMat(m_ - o.m_), Trusted{});
}

HermOp HermOp::operator*(double s) const { return HermOp(CMat(m_ * s), Trusted{}); }

DensityOp::DensityOp(CMat m, Normalization norm) : norm_(norm) {
  HermOp h(std::move(m));
  const double lmin = lambda_min(h.matrix());
  if (lmin < -kPsdTol) {
    std::ostringstream os;
    os << "DensityOp: negative eigenvalue " << lmin;
    fail(ErrorCode::kNotPositive, os.str());
  }
  const double tr = h.matrix().trace().real();
  if (norm == Normalization::kState) {
    require(std::abs(tr - 1.0) <= kTraceTol, ErrorCode::kInvalidArgument,
            "DensityOp: trace differs from 1 by " + std::to_string(tr - 1.0));
  }
  m_ = h.matrix();
}

DensityOp DensityOp::pure(const CVec& psi) {
  const double nrm = psi.norm();
  require(nrm > 0.0, ErrorCode::kInvalidArgument, "DensityOp::pure: zero vector");
  const CVec v = psi / nrm;
  return DensityOp(CMat(v * v.adjoint()));
}

KrausChannel::KrausChannel(int in_dim, int out_dim, std::vector<CMat> ops, TraceKind kind)
    : in_dim_(in_dim), out_dim_(out_dim), ops_(std::move(ops)), kind_(kind) {
  require(in_dim > 0 && out_dim > 0, ErrorCode::kInvalidArgument, "KrausChannel: dimensions must be positive");
  CMat sum = CMat::Zero(in_dim, in_dim);
  for (const auto& k : ops_) {
    require(k.rows() == out_dim && k.cols() == in_dim, ErrorCode::kDimensionMismatch,
            "KrausChannel: Kraus operator has wrong shape");
    require_finite(k, "KrausChannel");
    sum += k.adjoint() * k;
  }
  const CMat gap = CMat::Identity(in_dim, in_dim) - sum;
  if (kind == TraceKind::kPreserving) {
    require(max_abs(gap) <= kTraceTol, ErrorCode::kInvalidArgument,
            "KrausChannel: sum of K^dag K differs from identity by " + std::to_string(max_abs(gap)));
  } else {
    require(lambda_min(0.5 * (gap + gap.adjoint())) >= -kTraceTol, ErrorCode::kInvalidArgument,
            "KrausChannel: sum of K^dag K exceeds identity");
  }
}

KrausChannel KrausChannel::identity(int dim) {
  return KrausChannel(dim, dim, {CMat::Identity(dim, dim)}, TraceKind::kPreserving);
}

CMat KrausChannel::apply(const CMat& rho) const {
  require(rho.rows() == in_dim_ && rho.cols() == in_dim_, ErrorCode::kDimensionMismatch,
          "apply_channel: input dimension mismatch");
  CMat out = CMat::Zero(out_dim_, out_dim_);
  for (const auto& k : ops_) out.noalias() += k * rho * k.adjoint();
  return out;
}

CMat KrausChannel::adjoint(const CMat& op) const {
  require(op.rows() == out_dim_ && op.cols() == out_dim_, ErrorCode::kDimensionMismatch,
          "adjoint_apply: output dimension mismatch");
  CMat out = CMat::Zero(in_dim_, in_dim_);
  for (const auto& k : ops_) out.noalias() += k.adjoint() * op * k;
  return out;
}

LinearMap as_linear_map(const KrausChannel& ch) {
  return LinearMap{ch.in_dim(), ch.out_dim(), [ch](const CMat& x) { return ch.apply(x); }};
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat kron(const std::vector<CMat>& factors) {
  require(!factors.empty(), ErrorCode::kInvalidArgument, "kron: no factors");
  CMat out = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

CMat ptrace(const CMat& op, const std::vector<int>& dims, const std::vector<int>& keep) {
  require(op.rows() == op.cols(), ErrorCode::kDimensionMismatch, "ptrace: operator must be square");
  long total = 1;
  for (int d : dims) {
    require(d > 0, ErrorCode::kInvalidArgument, "ptrace: factor dimensions must be positive");
    total *= d;
  }
  require(total == op.rows(), ErrorCode::kDimensionMismatch, "ptrace: product of dims does not match operator");
  std::vector<bool> kept(dims.size(), false);
  for (int k : keep) {
    require(k >= 0 && k < static_cast<int>(dims.size()), ErrorCode::kInvalidArgument, "ptrace: keep index out of range");
    kept[k] = true;
  }
  long kdim = 1;
  for (size_t f = 0; f < dims.size(); ++f)
    if (kept[f]) kdim *= dims[f];

  // Split every full index into (kept index, traced index).
  std::vector<long> kidx(total), tidx(total);
  for (long full = 0; full < total; ++full) {
    long rem = full, ki = 0, ti = 0, kstride = 1, tstride = 1;
    for (int f = static_cast<int>(dims.size()) - 1; f >= 0; --f) {
      const long digit = rem % dims[f];
      rem /= dims[f];
      if (kept[f]) {
        ki += digit * kstride;
        kstride *= dims[f];
      } else {
        ti += digit * tstride;
        tstride *= dims[f];
      }
    }
    kidx[full] = ki;
    tidx[full] = ti;
  }
  CMat out = CMat::Zero(kdim, kdim);
  for (long r = 0; r < total; ++r)
    for (long c = 0; c < total; ++c)
      if (tidx[r] == tidx[c]) out(kidx[r], kidx[c]) += op(r, c);
  return out;
}

HermOp ptrace(const HermOp& op, const std::vector<int>& dims, const std::vector<int>& keep) {
  return HermOp::hermitize(ptrace(op.matrix(), dims, keep));
}

Eigh eigh_unchecked(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  require(es.info() == Eigen::Success, ErrorCode::kNumerical, "eigh: decomposition failed");
  return Eigh{es.eigenvalues(), es.eigenvectors()};
}

Eigh eigh(const HermOp& op) { return eigh_unchecked(op.matrix()); }

double lambda_min(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double lambda_max(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

CMat mat_log2_clamped(const CMat& m, double floor) {
  const Eigh e = eigh_unchecked(m);
  RVec l(e.values.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = std::log2(std::max(e.values(i), floor));
  return e.vectors * l.asDiagonal() * e.vectors.adjoint();
}

HermOp mat_log_on_support(const DensityOp& op, double floor) {
  require(floor > 0.0, ErrorCode::kInvalidArgument, "mat_log_on_support: floor must be positive");
  const Eigh e = eigh_unchecked(op.matrix());
  require(e.values(0) >= -1e-8, ErrorCode::kNotPositive, "mat_log_on_support: negative eigenvalue");
  RVec l(e.values.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) l(i) = std::log2(std::max(e.values(i), floor));
  return HermOp::hermitize(e.vectors * l.asDiagonal() * e.vectors.adjoint());
}

CMat mat_sqrt_psd(const CMat& m) {
  const Eigh e = eigh_unchecked(m);
  RVec s = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

CMat mat_inv_sqrt_psd(const CMat& m, double floor) {
  const Eigh e = eigh_unchecked(m);
  RVec s(e.values.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) s(i) = e.values(i) > floor ? 1.0 / std::sqrt(e.values(i)) : 0.0;
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

HermOp apply_channel(const KrausChannel& ch, const HermOp& op) { return HermOp::hermitize(ch.apply(op.matrix())); }

HermOp adjoint_apply(const KrausChannel& ch, const HermOp& op) { return HermOp::hermitize(ch.adjoint(op.matrix())); }

HermOp choi(const LinearMap& map) {
  const int n = map.in_dim, m = map.out_dim;
  require(n > 0 && m > 0 && map.apply, ErrorCode::kInvalidArgument, "choi: invalid linear map");
  CMat out = CMat::Zero(n * m, n * m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMat eij = CMat::Zero(n, n);
      eij(i, j) = 1.0;
      const CMat img = map.apply(eij);
      require(img.rows() == m && img.cols() == m, ErrorCode::kDimensionMismatch, "choi: map output has wrong shape");
      out.block(i * m, j * m, m, m) = img;
    }
  return HermOp(out);
}

HermOp choi(const KrausChannel& ch) {
  const int n = ch.in_dim(), m = ch.out_dim();
  // Sum of |K_k>><<K_k| with vec taken over (input, output) ordering.
  CMat out = CMat::Zero(n * m, n * m);
  for (const auto& k : ch.ops()) {
    CVec v(n * m);
    for (int i = 0; i < n; ++i)
      for (int a = 0; a < m; ++a) v(i * m + a) = k(a, i);
    out.noalias() += v * v.adjoint();
  }
  return HermOp::hermitize(out);
}

bool is_cp(const LinearMap& map, double tol) { return lambda_min(choi(map).matrix()) >= -tol; }

bool is_cp(const KrausChannel& ch, double tol) { return lambda_min(choi(ch).matrix()) >= -tol; }

}  // namespace qkdps
