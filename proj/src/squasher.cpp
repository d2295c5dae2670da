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

#include "squasher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "random.hpp"

namespace qkdps {

TruncatedPOVM::TruncatedPOVM(int dl, int dt, std::vector<HermOp> els) : d_low(dl), d_tail(dt), elements(std::move(els)) {
  require(d_low >= 1 && d_tail >= 0, ErrorCode::kInvalidArgument, "TruncatedPOVM: need d_low >= 1, d_tail >= 0");
  require(!elements.empty(), ErrorCode::kInvalidArgument, "TruncatedPOVM: no elements");
  const int d = d_low + d_tail;
  CMat sum = CMat::Zero(d, d);
  for (const auto& e : elements) {
    require(e.dim() == d, ErrorCode::kDimensionMismatch, "TruncatedPOVM: element dimension mismatch");
    if (d_tail > 0)
      require(max_abs(e.matrix().block(0, d_low, d_low, d_tail)) <= kHermTol, ErrorCode::kInvalidArgument,
              "TruncatedPOVM: element couples low and tail blocks");
    require(lambda_min(e.matrix()) >= -kPsdTol, ErrorCode::kNotPositive, "TruncatedPOVM: element is not PSD");
    sum += e.matrix();
  }
  require(max_abs(sum - CMat::Identity(d, d)) <= kPsdTol, ErrorCode::kInvalidArgument,
          "TruncatedPOVM: elements do not sum to identity");
}

CMat TruncatedPOVM::low_block(int i) const { return elements.at(i).matrix().topLeftCorner(d_low, d_low); }

CMat TruncatedPOVM::tail_block(int i) const { return elements.at(i).matrix().bottomRightCorner(d_tail, d_tail); }

double crossclick_lambda_min(double t, int n_b) {
  require(t > 0.0 && t < 1.0, ErrorCode::kInvalidArgument, "crossclick_lambda_min: t must lie in (0,1)");
  require(n_b >= 0, ErrorCode::kInvalidArgument, "crossclick_lambda_min: cutoff must be nonnegative");
  const double k = n_b + 1.0;
  return 1.0 - std::pow(t, k) - std::pow(1.0 - t / 4.0, k) + std::pow(0.75 * t, k);
}

double weight_bound(double p_e, double lam_in, double lam_out) {
  require(lam_out > lam_in, ErrorCode::kInvalidArgument, "weight_bound: lam_out <= lam_in, bound is vacuous");
  require(p_e >= 0.0 && p_e <= 1.0, ErrorCode::kInvalidArgument, "weight_bound: p_e must lie in [0,1]");
  return std::clamp((p_e - lam_in) / (lam_out - lam_in), 0.0, 1.0);
}

double lambda_min_tail(const TruncatedPOVM& gamma, int outcome) {
  require(outcome >= 0 && outcome < gamma.n_outcomes(), ErrorCode::kInvalidArgument, "lambda_min_tail: bad outcome index");
  if (gamma.d_tail == 0) return std::numeric_limits<double>::infinity();
  return lambda_min(gamma.tail_block(outcome));
}

FlagSquash build_flag_squasher(const TruncatedPOVM& gamma, double c) {
  const int dl = gamma.d_low, dt = gamma.d_tail, k = gamma.n_outcomes();
  require(c >= 0.0 && c < 1.0, ErrorCode::kInvalidArgument, "build_flag_squasher: c must lie in [0,1)");
  require(c <= lambda_min_tail(gamma, 0) + kPsdTol, ErrorCode::kInvalidArgument,
          "build_flag_squasher: c exceeds the minimum tail eigenvalue of element 0");

  FlagSquash fs;
  fs.d_low = dl;
  fs.d_tail = dt;
  fs.c = c;
  const int dout = dl + k;
  for (int i = 0; i < k; ++i) {
    CMat f = CMat::Zero(dout, dout);
    f.topLeftCorner(dl, dl) = gamma.low_block(i);
    if (i == 0) {
      f(dl, dl) = 1.0;
      for (int j = 1; j < k; ++j) f(dl + j, dl + j) = c;
    } else {
      f(dl + i, dl + i) = 1.0 - c;
    }
    fs.target.push_back(HermOp::hermitize(f));
  }

  std::vector<CMat> kraus;
  CMat k0 = CMat::Zero(dout, dl + dt);
  k0.topLeftCorner(dl, dl) = CMat::Identity(dl, dl);
  kraus.push_back(k0);
  for (int i = 0; i < k && dt > 0; ++i) {
    CMat m = gamma.tail_block(i);
    if (i == 0) m -= c * CMat::Identity(dt, dt);
    m /= (1.0 - c);
    m = 0.5 * (m + m.adjoint());
    fs.tail_povm.push_back(m);
    const Eigh e = eigh_unchecked(m);
    for (int r = 0; r < dt; ++r) {
      if (e.values(r) <= 0.0) continue;
      CMat kr = CMat::Zero(dout, dl + dt);
      kr.block(dl + i, dl, 1, dt) = std::sqrt(e.values(r)) * e.vectors.col(r).adjoint();
      kraus.push_back(kr);
    }
  }
  // Clipping tiny negative eigenvalues of the tail POVM can leave the Kraus
  // sum a hair below identity, so register the map as trace-nonincreasing and
  // let verify_squash measure the actual defect.
  fs.channel = KrausChannel(dl + dt, dout, std::move(kraus), TraceKind::kNonincreasing);
  return fs;
}

SquashReport verify_squash(const FlagSquash& fs, const TruncatedPOVM& gamma, double tol, int n_states,
                           std::uint64_t seed) {
  SquashReport rep;
  const KrausChannel& ch = fs.channel;
  if (ch.in_dim() != gamma.dim() || fs.n_outcomes() != gamma.n_outcomes() || ch.out_dim() != fs.target_dim()) {
    rep.max_deviation = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.choi_min_eig = lambda_min(choi(ch).matrix());

  CMat ksum = CMat::Zero(ch.in_dim(), ch.in_dim());
  for (const auto& k : ch.ops()) ksum += k.adjoint() * k;
  rep.trace_defect = max_abs(ksum - CMat::Identity(ch.in_dim(), ch.in_dim()));

  for (int i = 0; i < gamma.n_outcomes(); ++i)
    rep.adjoint_defect =
        std::max(rep.adjoint_defect, max_abs(ch.adjoint(fs.target[i].matrix()) - gamma.elements[i].matrix()));

  Rng rng(seed);
  for (int s = 0; s < n_states; ++s) {
    const DensityOp rho = random_density(gamma.dim(), rng);
    const CMat out = ch.apply(rho.matrix());
    for (int i = 0; i < gamma.n_outcomes(); ++i) {
      const double lhs = trace_prod(gamma.elements[i].matrix(), rho.matrix());
      const double rhs = trace_prod(fs.target[i].matrix(), out);
      rep.statistics_defect = std::max(rep.statistics_defect, std::abs(lhs - rhs));
    }
  }
  rep.max_deviation = std::max({-rep.choi_min_eig, rep.trace_defect, rep.adjoint_defect, rep.statistics_defect, 0.0});
  rep.ok = rep.max_deviation <= tol;
  return rep;
}

}  // namespace qkdps
