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

#include "random.hpp"

namespace qkdps {

CMat random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

CVec random_vector(int dim, Rng& rng) {
  CVec v = random_ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

CMat random_unitary(int dim, Rng& rng) {
  const CMat z = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

DensityOp random_density_rank(int dim, int rank, Rng& rng) {
  const CMat g = random_ginibre(dim, rank, rng);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOp(CMat(0.5 * (rho + rho.adjoint())));
}

DensityOp random_density(int dim, Rng& rng) { return random_density_rank(dim, dim, rng); }

HermOp random_hermitian(int dim, Rng& rng) {
  const CMat g = random_ginibre(dim, dim, rng);
  return HermOp::hermitize(g);
}

KrausChannel random_channel(int in_dim, int out_dim, int n_kraus, Rng& rng) {
  // Slice an isometry from C^in into C^out (x) C^n_kraus.
  const CMat g = random_ginibre(out_dim * n_kraus, in_dim, rng);
  Eigen::HouseholderQR<CMat> qr(g);
  const CMat v = qr.householderQ() * CMat::Identity(out_dim * n_kraus, in_dim);
  std::vector<CMat> ops;
  for (int k = 0; k < n_kraus; ++k) ops.push_back(v.block(k * out_dim, 0, out_dim, in_dim));
  return KrausChannel(in_dim, out_dim, std::move(ops), TraceKind::kPreserving);
}

}  // namespace qkdps
