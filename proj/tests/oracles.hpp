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

// Reference implementations used as independent checks. They favour plain
// loops over speed and share no code with the library.

#pragma once

#include <cmath>
#include <vector>

#include "linalg.hpp"

namespace oracle {

using qkdps::CMat;

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Tr_B of an operator on A (x) B.
inline CMat ptrace_second(const CMat& m, int da, int db) {
  CMat out = CMat::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

// Tr_A of an operator on A (x) B.
inline CMat ptrace_first(const CMat& m, int da, int db) {
  CMat out = CMat::Zero(db, db);
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
  return out;
}

inline double h2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Von Neumann entropy in bits from the singular values of the real
// embedding, which equal the eigenvalues for PSD input.
inline double entropy_bits(const CMat& rho) {
  const int n = static_cast<int>(rho.rows());
  Eigen::MatrixXd r(2 * n, 2 * n);
  r << rho.real(), -rho.imag(), rho.imag(), rho.real();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r);
  double h = 0.0;
  // Each eigenvalue of rho appears twice in the real embedding.
  for (int i = 0; i < 2 * n; ++i) {
    const double v = svd.singularValues()(i);
    if (v > 1e-15) h -= 0.5 * v * std::log2(v);
  }
  return h;
}

}  // namespace oracle
