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

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace qkdps {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kLogFloor = 1e-12;

// Hermitian operator. The constructor rejects matrices that are not Hermitian
// entrywise within kHermTol; hermitize() averages away rounding noise first.
class HermOp {
 public:
  HermOp() = default;
  explicit HermOp(CMat m);

  static HermOp hermitize(const CMat& m);
  static HermOp identity(int dim);
  static HermOp zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMat& matrix() const { return m_; }

  HermOp operator+(const HermOp& o) const;
  HermOp operator-(const HermOp& o) const;
  HermOp operator*(double s) const;

 private:
  struct Trusted {};
  HermOp(CMat m, Trusted) : m_(std::move(m)) {}
  CMat m_;
};

enum class Normalization { kState, kSubnormalized };

class DensityOp {
 public:
  DensityOp() = default;
  explicit DensityOp(CMat m, Normalization norm = Normalization::kState);
  explicit DensityOp(const HermOp& h, Normalization norm = Normalization::kState)
      : DensityOp(h.matrix(), norm) {}

  static DensityOp pure(const CVec& psi);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMat& matrix() const { return m_; }
  Normalization normalization() const { return norm_; }
  HermOp herm() const { return HermOp::hermitize(m_); }

 private:
  CMat m_;
  Normalization norm_ = Normalization::kState;
};

enum class TraceKind { kPreserving, kNonincreasing };

class KrausChannel {
 public:
  KrausChannel() = default;
  KrausChannel(int in_dim, int out_dim, std::vector<CMat> ops, TraceKind kind);

  static KrausChannel identity(int dim);

  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::vector<CMat>& ops() const { return ops_; }
  TraceKind trace_kind() const { return kind_; }

  CMat apply(const CMat& rho) const;
  CMat adjoint(const CMat& op) const;

 private:
  int in_dim_ = 0;
  int out_dim_ = 0;
  std::vector<CMat> ops_;
  TraceKind kind_ = TraceKind::kPreserving;
};

// A linear map given by its action; used for maps that need not be CP.
struct LinearMap {
  int in_dim = 0;
  int out_dim = 0;
  std::function<CMat(const CMat&)> apply;
};

LinearMap as_linear_map(const KrausChannel& ch);

struct Eigh {
  RVec values;  // ascending
  CMat vectors;
};

CMat kron(const CMat& a, const CMat& b);
CMat kron(const std::vector<CMat>& factors);

HermOp ptrace(const HermOp& op, const std::vector<int>& dims, const std::vector<int>& keep);
CMat ptrace(const CMat& op, const std::vector<int>& dims, const std::vector<int>& keep);

Eigh eigh(const HermOp& op);
Eigh eigh_unchecked(const CMat& m);
double lambda_min(const CMat& m);
double lambda_max(const CMat& m);

// Base-2 logarithm with eigenvalues clamped below at `floor`.
HermOp mat_log_on_support(const DensityOp& op, double floor = kLogFloor);
CMat mat_log2_clamped(const CMat& m, double floor);
CMat mat_sqrt_psd(const CMat& m);
CMat mat_inv_sqrt_psd(const CMat& m, double floor);

HermOp apply_channel(const KrausChannel& ch, const HermOp& op);
HermOp adjoint_apply(const KrausChannel& ch, const HermOp& op);

HermOp choi(const KrausChannel& ch);
HermOp choi(const LinearMap& map);
bool is_cp(const KrausChannel& ch, double tol = kPsdTol);
bool is_cp(const LinearMap& map, double tol = kPsdTol);

// Re Tr(a b) for Hermitian a, b without forming the product.
double trace_prod(const CMat& a, const CMat& b);
double max_abs(const CMat& m);
CMat basis_projector(int dim, int i);

}  // namespace qkdps
