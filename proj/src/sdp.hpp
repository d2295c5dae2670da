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

#include <utility>
#include <vector>

#include "linalg.hpp"

namespace qkdps {

// Block SDP in standard form:
//   min  sum_b <C_b, X_b> + c_lp . x
//   s.t. sum_b <A_ib, X_b> + a_i . x = b_i,   X_b >= 0 (Hermitian),  x >= 0
// with <A, X> = Re Tr(A X). Rows store only the blocks they touch.
struct SdpRow {
  std::vector<std::pair<int, CMat>> blocks;
  std::vector<std::pair<int, double>> lp;
  double rhs = 0.0;
};

struct SdpProblem {
  std::vector<int> block_dims;
  int n_lp = 0;
  std::vector<CMat> c;
  RVec c_lp;
  std::vector<SdpRow> rows;

  void validate() const;
};

enum class SdpStatus { kOptimal, kInaccurate, kInfeasible, kFailed };

struct SdpOptions {
  double tol = 1e-9;
  int max_iterations = 100;
  double step_fraction = 0.95;
};

struct SdpResult {
  SdpStatus status = SdpStatus::kFailed;
  std::vector<CMat> x;
  RVec x_lp;
  RVec y;
  std::vector<CMat> s;
  RVec s_lp;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  int iterations = 0;
};

SdpResult solve_sdp(const SdpProblem& p, const SdpOptions& opts = {});

}  // namespace qkdps
