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

#include <vector>

#include "linalg.hpp"

namespace qkdps {

// POVM on C^{d_low} (+) C^{d_tail}, block-diagonal across the split.
struct TruncatedPOVM {
  int d_low = 0;
  int d_tail = 0;
  std::vector<HermOp> elements;

  TruncatedPOVM() = default;
  TruncatedPOVM(int d_low, int d_tail, std::vector<HermOp> elements);

  int n_outcomes() const { return static_cast<int>(elements.size()); }
  int dim() const { return d_low + d_tail; }
  CMat low_block(int i) const;
  CMat tail_block(int i) const;
};

// Target POVM on C^{d_low} (+) C^{n_outcomes} (one flag per outcome) and the
// squashing channel. Outcome 0 is the distinguished element carrying the
// c-correction.
struct FlagSquash {
  int d_low = 0;
  int d_tail = 0;
  double c = 0.0;
  std::vector<HermOp> target;
  std::vector<CMat> tail_povm;  // measured on the tail before preparing flag k
  KrausChannel channel;

  int n_outcomes() const { return static_cast<int>(target.size()); }
  int target_dim() const { return d_low + n_outcomes(); }
};

struct SquashReport {
  bool ok = false;
  double choi_min_eig = 0.0;
  double trace_defect = 0.0;
  double adjoint_defect = 0.0;
  double statistics_defect = 0.0;
  double max_deviation = 0.0;
};

double crossclick_lambda_min(double t, int n_b);
// Upper bound on the weight outside the preserved subspace. Throws
// kInvalidArgument when lam_out <= lam_in; callers then fall back to W = 1.
double weight_bound(double p_e, double lam_in, double lam_out);
// Minimum eigenvalue of the tail block; +inf when d_tail = 0.
double lambda_min_tail(const TruncatedPOVM& gamma, int outcome);

FlagSquash build_flag_squasher(const TruncatedPOVM& gamma, double c);
SquashReport verify_squash(const FlagSquash& fs, const TruncatedPOVM& gamma, double tol, int n_states = 200,
                           std::uint64_t seed = 7);

}  // namespace qkdps
