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
#include "sdp.hpp"

namespace qkdps {

// G maps sigma_AB to the key-map output; z_pinching dephases the key register.
struct KeyMapSpec {
  KrausChannel g_map;
  std::vector<HermOp> z_pinching;

  void validate() const;
};

// {sigma on A (x) B : Tr_B sigma = fixed_marginal, lower_k <= Tr(O_k sigma) <= upper_k}.
// b_blocks optionally lists a partition of B's basis; when set, observables and
// key map must commute with the corresponding pinching on B and the search is
// restricted to block-diagonal states, which does not change the minimum.
struct ConstraintSet {
  int dim_a = 0;
  int dim_b = 0;
  std::vector<HermOp> observables;
  RVec lower;
  RVec upper;
  DensityOp fixed_marginal;
  std::vector<std::vector<int>> b_blocks;

  void validate() const;
};

struct EntropyOptions {
  int max_iterations = 300;
  double gap_target = 1e-4;           // absolute, bits
  double relative_gap_target = 0.0;   // stop also when gap <= rel * |value|
  double perturbation = 1e-12;        // epsilon of the continuity correction
  SdpOptions sdp;
};

enum class BoundStatus { kConverged, kIterationCap };

struct EntropyBound {
  double lower_bound = 0.0;
  double feasible_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  BoundStatus status = BoundStatus::kIterationCap;
  DensityOp argument;
};

struct ObjectiveValue {
  double bits = 0.0;
  bool zero_trace = false;
};

struct LinearMin {
  double value = 0.0;       // Tr(W sigma*) at the returned argument
  double dual_bound = 0.0;  // certified lower bound on the minimum
  DensityOp argument;
};

struct JointRow {
  int z = 0;
  int y = 0;
  int c = 0;
  double p = 0.0;
};

ObjectiveValue objective_value(const DensityOp& sigma, const KeyMapSpec& km);
double objective(const DensityOp& sigma, const KeyMapSpec& km);
// G^dag(log2 G(sigma) - log2 Z(G(sigma))). The identity terms of the two
// entropies cancel, so no constant shift is added.
HermOp gradient(const DensityOp& sigma, const KeyMapSpec& km);

LinearMin sdp_linear_min(const HermOp& w, const ConstraintSet& cs, const SdpOptions& opts = {});
EntropyBound min_entropy_lower_bound(const ConstraintSet& cs, const KeyMapSpec& km, const EntropyOptions& opts = {});

double conditional_shannon(const std::vector<JointRow>& joint);

}  // namespace qkdps
