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
#include "random.hpp"
#include "squasher.hpp"

namespace testgen {

using namespace qkdps;

// Random k-outcome POVM on C^d: G_i = S^{-1/2} A_i S^{-1/2} with A_i random PSD.
inline std::vector<CMat> random_povm(int d, int k, Rng& rng) {
  std::vector<CMat> a(k);
  CMat s = CMat::Zero(d, d);
  for (auto& m : a) {
    const CMat g = random_ginibre(d, d, rng);
    m = g * g.adjoint();
    s += m;
  }
  const CMat w = mat_inv_sqrt_psd(s, 1e-14);
  for (auto& m : a) m = w * m * w;
  return a;
}

inline TruncatedPOVM random_block_povm(int d_low, int d_tail, int k, Rng& rng) {
  const auto low = random_povm(d_low, k, rng);
  const auto tail = d_tail > 0 ? random_povm(d_tail, k, rng) : std::vector<CMat>(k);
  std::vector<HermOp> el;
  for (int i = 0; i < k; ++i) {
    CMat m = CMat::Zero(d_low + d_tail, d_low + d_tail);
    m.topLeftCorner(d_low, d_low) = low[i];
    if (d_tail > 0) m.bottomRightCorner(d_tail, d_tail) = tail[i];
    el.push_back(HermOp::hermitize(m));
  }
  return TruncatedPOVM(d_low, d_tail, el);
}

}  // namespace testgen
