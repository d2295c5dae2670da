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

#include <string>
#include <vector>

#include "definetti.hpp"
#include "linalg.hpp"

namespace qkdps {

struct IntensitySet {
  std::vector<double> intensities;
  int cutoff_n = 0;
  int signal_intensity = 0;

  void validate() const;
};

// gamma(l | k, mu), indexed by outcome, signal and intensity position.
class DecoyObservations {
 public:
  DecoyObservations(int n_outcomes, int n_signals, int n_intensities);

  int n_outcomes() const { return n_outcomes_; }
  int n_signals() const { return n_signals_; }
  int n_intensities() const { return n_intensities_; }
  double& at(int l, int k, int mu) { return data_.at(index(l, k, mu)); }
  double at(int l, int k, int mu) const { return data_.at(index(l, k, mu)); }

  void validate() const;

 private:
  size_t index(int l, int k, int mu) const;
  int n_outcomes_, n_signals_, n_intensities_;
  std::vector<double> data_;
};

struct YieldTarget {
  int outcome = 0;
  int signal = 0;
  int photons = 0;
};

struct YieldBounds {
  double lo = 0.0;
  double hi = 1.0;
};

struct ShieldBlocks {
  int n_int = 1;
  int cutoff_n = 0;
  int d_a = 1;
};

double poisson_pmf(int m, double mu);

// Photon-number mixture of the encoded signal with the tail above the cutoff
// replaced by an orthogonal tag. Encodings map C^{N+1} isometrically into the
// optical space; the output lives on optical (+) C^{n_tags}.
DensityOp tagged_state(int signal, double mu, int cutoff, const std::vector<CMat>& encodings, int tag_index = 0,
                       int n_tags = 1);

YieldBounds decoy_lp_bounds(const DecoyObservations& obs, const IntensitySet& set, const YieldTarget& target);

BlockSpec shield_block_spec(const ShieldBlocks& sb, std::vector<Block> side_b);

// Observations as rows (outcome, signal, intensity, frequency) with a header.
// Intensities become the sorted list of distinct values; `set` receives them.
DecoyObservations load_decoy_csv(const std::string& path, IntensitySet& set);

}  // namespace qkdps
