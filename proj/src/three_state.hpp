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

#include <optional>
#include <vector>

#include "definetti.hpp"
#include "entropy.hpp"
#include "squasher.hpp"

namespace qkdps {

struct ThreeStateConfig {
  double t = 0.2;
  double p_z = 0.8;
  double attenuation_db_per_km = 0.16;
  double distance_km = 0.0;
  double test_fraction = 0.05;
  double duration_s = 3600.0;
  double source_rate_hz = 3e9;
  int cutoff_photons = 1;
  double detector_efficiency = 1.0;
  std::optional<double> z_arm_fraction;  // defaults to 1 - t
  std::optional<double> crossclick_c;    // defaults to the minimum tail eigenvalue

  void validate() const;
  double z_arm() const { return z_arm_fraction.value_or(1.0 - t); }
};

// Bob's coarse-grained outcomes. Cross-click comes first so that it is the
// squasher's distinguished element.
enum Outcome : int { kCrossClick = 0, kZ0, kZ1, kX0, kX1, kX2, kOther, kNoClick, kNumOutcomes };
// Alice's signals.
enum Signal : int { kSignal0 = 0, kSignal1, kSignalPlus, kNumSignals };

// Bob's squashed space: qubit (0,1), vacuum (2), one flag per outcome (3..10).
inline constexpr int kBobDim = 3 + kNumOutcomes;
inline constexpr int kAliceDim = kNumSignals;
inline constexpr int kNumJointOutcomes = static_cast<int>(kNumSignals) * static_cast<int>(kNumOutcomes);

struct AliceSignals {
  std::vector<CVec> vectors;
  std::vector<DensityOp> states;
  std::vector<double> probs;
};

struct HonestStats {
  Eigen::MatrixXd conditional;  // [signal][outcome]
  RVec joint;                   // p(signal) p(outcome | signal), index signal * kNumOutcomes + outcome
  std::vector<JointRow> key_table;
};

AliceSignals alice_states(const ThreeStateConfig& cfg);
DensityOp source_marginal(const std::vector<CVec>& states, const std::vector<double>& probs);
DensityOp source_marginal(const std::vector<DensityOp>& states, const std::vector<double>& probs);

TruncatedPOVM bob_optical_povm(const ThreeStateConfig& cfg);
FlagSquash bob_squasher(const ThreeStateConfig& cfg);
std::vector<HermOp> bob_squashed_povm(const ThreeStateConfig& cfg);
std::vector<std::vector<int>> bob_blocks();
BlockSpec protocol_block_spec();

double channel_transmittance(const ThreeStateConfig& cfg);
HonestStats honest_stats(const ThreeStateConfig& cfg);
// Source-replacement state after the loss channel, on A (3) x B (11).
DensityOp honest_state(const ThreeStateConfig& cfg);
// |i><i| (x) F_j in the joint outcome order.
std::vector<HermOp> protocol_observables(const ThreeStateConfig& cfg);
KeyMapSpec keymap(const ThreeStateConfig& cfg);

double unconstrained_n(const ThreeStateConfig& cfg);
double sequential_n(const ThreeStateConfig& cfg);

}  // namespace qkdps
