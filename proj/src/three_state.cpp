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

#include "three_state.hpp"

#include <array>
#include <cmath>

#include "error.hpp"

namespace qkdps {

namespace {

constexpr double kDelayPerKmSignals = 1.5e5;  // sequential repetition rate times distance, Hz km

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

// Qubit parts of the interferometer arm: |+> clicks the middle bin with
// probability 1/2; |0> and |1> click their own outer bin with 1/2 and each
// remaining bin with 1/4.
std::array<CMat, 3> x_arm_qubit_povm() {
  CMat x0(2, 2), x1(2, 2), x2(2, 2);
  x0 << 0.5, -0.125, -0.125, 0.25;
  x1 << 0.25, 0.25, 0.25, 0.25;
  x2 << 0.25, -0.125, -0.125, 0.5;
  return {x0, x1, x2};
}

}  // namespace

void ThreeStateConfig::validate() const {
  require(in_open_unit(t) && in_open_unit(p_z) && in_open_unit(test_fraction), ErrorCode::kInvalidArgument,
          "ThreeStateConfig: t, p_z and test_fraction must lie in (0,1)");
  require(in_open_unit(z_arm()), ErrorCode::kInvalidArgument, "ThreeStateConfig: z_arm_fraction must lie in (0,1)");
  require(detector_efficiency > 0.0 && detector_efficiency <= 1.0, ErrorCode::kInvalidArgument,
          "ThreeStateConfig: detector_efficiency must lie in (0,1]");
  require(distance_km >= 0.0 && attenuation_db_per_km >= 0.0, ErrorCode::kInvalidArgument,
          "ThreeStateConfig: distance and attenuation must be nonnegative");
  require(duration_s > 0.0 && source_rate_hz > 0.0, ErrorCode::kInvalidArgument,
          "ThreeStateConfig: duration and source rate must be positive");
  require(!crossclick_c || (*crossclick_c >= 0.0 && *crossclick_c < 1.0), ErrorCode::kInvalidArgument,
          "ThreeStateConfig: crossclick_c must lie in [0,1)");
}

AliceSignals alice_states(const ThreeStateConfig& cfg) {
  cfg.validate();
  AliceSignals s;
  CVec zero = CVec::Zero(2), one = CVec::Zero(2), plus(2);
  zero(0) = 1.0;
  one(1) = 1.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  s.vectors = {zero, one, plus};
  for (const auto& v : s.vectors) s.states.push_back(DensityOp::pure(v));
  s.probs = {cfg.p_z / 2.0, cfg.p_z / 2.0, 1.0 - cfg.p_z};
  return s;
}

DensityOp source_marginal(const std::vector<CVec>& states, const std::vector<double>& probs) {
  require(!states.empty() && states.size() == probs.size(), ErrorCode::kDimensionMismatch,
          "source_marginal: one probability per state");
  const int k = static_cast<int>(states.size());
  double total = 0.0;
  for (double p : probs) {
    require(p >= 0.0, ErrorCode::kInvalidArgument, "source_marginal: negative probability");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-10, ErrorCode::kInvalidArgument, "source_marginal: probabilities do not sum to 1");
  CMat g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      require(states[i].size() == states[j].size(), ErrorCode::kDimensionMismatch, "source_marginal: state dimensions differ");
      g(i, j) = std::sqrt(probs[i] * probs[j]) * states[j].dot(states[i]) / (states[i].norm() * states[j].norm());
    }
  return DensityOp(CMat(0.5 * (g + g.adjoint())));
}

DensityOp source_marginal(const std::vector<DensityOp>& states, const std::vector<double>& probs) {
  std::vector<CVec> vecs;
  for (const auto& s : states) {
    const Eigh e = eigh(s.herm());
    const int top = static_cast<int>(e.values.size()) - 1;
    require(std::abs(e.values(top) - 1.0) <= 1e-10, ErrorCode::kInvalidArgument, "source_marginal: states must be pure");
    CVec v = e.vectors.col(top);
    // Fix the global phase: first significant component real and positive.
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (std::abs(v(i)) > 1e-12) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    vecs.push_back(v);
  }
  return source_marginal(vecs, probs);
}

TruncatedPOVM bob_optical_povm(const ThreeStateConfig& cfg) {
  cfg.validate();
  require(cfg.cutoff_photons == 1, ErrorCode::kInvalidArgument, "bob_optical_povm: only cutoff_photons = 1 is modelled");
  const double z = cfg.z_arm(), x = 1.0 - z, eff = cfg.detector_efficiency;
  const double c = crossclick_lambda_min(cfg.t, cfg.cutoff_photons);
  const int d_low = 3, d_tail = kNumOutcomes, d = d_low + d_tail;
  const auto xq = x_arm_qubit_povm();

  std::vector<CMat> els(kNumOutcomes, CMat::Zero(d, d));
  els[kZ0](0, 0) = eff * z;
  els[kZ1](1, 1) = eff * z;
  els[kX0].topLeftCorner(2, 2) = eff * x * xq[0];
  els[kX1].topLeftCorner(2, 2) = eff * x * xq[1];
  els[kX2].topLeftCorner(2, 2) = eff * x * xq[2];
  els[kNoClick](2, 2) = 1.0;
  els[kNoClick].topLeftCorner(2, 2) += (1.0 - eff) * CMat::Identity(2, 2);
  // Multi-photon tail, one basis vector per outcome; the cross-click element
  // keeps weight c everywhere on the tail.
  for (int k = 0; k < kNumOutcomes; ++k) els[k](d_low + k, d_low + k) = 1.0 - c;
  els[kCrossClick].bottomRightCorner(d_tail, d_tail) += c * CMat::Identity(d_tail, d_tail);

  std::vector<HermOp> herm;
  for (const auto& e : els) herm.push_back(HermOp::hermitize(e));
  return TruncatedPOVM(d_low, d_tail, std::move(herm));
}

FlagSquash bob_squasher(const ThreeStateConfig& cfg) {
  const TruncatedPOVM gamma = bob_optical_povm(cfg);
  const double c = cfg.crossclick_c.value_or(lambda_min_tail(gamma, kCrossClick));
  return build_flag_squasher(gamma, c);
}

std::vector<HermOp> bob_squashed_povm(const ThreeStateConfig& cfg) { return bob_squasher(cfg).target; }

std::vector<std::vector<int>> bob_blocks() {
  std::vector<std::vector<int>> b{{0, 1}};
  for (int i = 2; i < kBobDim; ++i) b.push_back({i});
  return b;
}

BlockSpec protocol_block_spec() {
  BlockSpec spec;
  spec.side_a = {Block{2, 1}};
  spec.side_b = {Block{2, 1}, Block{1, kBobDim - 2}};
  return spec;
}

double channel_transmittance(const ThreeStateConfig& cfg) {
  require(cfg.distance_km >= 0.0, ErrorCode::kInvalidArgument, "channel_transmittance: negative distance");
  return std::pow(10.0, -cfg.attenuation_db_per_km * cfg.distance_km / 10.0);
}

HonestStats honest_stats(const ThreeStateConfig& cfg) {
  cfg.validate();
  const double eta = channel_transmittance(cfg) * cfg.detector_efficiency;
  const double z = cfg.z_arm(), x = 1.0 - z;
  const AliceSignals alice = alice_states(cfg);

  HonestStats h;
  h.conditional = Eigen::MatrixXd::Zero(kNumSignals, kNumOutcomes);
  auto& p = h.conditional;
  p(kSignal0, kZ0) = eta * z;
  p(kSignal1, kZ1) = eta * z;
  p(kSignalPlus, kZ0) = p(kSignalPlus, kZ1) = eta * z / 2.0;
  p(kSignal0, kX0) = eta * x / 2.0;
  p(kSignal0, kX1) = p(kSignal0, kX2) = eta * x / 4.0;
  p(kSignal1, kX2) = eta * x / 2.0;
  p(kSignal1, kX0) = p(kSignal1, kX1) = eta * x / 4.0;
  p(kSignalPlus, kX1) = eta * x / 2.0;
  p(kSignalPlus, kX0) = p(kSignalPlus, kX2) = eta * x / 4.0;
  for (int i = 0; i < kNumSignals; ++i) p(i, kNoClick) = 1.0 - eta;

  h.joint = RVec(kNumJointOutcomes);
  for (int i = 0; i < kNumSignals; ++i)
    for (int j = 0; j < kNumOutcomes; ++j) {
      const double pj = alice.probs[i] * p(i, j);
      h.joint(i * kNumOutcomes + j) = pj;
      // Announcement: Bob's click class and whether Alice used the Z basis.
      const int bob_class = j == kNoClick ? 0 : (j == kZ0 || j == kZ1) ? 1 : (j == kX0 || j == kX1 || j == kX2) ? 2 : 3;
      const bool alice_z = i != kSignalPlus;
      const bool kept = alice_z && bob_class == 1;
      h.key_table.push_back(JointRow{kept ? i : 0, j, bob_class * 2 + (alice_z ? 1 : 0), pj});
    }
  return h;
}

DensityOp honest_state(const ThreeStateConfig& cfg) {
  const AliceSignals alice = alice_states(cfg);
  const double eta = channel_transmittance(cfg);
  CVec psi = CVec::Zero(kAliceDim * kBobDim);
  for (int i = 0; i < kNumSignals; ++i)
    for (int q = 0; q < 2; ++q) psi(i * kBobDim + q) = std::sqrt(alice.probs[i]) * alice.vectors[i](q);
  const CMat marg = source_marginal(alice.vectors, alice.probs).matrix();
  CMat vac = CMat::Zero(kBobDim, kBobDim);
  vac(2, 2) = 1.0;
  CMat sigma = eta * psi * psi.adjoint() + (1.0 - eta) * kron(marg, vac);
  return DensityOp(CMat(0.5 * (sigma + sigma.adjoint())));
}

std::vector<HermOp> protocol_observables(const ThreeStateConfig& cfg) {
  const std::vector<HermOp> f = bob_squashed_povm(cfg);
  std::vector<HermOp> obs;
  for (int i = 0; i < kNumSignals; ++i)
    for (int j = 0; j < kNumOutcomes; ++j) obs.push_back(HermOp::hermitize(kron(basis_projector(kAliceDim, i), f[j].matrix())));
  return obs;
}

KeyMapSpec keymap(const ThreeStateConfig& cfg) {
  const std::vector<HermOp> f = bob_squashed_povm(cfg);
  CMat select = CMat::Zero(2, kAliceDim);
  select(0, kSignal0) = 1.0;
  select(1, kSignal1) = 1.0;
  const CMat kraus = kron(select, mat_sqrt_psd(f[kZ0].matrix() + f[kZ1].matrix()));
  KeyMapSpec km;
  km.g_map = KrausChannel(kAliceDim * kBobDim, 2 * kBobDim, {kraus}, TraceKind::kNonincreasing);
  for (int z = 0; z < 2; ++z) km.z_pinching.push_back(HermOp(kron(basis_projector(2, z), CMat::Identity(kBobDim, kBobDim))));
  return km;
}

double unconstrained_n(const ThreeStateConfig& cfg) { return cfg.duration_s * cfg.source_rate_hz; }

double sequential_n(const ThreeStateConfig& cfg) {
  if (cfg.distance_km <= 0.0) return unconstrained_n(cfg);
  return std::min(unconstrained_n(cfg), kDelayPerKmSignals / cfg.distance_km * cfg.duration_s);
}

}  // namespace qkdps
