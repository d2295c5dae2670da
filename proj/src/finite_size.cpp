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

#include "finite_size.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace qkdps {

Epsilon Epsilon::from_value(double v) {
  require(v > 0.0 && v < 1.0, ErrorCode::kInvalidArgument, "Epsilon: value must lie in (0,1)");
  return Epsilon(std::log2(v));
}

Epsilon Epsilon::from_log2(double l) {
  require(l < 0.0 && std::isfinite(l), ErrorCode::kInvalidArgument, "Epsilon: log2 must be negative and finite");
  return Epsilon(l);
}

double Epsilon::ln() const { return log2_ * std::log(2.0); }
double Epsilon::value() const { return std::exp2(log2_); }
Epsilon Epsilon::operator*(double f) const { return from_log2(log2_ + std::log2(f)); }
Epsilon Epsilon::operator/(double d) const { return from_log2(log2_ - std::log2(d)); }

double log2_add(double a, double b) {
  const double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

SecurityBudget SecurityBudget::iid(double target_sec, double target_cor) {
  SecurityBudget b;
  b.eps_target_sec = Epsilon::from_value(target_sec);
  b.eps_target_cor = Epsilon::from_value(target_cor);
  b.eps_sec = b.eps_target_sec;
  b.eps_tilde = b.eps_target_sec;
  b.eps_pa = b.eps_target_sec / 2.0;
  b.eps_at = b.eps_target_sec / 2.0;
  b.eps_bar = b.eps_pa;
  b.eps_ev = b.eps_target_cor;
  return b;
}

SecurityBudget SecurityBudget::postselection(double target_sec, double target_cor, double log2_g) {
  SecurityBudget b = iid(target_sec, target_cor);
  const EpsilonSplit split = epsilon_budget(b.eps_target_sec, log2_g);
  b.eps_sec = split.eps_sec;
  b.eps_tilde = split.eps_tilde;
  b.eps_pa = b.eps_sec / 2.0;
  b.eps_at = b.eps_sec / 2.0;
  b.eps_bar = b.eps_pa;
  return b;
}

void ProtocolCounts::validate() const {
  require(m > 0.0 && m < n, ErrorCode::kInvalidArgument, "ProtocolCounts: need 0 < m < n");
  require(d_z >= 1, ErrorCode::kInvalidArgument, "ProtocolCounts: key alphabet must be nonempty");
}

double hoeffding_mu(double m, int n_outcomes, Epsilon eps_at) {
  require(m > 0.0 && n_outcomes > 0, ErrorCode::kInvalidArgument, "hoeffding_mu: need m > 0 and outcomes > 0");
  return std::sqrt((std::log(2.0 * n_outcomes) - eps_at.ln()) / (2.0 * m));
}

ConstraintSet build_constraint_set(const RVec& f_obs, double mu, const std::vector<HermOp>& povm,
                                   const DensityOp& marginal) {
  require(f_obs.size() == static_cast<Eigen::Index>(povm.size()) && !povm.empty(), ErrorCode::kDimensionMismatch,
          "build_constraint_set: one frequency per POVM element");
  require(mu >= 0.0, ErrorCode::kInvalidArgument, "build_constraint_set: mu must be nonnegative");
  require(std::abs(f_obs.sum() - 1.0) <= 1e-9, ErrorCode::kInvalidArgument,
          "build_constraint_set: frequencies do not sum to 1");
  const int d = povm.front().dim();
  require(d % marginal.dim() == 0, ErrorCode::kDimensionMismatch,
          "build_constraint_set: marginal dimension does not divide POVM dimension");
  CMat sum = CMat::Zero(d, d);
  for (const auto& e : povm) {
    require(e.dim() == d, ErrorCode::kDimensionMismatch, "build_constraint_set: POVM elements differ in dimension");
    sum += e.matrix();
  }
  require(max_abs(sum - CMat::Identity(d, d)) <= 1e-10, ErrorCode::kInvalidArgument,
          "build_constraint_set: POVM is not complete");
  ConstraintSet cs;
  cs.dim_a = marginal.dim();
  cs.dim_b = d / marginal.dim();
  cs.observables = povm;
  cs.fixed_marginal = marginal;
  cs.lower = (f_obs.array() - mu).max(0.0).min(1.0).matrix();
  cs.upper = (f_obs.array() + mu).max(0.0).min(1.0).matrix();
  return cs;
}

double renyi_alpha(double n_k, Epsilon eps_pa, int d_z) {
  require(n_k >= 1.0 && d_z >= 1, ErrorCode::kInvalidArgument, "renyi_alpha: need n_k >= 1");
  const double kappa = std::sqrt(-eps_pa.log2()) / std::log2(d_z + 1.0);
  return 1.0 + kappa / std::sqrt(n_k);
}

double theta(Epsilon eps_pa, Epsilon eps_ev, double alpha) {
  require(alpha > 1.0, ErrorCode::kInvalidArgument, "theta: alpha must exceed 1");
  const double log_inv_4pa = -eps_pa.log2() - 2.0;
  return alpha / (alpha - 1.0) * (log_inv_4pa + 2.0 / alpha) + std::ceil(-eps_ev.log2());
}

double b_stat(double entropy_lb, const ProtocolCounts& counts, double alpha) {
  require(entropy_lb >= 0.0 && alpha >= 1.0, ErrorCode::kInvalidArgument, "b_stat: need H >= 0 and alpha >= 1");
  const double l = std::log2(counts.d_z + 1.0);
  return counts.n_k() * entropy_lb - counts.n_k() * (alpha - 1.0) * l * l;
}

double leak_bits(const std::vector<JointRow>& table, const ProtocolCounts& counts, double f_ec) {
  require(f_ec >= 1.0, ErrorCode::kInvalidArgument, "leak_bits: efficiency factor must be >= 1");
  return counts.n_k() * f_ec * conditional_shannon(table);
}

double variable_key_length(double b, double leak, double th) { return std::max(b - leak - th, 0.0); }

double log2_g_for(double n, std::uint64_t x, std::string* mode) {
  if (x <= kExactLog2GMaxX) {
    if (mode) *mode = "exact";
    return log2_sym_dim(n, x);
  }
  if (mode) *mode = "upper";
  return log2_sym_dim_upper(n, x);
}

KeyLengthResult fixed_lift(double l, double n, const BlockSpec& block, const SecurityBudget& budget) {
  const std::uint64_t x = effective_x(block);
  KeyLengthResult r;
  const double lg = log2_g_for(n, x, &r.mode);
  r.diagnostics["x"] = static_cast<double>(x);
  r.diagnostics["log2_g"] = lg;
  r.diagnostics["two_log_g"] = 2.0 * lg;
  r.length_bits = std::max(l - 2.0 * lg, 0.0);
  // g (eps_PA + 2 eps_bar + 2 sqrt(2 eps_AT))
  const double inner =
      log2_add(log2_add(budget.eps_pa.log2(), 1.0 + budget.eps_bar.log2()), 1.0 + 0.5 * (1.0 + budget.eps_at.log2()));
  r.log2_secrecy_eps = lg + inner;
  r.secrecy_eps = std::exp2(r.log2_secrecy_eps);
  return r;
}

EpsilonSplit epsilon_budget(Epsilon eps_target, double log2_g) {
  require(log2_g >= 0.0, ErrorCode::kInvalidArgument, "epsilon_budget: log2 g must be nonnegative");
  // eps_tilde = eps/g, eps_sec = eps^2 / (32 g^2).
  return {Epsilon::from_log2(2.0 * eps_target.log2() - 5.0 - 2.0 * log2_g),
          Epsilon::from_log2(eps_target.log2() - log2_g)};
}

double achieved_log2_secrecy(const EpsilonSplit& s, double log2_g) {
  const double sqrt_term = 0.5 * (3.0 + s.eps_sec.log2());
  const double tilde_term = s.eps_tilde.log2() - 1.0;
  return log2_g + log2_add(sqrt_term, tilde_term);
}

KeyLengthResult variable_lift(double l_i, double n, const BlockSpec& block, Epsilon eps_target) {
  const std::uint64_t x = effective_x(block);
  KeyLengthResult r;
  const double lg = log2_g_for(n, x, &r.mode);
  const EpsilonSplit split = epsilon_budget(eps_target, lg);
  r.diagnostics["x"] = static_cast<double>(x);
  r.diagnostics["log2_g"] = lg;
  r.diagnostics["two_log_g"] = 2.0 * lg;
  r.diagnostics["two_log_inv_eps_tilde"] = -2.0 * split.eps_tilde.log2();
  r.diagnostics["log2_eps_sec"] = split.eps_sec.log2();
  r.length_bits = std::max(l_i - 2.0 * lg + 2.0 * split.eps_tilde.log2(), 0.0);
  r.log2_secrecy_eps = achieved_log2_secrecy(split, lg);
  r.secrecy_eps = std::exp2(r.log2_secrecy_eps);
  return r;
}

}  // namespace qkdps
