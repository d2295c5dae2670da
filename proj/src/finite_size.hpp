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

#include <map>
#include <string>
#include <vector>

#include "definetti.hpp"
#include "entropy.hpp"

namespace qkdps {

// A probability kept as its base-2 logarithm, so that budgets such as
// 2^-230000 stay representable.
class Epsilon {
 public:
  Epsilon() = default;
  static Epsilon from_value(double v);
  static Epsilon from_log2(double l);

  double log2() const { return log2_; }
  double ln() const;
  double value() const;  // may underflow to 0
  Epsilon operator*(double factor) const;
  Epsilon operator/(double divisor) const;

 private:
  explicit Epsilon(double l) : log2_(l) {}
  double log2_ = -1.0;
};

// log2(2^a + 2^b) without overflow.
double log2_add(double a, double b);

struct SecurityBudget {
  Epsilon eps_target_sec;
  Epsilon eps_target_cor;
  Epsilon eps_at;
  Epsilon eps_pa;
  Epsilon eps_bar;
  Epsilon eps_ev;
  Epsilon eps_sec;
  Epsilon eps_tilde;

  // Unlifted IID budget: eps_PA = eps_AT = eps_target / 2.
  static SecurityBudget iid(double eps_target_sec, double eps_target_cor);
  // Postselection budget for log2 g; the IID proof runs at eps_sec.
  static SecurityBudget postselection(double eps_target_sec, double eps_target_cor, double log2_g);
};

struct ProtocolCounts {
  double n = 0.0;
  double m = 0.0;
  int d_z = 2;

  double n_k() const { return n - m; }
  void validate() const;
};

struct KeyLengthResult {
  double length_bits = 0.0;
  double secrecy_eps = 0.0;
  double log2_secrecy_eps = 0.0;
  std::string mode;
  std::map<std::string, double> diagnostics;
};

double hoeffding_mu(double m, int n_outcomes, Epsilon eps_at);
inline double hoeffding_mu(double m, int n_outcomes, double eps_at) {
  return hoeffding_mu(m, n_outcomes, Epsilon::from_value(eps_at));
}

ConstraintSet build_constraint_set(const RVec& f_obs, double mu, const std::vector<HermOp>& povm,
                                   const DensityOp& marginal);

double renyi_alpha(double n_k, Epsilon eps_pa, int d_z);
double theta(Epsilon eps_pa, Epsilon eps_ev, double alpha);
double b_stat(double entropy_lb, const ProtocolCounts& counts, double alpha);
double leak_bits(const std::vector<JointRow>& table, const ProtocolCounts& counts, double f_ec);
double variable_key_length(double b, double leak, double theta);

// log2 g_{n,x}: exact log-sum up to x <= kExactLog2GMaxX terms, else the
// closed-form upper bound. `mode` receives "exact" or "upper".
inline constexpr std::uint64_t kExactLog2GMaxX = 1u << 20;
double log2_g_for(double n, std::uint64_t x, std::string* mode = nullptr);

KeyLengthResult fixed_lift(double l, double n, const BlockSpec& block, const SecurityBudget& budget);
KeyLengthResult variable_lift(double l_i, double n, const BlockSpec& block, Epsilon eps_target);

struct EpsilonSplit {
  Epsilon eps_sec;
  Epsilon eps_tilde;
};
EpsilonSplit epsilon_budget(Epsilon eps_target, double log2_g);
// log2 of g (sqrt(8 eps_sec) + eps_tilde / 2).
double achieved_log2_secrecy(const EpsilonSplit& split, double log2_g);

}  // namespace qkdps
