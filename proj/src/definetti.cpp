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

#include "definetti.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "error.hpp"
#include "random.hpp"

namespace qkdps {

void BlockSpec::validate() const {
  require(!side_a.empty() && !side_b.empty(), ErrorCode::kInvalidArgument, "BlockSpec: both sides need a block");
  for (const auto* side : {&side_a, &side_b})
    for (const Block& b : *side)
      require(b.dim >= 1 && b.count >= 1, ErrorCode::kInvalidArgument, "BlockSpec: dims and counts must be >= 1");
}

int BlockSpec::total_dim_a() const {
  int t = 0;
  for (const Block& b : side_a) t += b.dim * b.count;
  return t;
}

int BlockSpec::total_dim_b() const {
  int t = 0;
  for (const Block& b : side_b) t += b.dim * b.count;
  return t;
}

BigInt sym_dim(std::uint64_t n, std::uint64_t x) {
  require(x >= 1, ErrorCode::kInvalidArgument, "sym_dim: x must be positive");
  // C(n + k, k) with k = x - 1, built incrementally so every step is exact.
  const std::uint64_t k = x - 1;
  BigInt acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= BigInt(n) + i;
    acc /= i;
  }
  return acc;
}

double log2_sym_dim(double n, std::uint64_t x) {
  require(x >= 1 && n >= 0.0, ErrorCode::kInvalidArgument, "log2_sym_dim: need n >= 0 and x >= 1");
  // C(n + x - 1, x - 1) = prod_{k=1}^{x-1} (1 + n / k)
  double acc = 0.0;
  for (std::uint64_t k = 1; k < x; ++k) acc += std::log1p(n / static_cast<double>(k));
  return acc / std::log(2.0);
}

double log2_sym_dim_upper(double n, std::uint64_t x) {
  require(x >= 1 && n >= 0.0, ErrorCode::kInvalidArgument, "log2_sym_dim_upper: need n >= 0 and x >= 1");
  if (x == 1) return 0.0;
  const double k = static_cast<double>(x - 1);
  return k * (std::log2(std::exp(1.0)) + std::log2((n + k) / k));
}

SymDimResult sym_dim_result(std::uint64_t n, std::uint64_t x) {
  SymDimResult r;
  r.n = n;
  r.x = x;
  r.g_exact = sym_dim(n, x);
  r.log2_g = log2_sym_dim(static_cast<double>(n), x);
  r.log2_g_upper = log2_sym_dim_upper(static_cast<double>(n), x);
  return r;
}

std::uint64_t effective_x(const BlockSpec& spec) {
  spec.validate();
  std::uint64_t x = 0;
  for (const Block& a : spec.side_a)
    for (const Block& b : spec.side_b) {
      const std::uint64_t da = static_cast<std::uint64_t>(a.dim), db = static_cast<std::uint64_t>(b.dim);
      x += static_cast<std::uint64_t>(a.count) * static_cast<std::uint64_t>(b.count) * da * da * db * db;
    }
  return x;
}

namespace {

long ipow(int base, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Permutation operator W_pi on (C^d)^{(x)n}: |i_1..i_n> -> |i_pi^-1(1)..>.
CMat permutation_operator(const std::vector<int>& perm, int d) {
  const int n = static_cast<int>(perm.size());
  const long dim = ipow(d, n);
  CMat w = CMat::Zero(dim, dim);
  std::vector<int> digits(n), moved(n);
  for (long idx = 0; idx < dim; ++idx) {
    long rem = idx;
    for (int k = n - 1; k >= 0; --k) {
      digits[k] = static_cast<int>(rem % d);
      rem /= d;
    }
    for (int k = 0; k < n; ++k) moved[perm[k]] = digits[k];
    long out = 0;
    for (int k = 0; k < n; ++k) out = out * d + moved[k];
    w(out, idx) = 1.0;
  }
  return w;
}

}  // namespace

HermOp sym_projector(int n, int d) {
  require(n >= 1 && n <= 3 && d >= 1 && d <= 4, ErrorCode::kInvalidArgument, "sym_projector: need 1<=n<=3, 1<=d<=4");
  require(ipow(d, n) <= 64, ErrorCode::kInvalidArgument, "sym_projector: d^n exceeds 64");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const long dim = ipow(d, n);
  CMat p = CMat::Zero(dim, dim);
  int count = 0;
  do {
    p += permutation_operator(perm, d);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return HermOp::hermitize(p / static_cast<double>(count));
}

HermOp haar_mean_power(int n, int d, std::uint64_t samples, std::uint64_t seed) {
  require(n >= 1 && n <= 2 && d >= 2 && d <= 4, ErrorCode::kInvalidArgument, "haar_mean_power: need 1<=n<=2, 2<=d<=4");
  require(samples >= 1, ErrorCode::kInvalidArgument, "haar_mean_power: samples must be positive");
  Rng rng(seed);
  const long dim = ipow(d, n);
  CMat acc = CMat::Zero(dim, dim);
  for (std::uint64_t s = 0; s < samples; ++s) {
    const CVec phi = random_vector(d, rng);
    CVec v = phi;
    for (int k = 1; k < n; ++k) v = kron(CMat(v), CMat(phi)).col(0);
    acc.noalias() += v * v.adjoint();
  }
  return HermOp::hermitize(acc / static_cast<double>(samples));
}

bool check_pure_domination(const CVec& psi, int n, int d) {
  require(n >= 1 && d >= 1 && ipow(d, n) <= 64, ErrorCode::kInvalidArgument, "check_pure_domination: d^n must be <= 64");
  require(psi.size() == ipow(d, n), ErrorCode::kDimensionMismatch, "check_pure_domination: vector length is not d^n");
  require(psi.allFinite() && std::abs(psi.norm() - 1.0) <= 1e-9, ErrorCode::kInvalidArgument,
          "check_pure_domination: vector must be finite and normalized");
  const CMat diff = sym_projector(n, d).matrix() - psi * psi.adjoint();
  return lambda_min(0.5 * (diff + diff.adjoint())) >= -1e-9;
}

}  // namespace qkdps
