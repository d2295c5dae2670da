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

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "linalg.hpp"

namespace qkdps {

using BigInt = boost::multiprecision::cpp_int;

struct Block {
  int dim = 1;
  int count = 1;
};

struct BlockSpec {
  std::vector<Block> side_a;
  std::vector<Block> side_b;

  void validate() const;
  int total_dim_a() const;
  int total_dim_b() const;
};

struct SymDimResult {
  std::uint64_t n = 0;
  std::uint64_t x = 1;
  BigInt g_exact;
  double log2_g = 0.0;
  double log2_g_upper = 0.0;
};

// C(n + x - 1, n), the dimension of Sym^n(C^x).
BigInt sym_dim(std::uint64_t n, std::uint64_t x);
SymDimResult sym_dim_result(std::uint64_t n, std::uint64_t x);

// log2 C(n + x - 1, n) evaluated as a sum of x - 1 terms; n may be any
// nonnegative real, so counts like 1e13 never touch big integers.
double log2_sym_dim(double n, std::uint64_t x);
// (x - 1) log2(e (n + x - 1) / (x - 1)); 0 for x = 1.
double log2_sym_dim_upper(double n, std::uint64_t x);

std::uint64_t effective_x(const BlockSpec& spec);

HermOp sym_projector(int n, int d);
HermOp haar_mean_power(int n, int d, std::uint64_t samples, std::uint64_t seed);
// True iff |psi><psi| <= sym_projector(n, d) up to -1e-9.
bool check_pure_domination(const CVec& psi, int n, int d);

}  // namespace qkdps
