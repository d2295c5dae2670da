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
#include <string>
#include <vector>

#include "entropy.hpp"
#include "three_state.hpp"

namespace qkdps {

enum class Mode { kIid, kSequentialIid, kPsBlock, kPsGeneric, kPsDecoy };

const char* mode_name(Mode m);
Mode parse_mode(const std::string& name);
const std::vector<Mode>& all_modes();
// Block structure behind the postselection modes (x = 52, 484, 3510).
BlockSpec mode_block_spec(Mode m);

struct SweepConfig {
  ThreeStateConfig protocol;
  std::vector<Mode> modes = all_modes();
  std::vector<double> distances_km;
  double eps_target_sec = 1e-12;
  double eps_target_cor = 1e-12;
  double f_ec = 1.16;
  double n_total = 0.0;  // 0 = duration_s * source_rate_hz
  std::uint64_t seed = 0;
  int threads = 0;       // 0 = hardware concurrency
  EntropyOptions entropy;
  std::string out_csv;
  std::string out_svg;

  SweepConfig();
  void validate() const;
};

struct SweepRow {
  double distance_km = 0.0;
  std::string mode;
  double n_used = 0.0;
  double x_used = 0.0;
  double log2_g = 0.0;
  double entropy_lb_bits_per_round = 0.0;
  double b_stat = 0.0;
  double leak = 0.0;
  double theta = 0.0;
  double key_length_bits = 0.0;
  double key_rate_per_second = 0.0;
  double secrecy_eps = 0.0;
  std::string status = "ok";
};

std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

}  // namespace qkdps
