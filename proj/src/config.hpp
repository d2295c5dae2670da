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

#include <istream>
#include <string>
#include <vector>

#include "sweep.hpp"

namespace qkdps {

// INI configuration. Sections and keys:
//
//   [protocol] t, p_z, attenuation_db_per_km, test_fraction, duration_s,
//              source_rate_hz, cutoff_photons, detector_efficiency,
//              z_arm_fraction, crossclick_c
//   [sweep]    modes, distances_km, seed, threads, n_total
//   [security] eps_sec, eps_cor, f_ec
//   [entropy]  max_iterations, gap_target, relative_gap_target, perturbation
//   [output]   csv, svg
//
// Every key is optional. Unknown sections or keys are rejected.
SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::string& path);

// "iid, ps_block" -> modes.
std::vector<Mode> parse_mode_list(const std::string& text);
// Either a list "0, 25, 50" or a range "start:step:stop" (stop inclusive).
std::vector<double> parse_distance_list(const std::string& text);

}  // namespace qkdps
