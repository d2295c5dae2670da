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

// Command-line front end. Talks to the library through the C API only.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "qkdps/qkdps.h"

namespace {

int report(qkdps_status st) {
  std::fprintf(stderr, "error: code=%d name=%s message=%s\n", static_cast<int>(st), qkdps_status_name(st),
               qkdps_last_error());
  return st == QKDPS_ERR_INTERNAL ? 3 : 2;
}

int run_sweep(const std::string& config, std::string out_csv, std::string out_svg, const uint64_t* seed,
              const std::string& modes, const std::string& distances, int threads) {
  qkdps_config* cfg = nullptr;
  qkdps_status st = config.empty() ? qkdps_config_default(&cfg) : qkdps_config_load(config.c_str(), &cfg);
  if (st != QKDPS_OK) return report(st);
  struct Guard {
    qkdps_config* c;
    qkdps_sweep* s = nullptr;
    ~Guard() {
      qkdps_sweep_free(s);
      qkdps_config_free(c);
    }
  } guard{cfg};

  if (!modes.empty() && (st = qkdps_config_set_modes(cfg, modes.c_str())) != QKDPS_OK) return report(st);
  if (!distances.empty() && (st = qkdps_config_set_distances(cfg, distances.c_str())) != QKDPS_OK) return report(st);
  if (seed && (st = qkdps_config_set_seed(cfg, *seed)) != QKDPS_OK) return report(st);
  if (threads >= 0 && (st = qkdps_config_set_threads(cfg, threads)) != QKDPS_OK) return report(st);

  const char* cfg_csv = "";
  const char* cfg_svg = "";
  qkdps_config_output_paths(cfg, &cfg_csv, &cfg_svg);
  if (out_csv.empty()) out_csv = cfg_csv;
  if (out_svg.empty()) out_svg = cfg_svg;

  if ((st = qkdps_sweep_run(cfg, &guard.s)) != QKDPS_OK) return report(st);
  if (!out_csv.empty() && (st = qkdps_sweep_write_csv(guard.s, out_csv.c_str())) != QKDPS_OK) return report(st);
  if (!out_svg.empty() && (st = qkdps_sweep_write_svg(guard.s, out_svg.c_str())) != QKDPS_OK) return report(st);

  size_t failed = 0;
  for (size_t i = 0; i < qkdps_sweep_size(guard.s); ++i) {
    qkdps_row row;
    qkdps_sweep_row(guard.s, i, &row);
    if (std::string(row.status) != "ok") ++failed;
    if (out_csv.empty())
      std::printf("%-7g %-15s H=%-12.6g rate=%.6g %s\n", row.distance_km, row.mode, row.entropy_lb_bits_per_round,
                  row.key_rate_per_second, row.status);
  }
  std::fprintf(stderr, "sweep: %zu rows, %zu failed\n", qkdps_sweep_size(guard.s), failed);
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-size key rates for the three-state protocol"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qkdps_version());

  auto* sweep = app.add_subcommand("sweep", "Run a key-rate sweep over distances and proof modes");
  std::string config, out_csv, out_svg, modes, distances;
  uint64_t seed = 0;
  int threads = -1;
  sweep->add_option("--config", config, "INI configuration file")->check(CLI::ExistingFile);
  sweep->add_option("--out-csv", out_csv, "CSV output path");
  sweep->add_option("--out-svg", out_svg, "SVG plot output path");
  auto* seed_opt = sweep->add_option("--seed", seed, "RNG seed recorded with the run");
  sweep->add_option("--modes", modes, "Comma-separated modes (iid,sequential_iid,ps_block,ps_generic,ps_decoy)");
  sweep->add_option("--distances", distances, "Distances in km: list \"0,10\" or range start:step:stop");
  sweep->add_option("--threads", threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  auto* decoy = app.add_subcommand("decoy", "Bound an n-photon yield from decoy observations");
  std::string decoy_csv;
  int cutoff = 2, outcome = 0, signal = 0, photons = 1;
  decoy->add_option("--observations", decoy_csv, "CSV with outcome,signal,intensity,frequency")
      ->required()
      ->check(CLI::ExistingFile);
  decoy->add_option("--cutoff", cutoff, "Photon-number cutoff N")->check(CLI::NonNegativeNumber);
  decoy->add_option("--outcome", outcome, "Outcome index")->check(CLI::NonNegativeNumber);
  decoy->add_option("--signal", signal, "Signal index")->check(CLI::NonNegativeNumber);
  decoy->add_option("--photons", photons, "Photon number")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::fprintf(stderr, "error: code=%d name=usage message=%s\n", static_cast<int>(QKDPS_ERR_INVALID_ARGUMENT),
                 e.what());
    return 2;
  }

  if (*sweep) return run_sweep(config, out_csv, out_svg, *seed_opt ? &seed : nullptr, modes, distances, threads);

  double lo = 0.0, hi = 0.0;
  const qkdps_status st = qkdps_decoy_bounds(decoy_csv.c_str(), cutoff, outcome, signal, photons, &lo, &hi);
  if (st != QKDPS_OK) return report(st);
  std::printf("outcome=%d signal=%d photons=%d lower=%.17g upper=%.17g\n", outcome, signal, photons, lo, hi);
  return 0;
}
