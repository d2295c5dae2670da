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

#include "qkdps/qkdps.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "config.hpp"
#include "decoy.hpp"
#include "definetti.hpp"
#include "error.hpp"
#include "report.hpp"
#include "sweep.hpp"

struct qkdps_config {
  qkdps::SweepConfig cfg;
};

struct qkdps_sweep {
  std::vector<qkdps::SweepRow> rows;
};

namespace {

thread_local std::string g_last_error;

qkdps_status set_error(qkdps_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <class F>
qkdps_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return QKDPS_OK;
  } catch (const qkdps::Error& e) {
    return set_error(static_cast<qkdps_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(QKDPS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(QKDPS_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(QKDPS_ERR_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* what) {
  if (!p) qkdps::fail(qkdps::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* qkdps_last_error(void) { return g_last_error.c_str(); }

const char* qkdps_status_name(qkdps_status status) {
  switch (status) {
    case QKDPS_OK: return "ok";
    case QKDPS_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case QKDPS_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case QKDPS_ERR_NOT_HERMITIAN: return "not_hermitian";
    case QKDPS_ERR_NOT_POSITIVE: return "not_positive";
    case QKDPS_ERR_INFEASIBLE: return "infeasible";
    case QKDPS_ERR_NUMERICAL: return "numerical";
    case QKDPS_ERR_IO: return "io";
    case QKDPS_ERR_PARSE: return "parse";
    case QKDPS_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* qkdps_version(void) { return "0.1.0"; }

qkdps_status qkdps_config_default(qkdps_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new qkdps_config{};
  });
}

qkdps_status qkdps_config_load(const char* path, qkdps_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = nullptr;
    auto* c = new qkdps_config{qkdps::load_config(path)};
    *out = c;
  });
}

void qkdps_config_free(qkdps_config* cfg) { delete cfg; }

qkdps_status qkdps_config_set_modes(qkdps_config* cfg, const char* modes) {
  return guarded([&] {
    need(cfg, "cfg");
    need(modes, "modes");
    cfg->cfg.modes = qkdps::parse_mode_list(modes);
  });
}

qkdps_status qkdps_config_set_distances(qkdps_config* cfg, const char* distances) {
  return guarded([&] {
    need(cfg, "cfg");
    need(distances, "distances");
    auto d = qkdps::parse_distance_list(distances);
    for (double v : d)
      qkdps::require(v >= 0.0, qkdps::ErrorCode::kInvalidArgument, "distances must be nonnegative");
    cfg->cfg.distances_km = std::move(d);
  });
}

qkdps_status qkdps_config_set_seed(qkdps_config* cfg, uint64_t seed) {
  return guarded([&] {
    need(cfg, "cfg");
    cfg->cfg.seed = seed;
  });
}

qkdps_status qkdps_config_set_threads(qkdps_config* cfg, int threads) {
  return guarded([&] {
    need(cfg, "cfg");
    qkdps::require(threads >= 0, qkdps::ErrorCode::kInvalidArgument, "threads must be nonnegative");
    cfg->cfg.threads = threads;
  });
}

qkdps_status qkdps_config_output_paths(const qkdps_config* cfg, const char** csv, const char** svg) {
  return guarded([&] {
    need(cfg, "cfg");
    if (csv) *csv = cfg->cfg.out_csv.c_str();
    if (svg) *svg = cfg->cfg.out_svg.c_str();
  });
}

qkdps_status qkdps_sweep_run(const qkdps_config* cfg, qkdps_sweep** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    *out = nullptr;
    auto rows = qkdps::run_sweep(cfg->cfg);
    *out = new qkdps_sweep{std::move(rows)};
  });
}

void qkdps_sweep_free(qkdps_sweep* sweep) { delete sweep; }

size_t qkdps_sweep_size(const qkdps_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

qkdps_status qkdps_sweep_row(const qkdps_sweep* sweep, size_t index, qkdps_row* out) {
  return guarded([&] {
    need(sweep, "sweep");
    need(out, "out");
    qkdps::require(index < sweep->rows.size(), qkdps::ErrorCode::kInvalidArgument, "row index out of range");
    const qkdps::SweepRow& r = sweep->rows[index];
    *out = qkdps_row{r.distance_km, r.mode.c_str(), r.n_used, r.x_used, r.log2_g, r.entropy_lb_bits_per_round,
                     r.b_stat, r.leak, r.theta, r.key_length_bits, r.key_rate_per_second, r.secrecy_eps,
                     r.status.c_str()};
  });
}

qkdps_status qkdps_sweep_write_csv(const qkdps_sweep* sweep, const char* path) {
  return guarded([&] {
    need(sweep, "sweep");
    need(path, "path");
    qkdps::write_csv(path, sweep->rows);
  });
}

qkdps_status qkdps_sweep_write_svg(const qkdps_sweep* sweep, const char* path) {
  return guarded([&] {
    need(sweep, "sweep");
    need(path, "path");
    qkdps::write_svg(path, sweep->rows);
  });
}

qkdps_status qkdps_effective_x(const qkdps_block* side_a, size_t n_a, const qkdps_block* side_b, size_t n_b,
                               uint64_t* out) {
  return guarded([&] {
    need(out, "out");
    qkdps::require((side_a || n_a == 0) && (side_b || n_b == 0), qkdps::ErrorCode::kInvalidArgument,
                   "block array is null");
    qkdps::BlockSpec spec;
    auto convert = [](const qkdps_block& b) {
      qkdps::require(b.dim <= INT32_MAX && b.count <= INT32_MAX, qkdps::ErrorCode::kInvalidArgument,
                     "block dimension or count too large");
      return qkdps::Block{static_cast<int>(b.dim), static_cast<int>(b.count)};
    };
    for (size_t i = 0; i < n_a; ++i) spec.side_a.push_back(convert(side_a[i]));
    for (size_t i = 0; i < n_b; ++i) spec.side_b.push_back(convert(side_b[i]));
    *out = qkdps::effective_x(spec);
  });
}

qkdps_status qkdps_log2_sym_dim(double n, uint64_t x, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = qkdps::log2_sym_dim(n, x);
  });
}

qkdps_status qkdps_decoy_bounds(const char* csv_path, int cutoff_photons, int outcome, int signal, int photons,
                                double* lo, double* hi) {
  return guarded([&] {
    need(csv_path, "csv_path");
    need(lo, "lo");
    need(hi, "hi");
    qkdps::IntensitySet set;
    const qkdps::DecoyObservations obs = qkdps::load_decoy_csv(csv_path, set);
    set.cutoff_n = cutoff_photons;
    set.validate();
    const qkdps::YieldBounds b = qkdps::decoy_lp_bounds(obs, set, qkdps::YieldTarget{outcome, signal, photons});
    *lo = b.lo;
    *hi = b.hi;
  });
}

}  // extern "C"
