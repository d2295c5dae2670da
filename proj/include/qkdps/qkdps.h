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

#ifndef QKDPS_QKDPS_H_
#define QKDPS_QKDPS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QKDPS_BUILDING_LIBRARY)
#define QKDPS_API __declspec(dllexport)
#else
#define QKDPS_API __declspec(dllimport)
#endif
#else
#define QKDPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qkdps_status {
  QKDPS_OK = 0,
  QKDPS_ERR_INVALID_ARGUMENT = 1,
  QKDPS_ERR_DIMENSION_MISMATCH = 2,
  QKDPS_ERR_NOT_HERMITIAN = 3,
  QKDPS_ERR_NOT_POSITIVE = 4,
  QKDPS_ERR_INFEASIBLE = 5,
  QKDPS_ERR_NUMERICAL = 6,
  QKDPS_ERR_IO = 7,
  QKDPS_ERR_PARSE = 8,
  QKDPS_ERR_INTERNAL = 99
} qkdps_status;

/* Message of the most recent failing call on this thread, or "". */
QKDPS_API const char* qkdps_last_error(void);
QKDPS_API const char* qkdps_status_name(qkdps_status status);
QKDPS_API const char* qkdps_version(void);

/* ---- configuration ---- */

typedef struct qkdps_config qkdps_config;

QKDPS_API qkdps_status qkdps_config_default(qkdps_config** out);
QKDPS_API qkdps_status qkdps_config_load(const char* path, qkdps_config** out);
QKDPS_API void qkdps_config_free(qkdps_config* cfg);
/* Comma separated mode names: iid, sequential_iid, ps_block, ps_generic, ps_decoy. */
QKDPS_API qkdps_status qkdps_config_set_modes(qkdps_config* cfg, const char* modes);
/* "0,10,20" or "start:step:stop". */
QKDPS_API qkdps_status qkdps_config_set_distances(qkdps_config* cfg, const char* distances);
QKDPS_API qkdps_status qkdps_config_set_seed(qkdps_config* cfg, uint64_t seed);
QKDPS_API qkdps_status qkdps_config_set_threads(qkdps_config* cfg, int threads);
/* Output paths from the [output] section; empty strings when unset. Valid
   until the config is modified or freed. */
QKDPS_API qkdps_status qkdps_config_output_paths(const qkdps_config* cfg, const char** csv, const char** svg);

/* ---- sweeps ---- */

typedef struct qkdps_sweep qkdps_sweep;

typedef struct qkdps_row {
  double distance_km;
  const char* mode;
  double n_used;
  double x_used;
  double log2_g;
  double entropy_lb_bits_per_round;
  double b_stat;
  double leak;
  double theta;
  double key_length_bits;
  double key_rate_per_second;
  double secrecy_eps;
  const char* status; /* "ok" or "error: ..." */
} qkdps_row;

QKDPS_API qkdps_status qkdps_sweep_run(const qkdps_config* cfg, qkdps_sweep** out);
QKDPS_API void qkdps_sweep_free(qkdps_sweep* sweep);
QKDPS_API size_t qkdps_sweep_size(const qkdps_sweep* sweep);
/* String members point into the sweep and live as long as it does. */
QKDPS_API qkdps_status qkdps_sweep_row(const qkdps_sweep* sweep, size_t index, qkdps_row* out);
QKDPS_API qkdps_status qkdps_sweep_write_csv(const qkdps_sweep* sweep, const char* path);
QKDPS_API qkdps_status qkdps_sweep_write_svg(const qkdps_sweep* sweep, const char* path);

/* ---- de Finetti dimensions ---- */

typedef struct qkdps_block {
  uint64_t dim;
  uint64_t count;
} qkdps_block;

/* x = (sum_i count_i dim_i^2)(sum_j count_j dim_j^2) for the A and B sides. */
QKDPS_API qkdps_status qkdps_effective_x(const qkdps_block* side_a, size_t n_a, const qkdps_block* side_b,
                                         size_t n_b, uint64_t* out);
/* log2 of the symmetric-subspace dimension C(n + x - 1, n). */
QKDPS_API qkdps_status qkdps_log2_sym_dim(double n, uint64_t x, double* out);

/* ---- decoy analysis ---- */

/* Bounds on the yield Y(outcome | signal, photons) from a CSV with header
   outcome,signal,intensity,frequency. */
QKDPS_API qkdps_status qkdps_decoy_bounds(const char* csv_path, int cutoff_photons, int outcome, int signal,
                                          int photons, double* lo, double* hi);

#ifdef __cplusplus
}
#endif

#endif  /* QKDPS_QKDPS_H_ */
