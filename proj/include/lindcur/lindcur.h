// Copyright 2026 The lindcur Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the lindcur core. Every function returns an lcur_status;
 * on failure lcur_last_error_message() holds a one-line reason for the
 * calling thread. Handles are owned by the caller and released with the
 * matching _destroy function. Site and bond indices are 1-based. */
#ifndef LINDCUR_LINDCUR_H_
#define LINDCUR_LINDCUR_H_

#include <stddef.h>

#if defined(_WIN32)
#define LCUR_API __declspec(dllexport)
#else
#define LCUR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lcur_status {
  LCUR_OK = 0,
  LCUR_NOT_HERMITIAN = 1,
  LCUR_NO_CONVERGENCE,
  LCUR_DIMENSION_MISMATCH,
  LCUR_BIN_COLLISION,
  LCUR_POINTWISE_UNDEFINED,
  LCUR_OUT_OF_RANGE,
  LCUR_MISSING_FREQUENCY,
  LCUR_POSITIVITY_VIOLATION,
  LCUR_STEP_TOO_LARGE,
  LCUR_STEP_TOO_COARSE,
  LCUR_POSITIVITY_LOST,
  LCUR_DEGENERATE_KERNEL,
  LCUR_LENGTH_MISMATCH,
  LCUR_INDEX_OUT_OF_RANGE,
  LCUR_INVALID_ARGUMENT,
  LCUR_PARSE_ERROR,
  LCUR_VALIDATION_ERROR,
  LCUR_IO_ERROR,
  LCUR_INCOMPATIBLE,
  LCUR_INTERNAL = 100
} lcur_status;

typedef struct lcur_config lcur_config;
typedef struct lcur_model lcur_model;

/* Receives one verify summary line (no trailing newline). */
typedef void (*lcur_line_fn)(const char* line, void* user);

LCUR_API const char* lcur_version(void);
LCUR_API const char* lcur_status_name(lcur_status status);
LCUR_API const char* lcur_last_error_message(void);
/* Process exit code for a status: 0, 2 (positivity lost), 3 (incompatible) or 1. */
LCUR_API int lcur_exit_code(lcur_status status);

LCUR_API lcur_status lcur_config_load(const char* path, lcur_config** out);
LCUR_API lcur_status lcur_config_parse(const char* json_text, const char* base_dir, lcur_config** out);
LCUR_API void lcur_config_destroy(lcur_config* cfg);
/* Output directory named in the config; valid while cfg lives. */
LCUR_API const char* lcur_config_output_directory(const lcur_config* cfg);

/* out_dir may be NULL to use the configured directory. */
LCUR_API lcur_status lcur_simulate(const lcur_config* cfg, const char* out_dir);
LCUR_API lcur_status lcur_steady(const lcur_config* cfg, const char* out_dir);
/* all_passed is set to 1 iff every check passed. Check failures are not errors. */
LCUR_API lcur_status lcur_verify(const lcur_config* cfg, const char* suite, lcur_line_fn on_line, void* user,
                                 int* all_passed);

LCUR_API lcur_status lcur_model_create(const lcur_config* cfg, lcur_model** out);
LCUR_API void lcur_model_destroy(lcur_model* model);
LCUR_API int lcur_model_sites(const lcur_model* model);

/* Density matrices are n*n interleaved (re, im) pairs, column-major:
 * element (i, j) sits at 2*(j*n + i). */
LCUR_API lcur_status lcur_model_steady_state(const lcur_model* model, double* rho, size_t len);
LCUR_API lcur_status lcur_model_initial_state(const lcur_model* model, const lcur_config* cfg, double* rho,
                                              size_t len);
/* out receives n-1 bond values. */
LCUR_API lcur_status lcur_model_jd_expectation(const lcur_model* model, const double* rho, size_t len,
                                               double* out, size_t out_len);
LCUR_API lcur_status lcur_model_jd_cumulative(const lcur_model* model, const double* rho, size_t len,
                                              double* out, size_t out_len);
/* out receives n site values of tr(rho L*(n_r)). */
LCUR_API lcur_status lcur_model_lstar_expectation(const lcur_model* model, const double* rho, size_t len,
                                                  double* out, size_t out_len);
/* Site-wise relative deviation of div J_D + L*(n_r). */
LCUR_API lcur_status lcur_model_divergence_check(const lcur_model* model, double* relative);

#ifdef __cplusplus
}
#endif

#endif  // LINDCUR_LINDCUR_H_
