/*
 * Copyright 2026 The sessionlens Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SESSIONLENS_SESSIONLENS_H_
#define SESSIONLENS_SESSIONLENS_H_

/*
 * C interface of libsessionlens.
 *
 * Every function that can fail returns an sl_status. On failure a message
 * describing the error is available from sl_last_error() until the next call
 * on the same thread. Handles are opaque; each *_new/_run has a matching
 * *_free that accepts NULL.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(SESSIONLENS_BUILDING_DLL)
#define SL_API __attribute__((visibility("default")))
#else
#define SL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sl_status {
  SL_OK = 0,
  SL_ERR_ARGUMENT = 1,   /* NULL handle, buffer too small */
  SL_ERR_INPUT = 2,      /* unreadable input, malformed artifact, bad dialect */
  SL_ERR_REDUCTION = 3,  /* thresholds removed every row or column */
  SL_ERR_CLUSTERING = 4, /* c > m, degenerate clusters, collapsed separation */
  SL_ERR_CONFIG = 5,     /* invalid parameter value */
  SL_ERR_INTERNAL = 6
} sl_status;

typedef enum sl_mode { SL_MODE_WEIGHTED = 0, SL_MODE_UNWEIGHTED = 1 } sl_mode;

typedef struct sl_config sl_config;
typedef struct sl_matrix sl_matrix;
typedef struct sl_fcm sl_fcm;

SL_API const char* sl_version(void);
SL_API const char* sl_last_error(void);

/* Process exit status for a status code: 0, 2 (input and config), 3, 4. */
SL_API int sl_exit_code(sl_status status);

/* ---- pipeline configuration and commands ------------------------------ */

SL_API sl_status sl_config_new(sl_config** out);
SL_API void sl_config_free(sl_config* cfg);
SL_API sl_status sl_config_set(sl_config* cfg, const char* key, const char* value);
/* Flat `key = value` file, '#' comments. */
SL_API sl_status sl_config_load(sl_config* cfg, const char* path);

/* Runs preprocess, weigh, cluster, sweep or fixture. When `summary` is not
 * NULL it receives a heap string (free with sl_string_free), also on
 * failure if the command produced one. */
SL_API sl_status sl_run_command(const sl_config* cfg, const char* command, char** summary);
SL_API void sl_string_free(char* s);

/* ---- fuzzy weights ---------------------------------------------------- */

SL_API sl_status sl_url_weight(long support, long alpha1, long alpha2, double* out);
SL_API sl_status sl_session_weight(long url_count, long beta1, long beta2, double* out);

/* ---- matrices --------------------------------------------------------- */

/* Row-major values; weights start at 1. */
SL_API sl_status sl_matrix_new(size_t rows, size_t cols, const double* values, sl_matrix** out);
SL_API void sl_matrix_free(sl_matrix* m);
SL_API sl_status sl_matrix_shape(const sl_matrix* m, size_t* rows, size_t* cols);
/* Either pointer may be NULL to leave that side unchanged. */
SL_API sl_status sl_matrix_set_weights(sl_matrix* m, const double* row_weights,
                                       const double* col_weights);
SL_API sl_status sl_matrix_values(const sl_matrix* m, double* out, size_t capacity);
SL_API sl_status sl_matrix_weights(const sl_matrix* m, double* row_weights, double* col_weights);
/* Original row (session) and column (URL) ids of each row/column. */
SL_API sl_status sl_matrix_ids(const sl_matrix* m, size_t* row_ids, size_t* col_ids);

typedef struct sl_reduction_report {
  size_t urls_before;
  size_t urls_after;
  size_t sessions_before;
  size_t sessions_after;
  size_t urls_dropped_zero_weight;
  size_t sessions_dropped_zero_weight;
  size_t sessions_dropped_empty_after_column_removal;
} sl_reduction_report;

/* Assigns fuzzy weights from the binary matrix and drops zero-weight columns,
 * zero-weight rows and rows emptied by the column removal. */
SL_API sl_status sl_matrix_reduce(const sl_matrix* m, long alpha1, long alpha2, long beta1,
                                  long beta2, sl_matrix** reduced, sl_reduction_report* report);

/* ---- fuzzy c-means ---------------------------------------------------- */

typedef struct sl_fcm_params {
  size_t clusters;
  double q;
  double epsilon;
  size_t max_iter;
  uint64_t seed;
  sl_mode mode;
} sl_fcm_params;

/* clusters 2, q 2, epsilon 1e-5, max_iter 300, seed 42, unweighted. */
SL_API void sl_fcm_params_default(sl_fcm_params* params);

SL_API sl_status sl_fcm_run(const sl_matrix* m, const sl_fcm_params* params, sl_fcm** out);
SL_API void sl_fcm_free(sl_fcm* run);
SL_API sl_status sl_fcm_info(const sl_fcm* run, size_t* iterations, int* converged,
                             double* objective);
/* Copy-out accessors. With out == NULL only *needed is filled; otherwise
 * capacity must be at least *needed. */
SL_API sl_status sl_fcm_memberships(const sl_fcm* run, double* out, size_t capacity,
                                    size_t* needed);
SL_API sl_status sl_fcm_centers(const sl_fcm* run, double* out, size_t capacity, size_t* needed);
SL_API sl_status sl_fcm_trace(const sl_fcm* run, double* out, size_t capacity, size_t* needed);
SL_API sl_status sl_fcm_xie_beni(const sl_fcm* run, double* out);

#ifdef __cplusplus
}
#endif

#endif /* SESSIONLENS_SESSIONLENS_H_ */
