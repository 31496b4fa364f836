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

#include "sessionlens/sessionlens.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "sessionlens/clustering.hpp"
#include "sessionlens/config.hpp"
#include "sessionlens/error.hpp"
#include "sessionlens/pipeline.hpp"
#include "sessionlens/validity.hpp"
#include "sessionlens/weighting.hpp"

struct sl_config {
  sessionlens::PipelineConfig cfg;
};

struct sl_matrix {
  sessionlens::SessionMatrix m;
};

struct sl_fcm {
  sessionlens::SessionMatrix matrix;
  sessionlens::FcmConfig cfg;
  sessionlens::FcmState state;
};

namespace {

thread_local std::string last_error;

sl_status status_of(sessionlens::ErrorKind kind) {
  switch (kind) {
    case sessionlens::ErrorKind::kInput: return SL_ERR_INPUT;
    case sessionlens::ErrorKind::kReduction: return SL_ERR_REDUCTION;
    case sessionlens::ErrorKind::kClustering: return SL_ERR_CLUSTERING;
    case sessionlens::ErrorKind::kConfig: return SL_ERR_CONFIG;
  }
  return SL_ERR_INTERNAL;
}

sl_status fail(sl_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
sl_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return SL_OK;
  } catch (const sessionlens::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SL_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sl_status copy_out(const std::vector<double>& src, double* out, size_t capacity,
                   size_t* needed) {
  if (needed) *needed = src.size();
  if (!out) return needed ? SL_OK : fail(SL_ERR_ARGUMENT, "no output buffer");
  if (capacity < src.size()) return fail(SL_ERR_ARGUMENT, "output buffer too small");
  std::copy(src.begin(), src.end(), out);
  return SL_OK;
}

}  // namespace

extern "C" {

const char* sl_version(void) { return "1.0.0"; }

const char* sl_last_error(void) { return last_error.c_str(); }

int sl_exit_code(sl_status status) {
  switch (status) {
    case SL_OK: return 0;
    case SL_ERR_REDUCTION: return 3;
    case SL_ERR_CLUSTERING: return 4;
    case SL_ERR_INTERNAL: return 1;
    default: return 2;
  }
}

sl_status sl_config_new(sl_config** out) {
  if (!out) return fail(SL_ERR_ARGUMENT, "out is NULL");
  return guarded([&] { *out = new sl_config{}; });
}

void sl_config_free(sl_config* cfg) { delete cfg; }

sl_status sl_config_set(sl_config* cfg, const char* key, const char* value) {
  if (!cfg || !key || !value) return fail(SL_ERR_ARGUMENT, "NULL argument");
  return guarded([&] { cfg->cfg.set(key, value); });
}

sl_status sl_config_load(sl_config* cfg, const char* path) {
  if (!cfg || !path) return fail(SL_ERR_ARGUMENT, "NULL argument");
  return guarded([&] { cfg->cfg.load_file(path); });
}

sl_status sl_run_command(const sl_config* cfg, const char* command, char** summary) {
  if (summary) *summary = nullptr;
  if (!cfg || !command) return fail(SL_ERR_ARGUMENT, "NULL argument");
  std::string text;
  const sl_status s = guarded([&] { text = sessionlens::run_command(command, cfg->cfg); });
  if (summary && !text.empty()) *summary = dup_string(text);
  return s;
}

void sl_string_free(char* s) { std::free(s); }

sl_status sl_url_weight(long support, long alpha1, long alpha2, double* out) {
  if (!out) return fail(SL_ERR_ARGUMENT, "out is NULL");
  return guarded([&] {
    *out = sessionlens::url_weight(support, sessionlens::WeightConfig(alpha1, alpha2, 1, 6));
  });
}

sl_status sl_session_weight(long url_count, long beta1, long beta2, double* out) {
  if (!out) return fail(SL_ERR_ARGUMENT, "out is NULL");
  return guarded([&] {
    *out = sessionlens::session_weight(url_count, sessionlens::WeightConfig(1, 6, beta1, beta2));
  });
}

sl_status sl_matrix_new(size_t rows, size_t cols, const double* values, sl_matrix** out) {
  if (!out || (!values && rows * cols > 0)) return fail(SL_ERR_ARGUMENT, "NULL argument");
  return guarded([&] {
    std::vector<double> v(values, values + rows * cols);
    *out = new sl_matrix{
        sessionlens::SessionMatrix::from_dense(sessionlens::DenseMatrix(rows, cols, std::move(v)))};
  });
}

void sl_matrix_free(sl_matrix* m) { delete m; }

sl_status sl_matrix_shape(const sl_matrix* m, size_t* rows, size_t* cols) {
  if (!m) return fail(SL_ERR_ARGUMENT, "NULL matrix");
  if (rows) *rows = m->m.rows();
  if (cols) *cols = m->m.cols();
  return SL_OK;
}

sl_status sl_matrix_set_weights(sl_matrix* m, const double* row_weights,
                                const double* col_weights) {
  if (!m) return fail(SL_ERR_ARGUMENT, "NULL matrix");
  if (row_weights) m->m.row_weights.assign(row_weights, row_weights + m->m.rows());
  if (col_weights) m->m.col_weights.assign(col_weights, col_weights + m->m.cols());
  return SL_OK;
}

sl_status sl_matrix_values(const sl_matrix* m, double* out, size_t capacity) {
  if (!m) return fail(SL_ERR_ARGUMENT, "NULL matrix");
  return copy_out(m->m.data.values(), out, capacity, nullptr);
}

sl_status sl_matrix_weights(const sl_matrix* m, double* row_weights, double* col_weights) {
  if (!m) return fail(SL_ERR_ARGUMENT, "NULL matrix");
  if (row_weights) std::copy(m->m.row_weights.begin(), m->m.row_weights.end(), row_weights);
  if (col_weights) std::copy(m->m.col_weights.begin(), m->m.col_weights.end(), col_weights);
  return SL_OK;
}

sl_status sl_matrix_ids(const sl_matrix* m, size_t* row_ids, size_t* col_ids) {
  if (!m) return fail(SL_ERR_ARGUMENT, "NULL matrix");
  if (row_ids) std::copy(m->m.row_ids.begin(), m->m.row_ids.end(), row_ids);
  if (col_ids) std::copy(m->m.col_ids.begin(), m->m.col_ids.end(), col_ids);
  return SL_OK;
}

sl_status sl_matrix_reduce(const sl_matrix* m, long alpha1, long alpha2, long beta1, long beta2,
                           sl_matrix** reduced, sl_reduction_report* report) {
  if (!m || !reduced) return fail(SL_ERR_ARGUMENT, "NULL argument");
  *reduced = nullptr;
  return guarded([&] {
    auto r = sessionlens::assign_weights_and_reduce(
        m->m, sessionlens::WeightConfig(alpha1, alpha2, beta1, beta2));
    if (report) {
      report->urls_before = r.report.urls_before;
      report->urls_after = r.report.urls_after;
      report->sessions_before = r.report.sessions_before;
      report->sessions_after = r.report.sessions_after;
      report->urls_dropped_zero_weight = r.report.urls_dropped_zero_weight;
      report->sessions_dropped_zero_weight = r.report.sessions_dropped_zero_weight;
      report->sessions_dropped_empty_after_column_removal =
          r.report.sessions_dropped_empty_after_column_removal;
    }
    *reduced = new sl_matrix{std::move(r.matrix)};
  });
}

void sl_fcm_params_default(sl_fcm_params* params) {
  if (!params) return;
  const sessionlens::FcmConfig d;
  params->clusters = d.clusters;
  params->q = d.fuzziness;
  params->epsilon = d.epsilon;
  params->max_iter = d.max_iter;
  params->seed = 42;
  params->mode = SL_MODE_UNWEIGHTED;
}

sl_status sl_fcm_run(const sl_matrix* m, const sl_fcm_params* params, sl_fcm** out) {
  if (!m || !params || !out) return fail(SL_ERR_ARGUMENT, "NULL argument");
  *out = nullptr;
  return guarded([&] {
    sessionlens::FcmConfig cfg;
    cfg.clusters = params->clusters;
    cfg.fuzziness = params->q;
    cfg.epsilon = params->epsilon;
    cfg.max_iter = params->max_iter;
    cfg.seed = params->seed;
    cfg.mode = params->mode == SL_MODE_WEIGHTED ? sessionlens::DistanceMode::kWeighted
                                                : sessionlens::DistanceMode::kUnweighted;
    auto state = sessionlens::run_fcm(m->m, cfg);
    *out = new sl_fcm{m->m, cfg, std::move(state)};
  });
}

void sl_fcm_free(sl_fcm* run) { delete run; }

sl_status sl_fcm_info(const sl_fcm* run, size_t* iterations, int* converged, double* objective) {
  if (!run) return fail(SL_ERR_ARGUMENT, "NULL run");
  if (iterations) *iterations = run->state.iterations_run;
  if (converged) *converged = run->state.converged ? 1 : 0;
  if (objective) *objective = run->state.final_objective();
  return SL_OK;
}

sl_status sl_fcm_memberships(const sl_fcm* run, double* out, size_t capacity, size_t* needed) {
  if (!run) return fail(SL_ERR_ARGUMENT, "NULL run");
  return copy_out(run->state.memberships.values(), out, capacity, needed);
}

sl_status sl_fcm_centers(const sl_fcm* run, double* out, size_t capacity, size_t* needed) {
  if (!run) return fail(SL_ERR_ARGUMENT, "NULL run");
  return copy_out(run->state.centers.values(), out, capacity, needed);
}

sl_status sl_fcm_trace(const sl_fcm* run, double* out, size_t capacity, size_t* needed) {
  if (!run) return fail(SL_ERR_ARGUMENT, "NULL run");
  return copy_out(run->state.objective_trace, out, capacity, needed);
}

sl_status sl_fcm_xie_beni(const sl_fcm* run, double* out) {
  if (!run || !out) return fail(SL_ERR_ARGUMENT, "NULL argument");
  return guarded([&] { *out = sessionlens::xie_beni(run->state, run->matrix, run->cfg.mode); });
}

}  // extern "C"
