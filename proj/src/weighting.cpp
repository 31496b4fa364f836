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

#include "sessionlens/weighting.hpp"

#include <map>
#include <string>

#include "sessionlens/error.hpp"

namespace sessionlens {

WeightConfig::WeightConfig(long alpha1, long alpha2, long beta1, long beta2)
    : alpha1_(alpha1), alpha2_(alpha2), beta1_(beta1), beta2_(beta2) {
  if (alpha1 < 0 || alpha2 <= alpha1)
    throw ConfigError("URL thresholds need 0 <= alpha1 < alpha2 (got " +
                      std::to_string(alpha1) + ", " + std::to_string(alpha2) + ")");
  if (beta1 < 0 || beta2 <= beta1)
    throw ConfigError("session thresholds need 0 <= beta1 < beta2 (got " +
                      std::to_string(beta1) + ", " + std::to_string(beta2) + ")");
}

double linear_membership(long x, long lower, long upper) {
  if (x <= lower) return 0.0;
  if (x >= upper) return 1.0;
  return static_cast<double>(x - lower) / static_cast<double>(upper - lower);
}

double url_weight(long support, const WeightConfig& cfg) {
  return linear_membership(support, cfg.alpha1(), cfg.alpha2());
}

double session_weight(long url_count, const WeightConfig& cfg) {
  return linear_membership(url_count, cfg.beta1(), cfg.beta2());
}

SessionMatrix build_matrix(std::span<const UserSession> sessions, const Vocabulary& vocab) {
  DenseMatrix data(sessions.size(), vocab.size());
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    for (std::size_t k : sessions[i].url_indices) {
      if (k >= vocab.size())
        throw InputError("session " + std::to_string(sessions[i].session_id) +
                         " references URL index " + std::to_string(k) +
                         " outside the vocabulary");
      data(i, k) = 1.0;
    }
  }
  SessionMatrix m = SessionMatrix::from_dense(std::move(data));
  for (std::size_t i = 0; i < sessions.size(); ++i) m.row_ids[i] = sessions[i].session_id;
  return m;
}

WeightAssignment assign_weights(const SessionMatrix& matrix, const WeightConfig& cfg) {
  const std::size_t m = matrix.rows();
  const std::size_t n = matrix.cols();
  WeightAssignment w;
  w.url_support.assign(n, 0);
  w.session_url_count.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (matrix.data(i, k) != 0.0) {
        ++w.url_support[k];
        ++w.session_url_count[i];
      }
    }
  }
  w.url_weights.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    w.url_weights[k] = url_weight(static_cast<long>(w.url_support[k]), cfg);
  w.session_weights.resize(m);
  for (std::size_t i = 0; i < m; ++i)
    w.session_weights[i] = session_weight(static_cast<long>(w.session_url_count[i]), cfg);
  return w;
}

Reduction assign_weights_and_reduce(const SessionMatrix& matrix, const WeightConfig& cfg) {
  matrix.check_shape();
  Reduction out;
  out.weights = assign_weights(matrix, cfg);
  const auto& w = out.weights;
  auto& report = out.report;
  report.urls_before = matrix.cols();
  report.sessions_before = matrix.rows();

  std::vector<std::size_t> keep_cols;
  for (std::size_t k = 0; k < matrix.cols(); ++k) {
    if (w.url_weights[k] > 0.0) {
      keep_cols.push_back(k);
    } else {
      ++report.urls_dropped_zero_weight;
    }
  }

  std::vector<std::size_t> keep_rows;
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    if (w.session_weights[i] <= 0.0) {
      ++report.sessions_dropped_zero_weight;
      continue;
    }
    bool any = false;
    for (std::size_t k : keep_cols) any = any || matrix.data(i, k) != 0.0;
    if (!any) {
      ++report.sessions_dropped_empty_after_column_removal;
      continue;
    }
    keep_rows.push_back(i);
  }

  report.urls_after = keep_cols.size();
  report.sessions_after = keep_rows.size();
  if (keep_rows.empty() || keep_cols.empty()) {
    throw ReductionError("matrix vanished under thresholds (" +
                         std::to_string(report.sessions_after) + " sessions x " +
                         std::to_string(report.urls_after) + " URLs survive)");
  }

  DenseMatrix data(keep_rows.size(), keep_cols.size());
  for (std::size_t r = 0; r < keep_rows.size(); ++r)
    for (std::size_t c = 0; c < keep_cols.size(); ++c)
      data(r, c) = matrix.data(keep_rows[r], keep_cols[c]);

  out.matrix.data = std::move(data);
  for (std::size_t i : keep_rows) {
    out.matrix.row_weights.push_back(w.session_weights[i]);
    out.matrix.row_ids.push_back(matrix.row_ids[i]);
  }
  for (std::size_t k : keep_cols) {
    out.matrix.col_weights.push_back(w.url_weights[k]);
    out.matrix.col_ids.push_back(matrix.col_ids[k]);
  }
  return out;
}

std::vector<HistogramBucket> weight_histogram(std::span<const double> weights) {
  std::map<double, std::size_t> counts;
  for (double w : weights) ++counts[w];
  std::vector<HistogramBucket> out;
  for (const auto& [w, n] : counts) out.push_back({w, n});
  return out;
}

}  // namespace sessionlens
