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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sessionlens/matrix.hpp"
#include "sessionlens/sessionize.hpp"

namespace sessionlens {

// Thresholds of the two linear membership functions: alpha for URL session
// support, beta for the number of distinct URLs in a session.
class WeightConfig {
 public:
  WeightConfig() = default;
  // Throws ConfigError unless 0 <= alpha1 < alpha2 and 0 <= beta1 < beta2.
  WeightConfig(long alpha1, long alpha2, long beta1, long beta2);

  long alpha1() const { return alpha1_; }
  long alpha2() const { return alpha2_; }
  long beta1() const { return beta1_; }
  long beta2() const { return beta2_; }

 private:
  long alpha1_ = 1;
  long alpha2_ = 6;
  long beta1_ = 1;
  long beta2_ = 6;
};

// 0 at or below `lower`, 1 at or above `upper`, linear in between.
double linear_membership(long x, long lower, long upper);

double url_weight(long support, const WeightConfig& cfg);
double session_weight(long url_count, const WeightConfig& cfg);

// Binary presence matrix: row i is session i, column k is vocabulary entry k.
// Weights start at 1.
SessionMatrix build_matrix(std::span<const UserSession> sessions, const Vocabulary& vocab);

// Weights for every row and column of an unreduced matrix.
struct WeightAssignment {
  std::vector<std::size_t> url_support;        // sessions containing each URL
  std::vector<double> url_weights;
  std::vector<std::size_t> session_url_count;  // distinct URLs per session
  std::vector<double> session_weights;
};

WeightAssignment assign_weights(const SessionMatrix& matrix, const WeightConfig& cfg);

struct ReductionReport {
  std::size_t urls_before = 0;
  std::size_t urls_after = 0;
  std::size_t sessions_before = 0;
  std::size_t sessions_after = 0;
  std::size_t urls_dropped_zero_weight = 0;
  std::size_t sessions_dropped_zero_weight = 0;
  std::size_t sessions_dropped_empty_after_column_removal = 0;

  bool reconciles() const {
    return urls_before == urls_after + urls_dropped_zero_weight &&
           sessions_before == sessions_after + sessions_dropped_zero_weight +
                                  sessions_dropped_empty_after_column_removal;
  }
  bool operator==(const ReductionReport&) const = default;
};

struct Reduction {
  SessionMatrix matrix;  // survivors only, carrying their weights
  ReductionReport report;
  WeightAssignment weights;  // over the original rows and columns
};

// Weights every URL and session from the original matrix, then removes
// zero-weight columns, zero-weight rows, and rows left with no nonzero entry.
// Throws ReductionError when no row or no column survives.
Reduction assign_weights_and_reduce(const SessionMatrix& matrix, const WeightConfig& cfg);

struct HistogramBucket {
  double weight = 0.0;
  std::size_t count = 0;
};

// Count of items per distinct weight value, ascending by weight.
std::vector<HistogramBucket> weight_histogram(std::span<const double> weights);

}  // namespace sessionlens
