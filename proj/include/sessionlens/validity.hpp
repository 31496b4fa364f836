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
#include <optional>
#include <string>
#include <vector>

#include "sessionlens/clustering.hpp"

namespace sessionlens {

// Smallest squared center separation accepted by xie_beni.
inline constexpr double kMinSeparation = 1e-12;

// Xie-Beni index: sum_j sum_i u_ij^2 d2_ij over m * min_{l != k} |v_l - v_k|^2.
// The membership exponent is always 2, whatever q the run used. d2 is the
// distance of the space the run used; separation is measured in that space's
// coordinates. Throws ClusteringError for c < 2 or collapsed separation.
double xie_beni(const DenseMatrix& memberships, const DenseMatrix& centers,
                const ClusteringSpace& space);
double xie_beni(const FcmState& state, const SessionMatrix& matrix, DistanceMode mode);

// One mode at one k.
struct SweepCell {
  bool attempted = false;
  std::optional<double> objective;
  std::optional<double> validity;
  std::size_t iterations = 0;
  bool converged = false;
  std::string error;
};

struct SweepRecord {
  std::size_t k = 0;
  SweepCell weighted;
  SweepCell unweighted;

  // "weighted: <msg>; unweighted: <msg>" for whichever cells failed.
  std::string error_tag() const;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // contiguous k, ascending
  std::size_t k_min = 0;
  std::size_t k_max_weighted = 0;
  std::size_t k_max_unweighted = 0;
  std::optional<std::size_t> best_k_weighted;
  std::optional<std::size_t> best_k_unweighted;

  // True when no attempted cell produced a validity value.
  bool all_failed() const;
};

struct SweepOptions {
  std::size_t k_min = 2;
  // When unset each series stops at floor(m / 3) of its own matrix.
  std::optional<std::size_t> k_max;
  // 0 means one worker per hardware thread.
  std::size_t threads = 1;
};

// Runs weighted FCM on `weighted` and unweighted FCM on `unweighted` for every
// k in range, all with base.seed. A failing (k, mode) run is recorded in its
// cell and never stops the sweep. Results do not depend on the thread count.
SweepResult sweep(const SessionMatrix& weighted, const SessionMatrix& unweighted,
                  const FcmConfig& base, const SweepOptions& options);

// Smallest k attaining the minimal validity of one series.
std::optional<std::size_t> best_k(const std::vector<SweepRecord>& records, DistanceMode mode);

// Worker count from SESSIONLENS_THREADS (unset or invalid means 0 = auto).
std::size_t threads_from_env();

}  // namespace sessionlens
