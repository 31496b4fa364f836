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

#include "sessionlens/validity.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <thread>

#include "sessionlens/error.hpp"

namespace sessionlens {

double xie_beni(const DenseMatrix& memberships, const DenseMatrix& centers,
                const ClusteringSpace& space) {
  const std::size_t c = centers.rows();
  if (c < 2) throw ClusteringError("Xie-Beni index needs at least 2 clusters");

  double separation = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < c; ++l) {
    for (std::size_t k = l + 1; k < c; ++k) {
      const auto a = centers.row(l);
      const auto b = centers.row(k);
      double d = 0.0;
      for (std::size_t x = 0; x < a.size(); ++x) d += (a[x] - b[x]) * (a[x] - b[x]);
      separation = std::min(separation, d);
    }
  }
  if (separation < kMinSeparation) throw ClusteringError("separation collapsed");

  double compactness = 0.0;
  for (std::size_t i = 0; i < space.rows(); ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      const double u = memberships(i, j);
      compactness += u * u * space.distance_sq(i, centers.row(j));
    }
  }
  return compactness / (static_cast<double>(space.rows()) * separation);
}

double xie_beni(const FcmState& state, const SessionMatrix& matrix, DistanceMode mode) {
  return xie_beni(state.memberships, state.centers, ClusteringSpace(matrix, mode));
}

std::string SweepRecord::error_tag() const {
  std::string tag;
  if (!weighted.error.empty()) tag = "weighted: " + weighted.error;
  if (!unweighted.error.empty()) {
    if (!tag.empty()) tag += "; ";
    tag += "unweighted: " + unweighted.error;
  }
  return tag;
}

bool SweepResult::all_failed() const {
  for (const auto& r : records) {
    if (r.weighted.validity || r.unweighted.validity) return false;
  }
  return true;
}

std::optional<std::size_t> best_k(const std::vector<SweepRecord>& records, DistanceMode mode) {
  std::optional<std::size_t> best;
  double best_s = 0.0;
  for (const auto& r : records) {
    const auto& cell = mode == DistanceMode::kWeighted ? r.weighted : r.unweighted;
    if (!cell.validity) continue;
    if (!best || *cell.validity < best_s) {
      best = r.k;
      best_s = *cell.validity;
    }
  }
  return best;
}

std::size_t threads_from_env() {
  const char* v = std::getenv("SESSIONLENS_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0) return 0;
  return static_cast<std::size_t>(n);
}

namespace {

SweepCell run_cell(const SessionMatrix& matrix, FcmConfig cfg, std::size_t k) {
  SweepCell cell;
  cell.attempted = true;
  cfg.clusters = k;
  try {
    const FcmState st = run_fcm(matrix, cfg);
    cell.objective = st.final_objective();
    cell.iterations = st.iterations_run;
    cell.converged = st.converged;
    cell.validity = xie_beni(st, matrix, cfg.mode);
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

}  // namespace

SweepResult sweep(const SessionMatrix& weighted, const SessionMatrix& unweighted,
                  const FcmConfig& base, const SweepOptions& options) {
  if (options.k_min < 2) throw ConfigError("k_min must be >= 2");
  SweepResult res;
  res.k_min = options.k_min;
  res.k_max_weighted = options.k_max.value_or(weighted.rows() / 3);
  res.k_max_unweighted = options.k_max.value_or(unweighted.rows() / 3);
  const std::size_t k_hi = std::max(res.k_max_weighted, res.k_max_unweighted);
  if (k_hi < options.k_min)
    throw ClusteringError("empty cluster-count range: k_min=" + std::to_string(options.k_min) +
                          " exceeds k_max=" + std::to_string(k_hi));

  for (std::size_t k = options.k_min; k <= k_hi; ++k) res.records.push_back(SweepRecord{k, {}, {}});

  struct Task {
    std::size_t record;
    DistanceMode mode;
  };
  std::vector<Task> tasks;
  for (std::size_t r = 0; r < res.records.size(); ++r) {
    const std::size_t k = res.records[r].k;
    if (k <= res.k_max_weighted) tasks.push_back({r, DistanceMode::kWeighted});
    if (k <= res.k_max_unweighted) tasks.push_back({r, DistanceMode::kUnweighted});
  }

  auto execute = [&](const Task& t) {
    FcmConfig cfg = base;
    cfg.mode = t.mode;
    auto& rec = res.records[t.record];
    if (t.mode == DistanceMode::kWeighted) {
      rec.weighted = run_cell(weighted, cfg, rec.k);
    } else {
      rec.unweighted = run_cell(unweighted, cfg, rec.k);
    }
  };

  std::size_t workers = options.threads;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, tasks.size());

  if (workers <= 1) {
    for (const auto& t : tasks) execute(t);
  } else {
    // Each task writes a distinct cell, so workers share only the counter.
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) execute(tasks[t]);
      });
    }
    for (auto& th : pool) th.join();
  }

  res.best_k_weighted = best_k(res.records, DistanceMode::kWeighted);
  res.best_k_unweighted = best_k(res.records, DistanceMode::kUnweighted);
  return res;
}

}  // namespace sessionlens
