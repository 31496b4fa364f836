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
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sessionlens/matrix.hpp"

namespace sessionlens {

enum class DistanceMode { kWeighted, kUnweighted };

std::string_view to_string(DistanceMode mode);

struct FcmConfig {
  std::size_t clusters = 2;
  double fuzziness = 2.0;  // q, strictly greater than 1
  double epsilon = 1e-5;   // on max |u_ij - u_ij(prev)|
  std::size_t max_iter = 300;
  std::uint64_t seed = 0;
  DistanceMode mode = DistanceMode::kUnweighted;

  // Throws ConfigError for bad parameters and ClusteringError when
  // clusters > rows.
  void validate(std::size_t rows) const;
};

// Distances below this are treated as exact zeros by the membership update.
inline constexpr double kZeroDistance = 1e-12;

// Retries allowed when a cluster loses all membership mass.
inline constexpr int kMaxReseeds = 3;

// The data as the distance function sees it.
//
// Unweighted: points are the raw rows and every point factor is 1, so
//   d2(i, v) = sum_k (x_ik - v_k)^2.
// Weighted: points are x_ik * w_u(k) and the factor of row i is w_s(i), so
//   d2(i, v) = w_s(i) * sum_k (w_u(k) x_ik - v_k)^2.
// Centers always live in the point space.
class ClusteringSpace {
 public:
  ClusteringSpace(const SessionMatrix& matrix, DistanceMode mode);

  std::size_t rows() const { return points_.rows(); }
  std::size_t cols() const { return points_.cols(); }
  DistanceMode mode() const { return mode_; }

  std::span<const double> point(std::size_t i) const { return points_.row(i); }
  double point_factor(std::size_t i) const { return factors_[i]; }
  const DenseMatrix& points() const { return points_; }

  double distance_sq(std::size_t i, std::span<const double> center) const;

 private:
  DenseMatrix points_;
  std::vector<double> factors_;
  DistanceMode mode_;
};

double distance_sq(const SessionMatrix& matrix, std::size_t row,
                   std::span<const double> center, DistanceMode mode);

// v_j = sum_i a_ij x_i / sum_i a_ij with a_ij = u_ij^q * factor(i). In
// unweighted mode the factor is 1. Throws DegenerateClusterError for a
// cluster whose a-column sums to zero.
DenseMatrix update_centers(const DenseMatrix& memberships, const ClusteringSpace& space,
                           double q);

// u_ij = 1 / sum_k (d2_ij / d2_ik)^(1/(q-1)). A point at zero distance from
// one or more centers splits its membership equally among them.
DenseMatrix update_memberships(const DenseMatrix& centers, const ClusteringSpace& space,
                               double q);

// Membership row for a single point from its squared distances.
std::vector<double> memberships_from_distances(std::span<const double> d2, double q);

// J = sum_j sum_i u_ij^q d2_ij.
double objective(const DenseMatrix& memberships, const DenseMatrix& centers,
                 const ClusteringSpace& space, double q);

struct FcmState {
  DenseMatrix memberships;  // m x c, rows sum to 1
  DenseMatrix centers;      // c x n, in the point space
  std::vector<double> objective_trace;  // J after each iteration since the last re-seed
  std::size_t iterations_run = 0;
  bool converged = false;
  int reseeds = 0;

  double final_objective() const;
  // Index of the largest membership per row (lowest index on ties).
  std::vector<std::size_t> top_clusters() const;
};

// Alternates center and membership updates from c distinct data rows picked
// with the configured seed, until the largest membership change falls below
// epsilon or max_iter is reached.
FcmState run_fcm(const SessionMatrix& matrix, const FcmConfig& cfg);

struct HcmResult {
  std::vector<std::size_t> assignment;
  DenseMatrix centers;
  double objective = 0.0;
  std::size_t iterations = 0;
};

inline constexpr std::size_t kHcmStarts = 10;

// Lloyd iteration: nearest-center assignment (lowest index on ties) and mean
// update until labels stop changing, then single-point transfers while they
// lower the objective. Runs from kHcmStarts seeds (cfg.seed, cfg.seed + 1, ...)
// and keeps the lowest objective, earliest start on ties. Uses the same seeding
// and distance as run_fcm; cfg.fuzziness is ignored.
HcmResult run_hcm(const SessionMatrix& matrix, const FcmConfig& cfg);

// Rows picked as initial centers: a seeded shuffle, preferring rows whose
// values differ from the ones already picked.
std::vector<std::size_t> initial_center_rows(const DenseMatrix& points, std::size_t c,
                                             std::uint64_t seed);

}  // namespace sessionlens
