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

#include "sessionlens/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "sessionlens/error.hpp"

namespace sessionlens {

std::string_view to_string(DistanceMode mode) {
  return mode == DistanceMode::kWeighted ? "weighted" : "unweighted";
}

void FcmConfig::validate(std::size_t rows) const {
  if (clusters < 1) throw ConfigError("cluster count must be at least 1");
  if (!(fuzziness > 1.0) || !std::isfinite(fuzziness))
    throw ConfigError("fuzziness q must be finite and > 1 (use run_hcm for q = 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (clusters > rows)
    throw ClusteringError("c ≤ m violated (c=" + std::to_string(clusters) +
                          ", m=" + std::to_string(rows) + ")");
}

ClusteringSpace::ClusteringSpace(const SessionMatrix& matrix, DistanceMode mode)
    : points_(matrix.data), factors_(matrix.rows(), 1.0), mode_(mode) {
  matrix.check_shape();
  if (mode == DistanceMode::kWeighted) {
    for (std::size_t i = 0; i < points_.rows(); ++i) {
      auto row = points_.row(i);
      for (std::size_t k = 0; k < row.size(); ++k) row[k] *= matrix.col_weights[k];
      factors_[i] = matrix.row_weights[i];
    }
  }
}

double ClusteringSpace::distance_sq(std::size_t i, std::span<const double> center) const {
  const auto x = points_.row(i);
  double sum = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = x[k] - center[k];
    sum += diff * diff;
  }
  return factors_[i] * sum;
}

double distance_sq(const SessionMatrix& matrix, std::size_t row,
                   std::span<const double> center, DistanceMode mode) {
  double sum = 0.0;
  for (std::size_t k = 0; k < matrix.cols(); ++k) {
    const double x = mode == DistanceMode::kWeighted
                         ? matrix.col_weights[k] * matrix.data(row, k)
                         : matrix.data(row, k);
    const double diff = x - center[k];
    sum += diff * diff;
  }
  return mode == DistanceMode::kWeighted ? matrix.row_weights[row] * sum : sum;
}

DenseMatrix update_centers(const DenseMatrix& memberships, const ClusteringSpace& space,
                           double q) {
  const std::size_t m = space.rows();
  const std::size_t n = space.cols();
  const std::size_t c = memberships.cols();
  DenseMatrix centers(c, n);
  std::vector<double> mass(c, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto x = space.point(i);
    for (std::size_t j = 0; j < c; ++j) {
      const double a = std::pow(memberships(i, j), q) * space.point_factor(i);
      if (a == 0.0) continue;
      mass[j] += a;
      auto v = centers.row(j);
      for (std::size_t k = 0; k < n; ++k) v[k] += a * x[k];
    }
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (!(mass[j] > 0.0)) throw DegenerateClusterError(j);
    for (double& v : centers.row(j)) v /= mass[j];
  }
  return centers;
}

std::vector<double> memberships_from_distances(std::span<const double> d2, double q) {
  const std::size_t c = d2.size();
  std::vector<double> u(c, 0.0);

  std::size_t zeros = 0;
  for (double d : d2) zeros += d < kZeroDistance ? 1 : 0;
  if (zeros > 0) {
    for (std::size_t j = 0; j < c; ++j) u[j] = d2[j] < kZeroDistance ? 1.0 / zeros : 0.0;
    return u;
  }

  // (1/d2)^(1/(q-1)) normalized, evaluated in the log domain so small q does
  // not overflow.
  const double e = 1.0 / (q - 1.0);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < c; ++j) {
    u[j] = -e * std::log(d2[j]);
    top = std::max(top, u[j]);
  }
  double sum = 0.0;
  for (double& v : u) {
    v = std::exp(v - top);
    sum += v;
  }
  for (double& v : u) v /= sum;
  return u;
}

DenseMatrix update_memberships(const DenseMatrix& centers, const ClusteringSpace& space,
                               double q) {
  const std::size_t m = space.rows();
  const std::size_t c = centers.rows();
  DenseMatrix u(m, c);
  std::vector<double> d2(c);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < c; ++j) d2[j] = space.distance_sq(i, centers.row(j));
    const auto row = memberships_from_distances(d2, q);
    std::copy(row.begin(), row.end(), u.row(i).begin());
  }
  return u;
}

double objective(const DenseMatrix& memberships, const DenseMatrix& centers,
                 const ClusteringSpace& space, double q) {
  double j_total = 0.0;
  for (std::size_t i = 0; i < space.rows(); ++i) {
    for (std::size_t j = 0; j < centers.rows(); ++j) {
      const double u = memberships(i, j);
      if (u == 0.0) continue;
      j_total += std::pow(u, q) * space.distance_sq(i, centers.row(j));
    }
  }
  return j_total;
}

double FcmState::final_objective() const {
  return objective_trace.empty() ? 0.0 : objective_trace.back();
}

std::vector<std::size_t> FcmState::top_clusters() const {
  std::vector<std::size_t> top(memberships.rows(), 0);
  for (std::size_t i = 0; i < memberships.rows(); ++i) {
    const auto row = memberships.row(i);
    top[i] = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return top;
}

std::vector<std::size_t> initial_center_rows(const DenseMatrix& points, std::size_t c,
                                             std::uint64_t seed) {
  const std::size_t m = points.rows();
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  // Explicit Fisher-Yates on raw engine output keeps the draw identical
  // across standard library implementations.
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (m - i));
    std::swap(order[i], order[j]);
  }

  std::vector<std::size_t> chosen;
  std::vector<bool> taken(m, false);
  auto same_values = [&](std::size_t a, std::size_t b) {
    const auto x = points.row(a);
    const auto y = points.row(b);
    return std::equal(x.begin(), x.end(), y.begin());
  };
  for (std::size_t i : order) {
    if (chosen.size() == c) break;
    if (std::none_of(chosen.begin(), chosen.end(),
                     [&](std::size_t r) { return same_values(r, i); })) {
      chosen.push_back(i);
      taken[i] = true;
    }
  }
  for (std::size_t i : order) {
    if (chosen.size() == c) break;
    if (!taken[i]) {
      chosen.push_back(i);
      taken[i] = true;
    }
  }
  return chosen;
}

namespace {

DenseMatrix rows_as_centers(const ClusteringSpace& space, const std::vector<std::size_t>& rows) {
  DenseMatrix centers(rows.size(), space.cols());
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const auto p = space.point(rows[j]);
    std::copy(p.begin(), p.end(), centers.row(j).begin());
  }
  return centers;
}

// Moves center `j` onto the point farthest from its nearest other center.
void reseed_center(DenseMatrix& centers, std::size_t j, const ClusteringSpace& space) {
  std::size_t best = 0;
  double best_d = -1.0;
  for (std::size_t i = 0; i < space.rows(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < centers.rows(); ++l) {
      if (l == j) continue;
      nearest = std::min(nearest, space.distance_sq(i, centers.row(l)));
    }
    if (nearest > best_d) {
      best_d = nearest;
      best = i;
    }
  }
  const auto p = space.point(best);
  std::copy(p.begin(), p.end(), centers.row(j).begin());
}

std::string reseed_failure(std::size_t j, std::size_t k) {
  return "cluster " + std::to_string(j) + " stayed degenerate after " +
         std::to_string(kMaxReseeds) + " re-seeds (k=" + std::to_string(k) + ")";
}

}  // namespace

FcmState run_fcm(const SessionMatrix& matrix, const FcmConfig& cfg) {
  cfg.validate(matrix.rows());
  const ClusteringSpace space(matrix, cfg.mode);
  const double q = cfg.fuzziness;
  const std::size_t c = cfg.clusters;

  FcmState st;
  st.centers = rows_as_centers(space, initial_center_rows(space.points(), c, cfg.seed));
  st.memberships = update_memberships(st.centers, space, q);

  auto reseed = [&](std::size_t j) {
    if (st.reseeds == kMaxReseeds) throw ClusteringError(reseed_failure(j, c));
    reseed_center(st.centers, j, space);
    st.memberships = update_memberships(st.centers, space, q);
    st.objective_trace.clear();
    ++st.reseeds;
  };

  std::size_t it = 0;
  while (it < cfg.max_iter) {
    try {
      st.centers = update_centers(st.memberships, space, q);
    } catch (const DegenerateClusterError& e) {
      reseed(e.cluster());
      continue;
    }
    DenseMatrix next = update_memberships(st.centers, space, q);
    st.objective_trace.push_back(objective(next, st.centers, space, q));

    double delta = 0.0;
    const auto& prev = st.memberships.values();
    const auto& cur = next.values();
    for (std::size_t x = 0; x < cur.size(); ++x)
      delta = std::max(delta, std::abs(cur[x] - prev[x]));
    st.memberships = std::move(next);
    ++it;

    if (delta < cfg.epsilon) {
      if (c >= 2) {
        std::optional<std::size_t> empty;
        for (std::size_t j = 0; j < c && !empty; ++j) {
          double mass = 0.0;
          for (std::size_t i = 0; i < space.rows(); ++i) mass += st.memberships(i, j);
          if (!(mass > 0.0)) empty = j;
        }
        if (empty) {
          reseed(*empty);
          continue;
        }
      }
      st.converged = true;
      break;
    }
  }
  st.iterations_run = it;
  return st;
}

namespace {

double crisp_objective(const ClusteringSpace& space, const HcmResult& res) {
  double j = 0.0;
  for (std::size_t i = 0; i < space.rows(); ++i)
    j += space.distance_sq(i, res.centers.row(res.assignment[i]));
  return j;
}

// Factor-weighted means of the labelled points; false if a cluster has no mass.
bool crisp_means(const ClusteringSpace& space, const std::vector<std::size_t>& labels,
                 std::size_t c, DenseMatrix& means, std::vector<double>& mass) {
  means = DenseMatrix(c, space.cols());
  mass.assign(c, 0.0);
  for (std::size_t i = 0; i < space.rows(); ++i) {
    const double w = space.point_factor(i);
    mass[labels[i]] += w;
    const auto x = space.point(i);
    auto v = means.row(labels[i]);
    for (std::size_t k = 0; k < x.size(); ++k) v[k] += w * x[k];
  }
  for (std::size_t j = 0; j < c; ++j) {
    if (!(mass[j] > 0.0)) return false;
    for (double& v : means.row(j)) v /= mass[j];
  }
  return true;
}

// Single-point transfers that lower the objective once both means move.
void hartigan_refine(const ClusteringSpace& space, std::size_t c, std::size_t max_passes,
                     HcmResult& res) {
  DenseMatrix means;
  std::vector<double> mass;
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    if (!crisp_means(space, res.assignment, c, means, mass)) return;
    bool moved = false;
    for (std::size_t i = 0; i < space.rows() && !moved; ++i) {
      const double w = space.point_factor(i);
      const std::size_t a = res.assignment[i];
      if (!(w > 0.0) || !(mass[a] - w > 0.0)) continue;
      const double removal = mass[a] / (mass[a] - w) * space.distance_sq(i, means.row(a));
      for (std::size_t b = 0; b < c; ++b) {
        if (b == a) continue;
        const double insertion = mass[b] / (mass[b] + w) * space.distance_sq(i, means.row(b));
        if (insertion < removal - kZeroDistance) {
          res.assignment[i] = b;
          moved = true;
          break;
        }
      }
    }
    if (!moved) break;
  }
  res.centers = std::move(means);
  res.objective = crisp_objective(space, res);
}

HcmResult lloyd(const ClusteringSpace& space, const FcmConfig& cfg, std::uint64_t seed) {
  const std::size_t m = space.rows();
  const std::size_t n = space.cols();
  const std::size_t c = cfg.clusters;

  HcmResult res;
  res.centers = rows_as_centers(space, initial_center_rows(space.points(), c, seed));
  std::vector<std::size_t> labels(m, c);  // c = unassigned
  int reseeds = 0;

  auto nearest = [&](std::size_t i) {
    std::size_t best = 0;
    double best_d = space.distance_sq(i, res.centers.row(0));
    for (std::size_t j = 1; j < c; ++j) {
      const double d = space.distance_sq(i, res.centers.row(j));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    return best;
  };

  std::size_t it = 0;
  while (it < cfg.max_iter) {
    std::vector<std::size_t> next(m);
    for (std::size_t i = 0; i < m; ++i) next[i] = nearest(i);
    ++it;
    if (next == labels) break;
    labels = std::move(next);

    DenseMatrix means(c, n);
    std::vector<double> mass(c, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double w = space.point_factor(i);
      mass[labels[i]] += w;
      const auto x = space.point(i);
      auto v = means.row(labels[i]);
      for (std::size_t k = 0; k < n; ++k) v[k] += w * x[k];
    }
    std::optional<std::size_t> empty;
    for (std::size_t j = 0; j < c; ++j) {
      if (!(mass[j] > 0.0)) {
        empty = j;
        break;
      }
      for (double& v : means.row(j)) v /= mass[j];
    }
    if (empty) {
      if (reseeds == kMaxReseeds) throw ClusteringError(reseed_failure(*empty, c));
      ++reseeds;
      // Take the point worst served by its current center.
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double d = space.distance_sq(i, res.centers.row(labels[i]));
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      const auto p = space.point(far);
      std::copy(p.begin(), p.end(), res.centers.row(*empty).begin());
      labels.assign(m, c);
      continue;
    }
    res.centers = std::move(means);
  }

  if (labels.size() == m && std::find(labels.begin(), labels.end(), c) != labels.end()) {
    for (std::size_t i = 0; i < m; ++i) labels[i] = nearest(i);
  }
  res.assignment = labels;
  res.iterations = it;
  res.objective = crisp_objective(space, res);
  return res;
}

}  // namespace

HcmResult run_hcm(const SessionMatrix& matrix, const FcmConfig& cfg) {
  if (cfg.clusters < 1) throw ConfigError("cluster count must be at least 1");
  if (cfg.max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (cfg.clusters > matrix.rows())
    throw ClusteringError("c ≤ m violated (c=" + std::to_string(cfg.clusters) +
                          ", m=" + std::to_string(matrix.rows()) + ")");
  const ClusteringSpace space(matrix, cfg.mode);

  std::optional<HcmResult> best;
  std::optional<ClusteringError> first_error;
  for (std::size_t start = 0; start < kHcmStarts; ++start) {
    HcmResult res;
    try {
      res = lloyd(space, cfg, cfg.seed + start);
    } catch (const ClusteringError& e) {
      if (!first_error) first_error = e;
      continue;
    }
    hartigan_refine(space, cfg.clusters, cfg.max_iter, res);
    if (!best || res.objective < best->objective) best = std::move(res);
  }
  if (!best) throw *first_error;
  return *best;
}

}  // namespace sessionlens
