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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "sessionlens/error.hpp"
#include "testing.hpp"

namespace sessionlens {
namespace {

FcmConfig fcm(std::size_t c, DistanceMode mode = DistanceMode::kUnweighted, double q = 2.0,
              std::uint64_t seed = 1) {
  FcmConfig cfg;
  cfg.clusters = c;
  cfg.fuzziness = q;
  cfg.mode = mode;
  cfg.seed = seed;
  return cfg;
}

SessionMatrix line(const std::vector<double>& xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return SessionMatrix::from_rows(rows);
}

// Cluster labels up to renaming: each label replaced by its first-seen rank.
std::vector<std::size_t> canonical(const std::vector<std::size_t>& labels) {
  std::vector<std::size_t> map;
  std::vector<std::size_t> out;
  for (auto l : labels) {
    auto it = std::find(map.begin(), map.end(), l);
    if (it == map.end()) {
      map.push_back(l);
      it = map.end() - 1;
    }
    out.push_back(static_cast<std::size_t>(it - map.begin()));
  }
  return out;
}

std::vector<std::vector<double>> sorted_centers(const DenseMatrix& v) {
  std::vector<std::vector<double>> out;
  for (std::size_t j = 0; j < v.rows(); ++j) out.emplace_back(v.row(j).begin(), v.row(j).end());
  std::sort(out.begin(), out.end());
  return out;
}

void expect_same_centers(const DenseMatrix& a, const DenseMatrix& b, double tol) {
  const auto x = sorted_centers(a), y = sorted_centers(b);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = 0; k < x[j].size(); ++k) EXPECT_NEAR(x[j][k], y[j][k], tol);
}

TEST(Distance, Examples) {
  const SessionMatrix a = SessionMatrix::from_rows({{1, 0, 1}});
  EXPECT_EQ(distance_sq(a, 0, std::vector<double>{1, 0, 1}, DistanceMode::kUnweighted), 0.0);

  SessionMatrix b = SessionMatrix::from_rows({{1, 0}});
  b.row_weights = {0.5};
  EXPECT_NEAR(distance_sq(b, 0, std::vector<double>{0, 0}, DistanceMode::kWeighted), 0.5, 1e-15);

  SessionMatrix c = SessionMatrix::from_rows({{1, 1}});
  c.col_weights = {0.2, 0.4};
  EXPECT_NEAR(distance_sq(c, 0, std::vector<double>{0, 0}, DistanceMode::kWeighted), 0.2, 1e-15);
  EXPECT_EQ(distance_sq(c, 0, std::vector<double>{0, 0}, DistanceMode::kUnweighted), 2.0);
}

TEST(UpdateCenters, CrispMeans) {
  const ClusteringSpace space(line({0, 2, 4}), DistanceMode::kUnweighted);
  const DenseMatrix u(3, 2, std::vector<double>{1, 0, 1, 0, 0, 1});
  const DenseMatrix v = update_centers(u, space, 2.0);
  EXPECT_DOUBLE_EQ(v(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(v(1, 0), 4.0);
}

TEST(UpdateCenters, SinglePointSplit) {
  const ClusteringSpace space(SessionMatrix::from_rows({{3, -1}}), DistanceMode::kUnweighted);
  const DenseMatrix v = update_centers(DenseMatrix(1, 2, std::vector<double>{0.5, 0.5}), space, 2.0);
  EXPECT_EQ(v(0, 0), 3.0);
  EXPECT_EQ(v(1, 1), -1.0);
}

TEST(UpdateCenters, FuzzyTwoPoints) {
  const ClusteringSpace space(line({0, 1}), DistanceMode::kUnweighted);
  const DenseMatrix u(2, 2, std::vector<double>{0.8, 0.2, 0.2, 0.8});
  const DenseMatrix v = update_centers(u, space, 2.0);
  EXPECT_NEAR(v(0, 0), 0.04 / 0.68, 1e-15);
  EXPECT_NEAR(v(0, 0), 0.0588, 1e-4);
  EXPECT_NEAR(v(1, 0), 0.64 / 0.68, 1e-15);
}

TEST(UpdateCenters, EmptyColumnIsDegenerate) {
  const ClusteringSpace space(line({0, 1}), DistanceMode::kUnweighted);
  const DenseMatrix u(2, 2, std::vector<double>{1, 0, 1, 0});
  try {
    update_centers(u, space, 2.0);
    FAIL();
  } catch (const DegenerateClusterError& e) {
    EXPECT_EQ(e.cluster(), 1u);
  }
}

TEST(Memberships, Examples) {
  auto u = memberships_from_distances(std::vector<double>{1, 1}, 2.0);
  EXPECT_DOUBLE_EQ(u[0], 0.5);
  u = memberships_from_distances(std::vector<double>{1, 3}, 2.0);
  EXPECT_NEAR(u[0], 0.75, 1e-15);
  EXPECT_NEAR(u[1], 0.25, 1e-15);
  u = memberships_from_distances(std::vector<double>{0, 5}, 2.0);
  EXPECT_EQ(u, (std::vector<double>{1, 0}));
  u = memberships_from_distances(std::vector<double>{0, 5, 1e-13}, 2.0);
  EXPECT_EQ(u, (std::vector<double>{0.5, 0, 0.5}));
}

TEST(Memberships, ExtremeRatiosStayFinite) {
  const auto u = memberships_from_distances(std::vector<double>{1e-300, 1e300, 1.0}, 1.05);
  double sum = 0.0;
  for (double x : u) {
    EXPECT_TRUE(std::isfinite(x));
    sum += x;
  }
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_NEAR(u[0], 1.0, 1e-12);
}

TEST(Objective, Examples) {
  const ClusteringSpace space(line({0, 2}), DistanceMode::kUnweighted);
  const DenseMatrix crisp(2, 2, std::vector<double>{1, 0, 0, 1});
  EXPECT_EQ(objective(crisp, DenseMatrix(2, 1, std::vector<double>{0, 2}), space, 2.0), 0.0);

  const ClusteringSpace one(line({2}), DistanceMode::kUnweighted);
  EXPECT_EQ(objective(DenseMatrix(1, 1, 1.0), DenseMatrix(1, 1, 0.0), one, 2.0), 4.0);

  // Points 0 and 1 with centers at 0.5 and 1.5: d2 = (0.25, 2.25) and (0.25, 0.25).
  const ClusteringSpace pts(line({0, 1}), DistanceMode::kUnweighted);
  const DenseMatrix v(2, 1, std::vector<double>{0.5, 1.5});
  const DenseMatrix u = update_memberships(v, pts, 2.0);
  EXPECT_NEAR(u(0, 0), 0.9, 1e-15);
  EXPECT_NEAR(u(1, 0), 0.5, 1e-15);
  const double hand = 0.81 * 0.25 + 0.01 * 2.25 + 0.25 * 0.25 + 0.25 * 0.25;
  EXPECT_NEAR(objective(u, v, pts, 2.0), hand, 1e-15);
}

TEST(RunFcm, TwoBlobsRecoverTruth) {
  std::mt19937_64 rng(2);
  std::vector<std::size_t> labels;
  const std::vector<std::vector<double>> truth = {{0, 0}, {10, 10}};
  const SessionMatrix m = testing::blobs(rng, truth, 5, 0.5, &labels);
  const FcmState st = run_fcm(m, fcm(2));
  ASSERT_TRUE(st.converged);
  EXPECT_EQ(canonical(st.top_clusters()), canonical(labels));

  std::vector<std::vector<double>> means(2, std::vector<double>(2, 0.0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < 2; ++k) means[labels[i]][k] += m.data(i, k) / 5.0;
  const auto centers = sorted_centers(st.centers);
  std::sort(means.begin(), means.end());
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(centers[j][k], means[j][k], 0.05);
}

TEST(RunFcm, SingleClusterIsTheGrandMean) {
  const SessionMatrix m = SessionMatrix::from_rows({{0, 1}, {2, 3}, {4, 8}});
  const FcmState st = run_fcm(m, fcm(1));
  EXPECT_TRUE(st.converged);
  EXPECT_NEAR(st.centers(0, 0), 2.0, 1e-12);
  EXPECT_NEAR(st.centers(0, 1), 4.0, 1e-12);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(st.memberships(i, 0), 1.0);
}

TEST(RunFcm, SingleClusterWeightedMean) {
  SessionMatrix m = SessionMatrix::from_rows({{0}, {3}});
  m.row_weights = {1.0, 0.5};
  const FcmState st = run_fcm(m, fcm(1, DistanceMode::kWeighted));
  EXPECT_NEAR(st.centers(0, 0), 1.0, 1e-12);
}

TEST(RunFcm, DuplicationInvariance) {
  std::mt19937_64 rng(3);
  const SessionMatrix m = testing::blobs(rng, {{0, 0, 0}, {5, 5, 0}}, 6, 1.0);
  std::vector<std::vector<double>> doubled;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    doubled.emplace_back(m.data.row(i).begin(), m.data.row(i).end());
    doubled.emplace_back(m.data.row(i).begin(), m.data.row(i).end());
  }
  FcmConfig cfg = fcm(2);
  cfg.epsilon = 1e-10;
  const FcmState a = run_fcm(m, cfg);
  const FcmState b = run_fcm(SessionMatrix::from_rows(doubled), cfg);
  expect_same_centers(a.centers, b.centers, 1e-7);
}

TEST(RunFcm, PermutationInvariance) {
  std::mt19937_64 rng(4);
  const SessionMatrix m = testing::blobs(rng, {{0, 0}, {6, 0}, {0, 6}}, 7, 1.0);
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<double>> rows;
  for (auto p : perm) rows.emplace_back(m.data.row(p).begin(), m.data.row(p).end());

  FcmConfig cfg = fcm(3);
  cfg.epsilon = 1e-10;
  const FcmState a = run_fcm(m, cfg);
  const FcmState b = run_fcm(SessionMatrix::from_rows(rows), cfg);
  expect_same_centers(a.centers, b.centers, 1e-7);
  EXPECT_NEAR(testing::rel_diff(a.final_objective(), b.final_objective()), 0.0, 1e-9);
  // Row p of the original equals row i of the permuted run up to cluster renaming.
  std::vector<std::size_t> la, lb = b.top_clusters();
  const auto top = a.top_clusters();
  for (auto p : perm) la.push_back(top[p]);
  EXPECT_EQ(canonical(la), canonical(lb));
}

TEST(RunFcm, FixedSeedIsBitIdentical) {
  std::mt19937_64 rng(5);
  SessionMatrix m = SessionMatrix::from_dense(testing::random_binary(rng, 30, 8));
  for (auto& w : m.row_weights) w = testing::uniform(rng, 0.1, 1.0);
  for (auto& w : m.col_weights) w = testing::uniform(rng, 0.1, 1.0);
  for (auto mode : {DistanceMode::kWeighted, DistanceMode::kUnweighted}) {
    const FcmState a = run_fcm(m, fcm(4, mode, 2.0, 77));
    const FcmState b = run_fcm(m, fcm(4, mode, 2.0, 77));
    EXPECT_EQ(a.objective_trace, b.objective_trace);
    EXPECT_EQ(a.centers, b.centers);
    EXPECT_EQ(a.memberships, b.memberships);
  }
}

TEST(RunFcm, InvariantsOnRandomData) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = testing::pick(rng, 3, 25), n = testing::pick(rng, 1, 6);
    SessionMatrix matrix = SessionMatrix::from_dense(
        trial % 2 ? testing::random_binary(rng, m, n) : testing::random_dense(rng, m, n, -3, 3));
    for (auto& w : matrix.row_weights) w = testing::uniform(rng, 0.05, 1.0);
    for (auto& w : matrix.col_weights) w = testing::uniform(rng, 0.05, 1.0);
    const std::size_t c = testing::pick(rng, 2, std::min<std::size_t>(m, 5));
    const DistanceMode mode = trial % 3 ? DistanceMode::kWeighted : DistanceMode::kUnweighted;
    FcmState st;
    try {
      st = run_fcm(matrix, fcm(c, mode, testing::uniform(rng, 1.3, 3.0), trial));
    } catch (const ClusteringError&) {
      continue;  // binary data with fewer distinct rows than c
    }
    for (std::size_t i = 0; i < m; ++i) {
      double sum = 0.0;
      for (double u : st.memberships.row(i)) {
        EXPECT_GE(u, 0.0);
        sum += u;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }
    for (std::size_t t = 1; t < st.objective_trace.size(); ++t)
      EXPECT_LE(st.objective_trace[t], st.objective_trace[t - 1] + 1e-9) << "trial " << trial;
    if (st.converged) {
      for (std::size_t j = 0; j < c; ++j) {
        double mass = 0.0;
        for (std::size_t i = 0; i < m; ++i) mass += st.memberships(i, j);
        EXPECT_GT(mass, 0.0);
        EXPECT_LT(mass, static_cast<double>(m));
      }
    }
  }
}

TEST(RunFcm, RejectsBadConfig) {
  const SessionMatrix m = line({0, 1, 2});
  try {
    run_fcm(m, fcm(4));
    FAIL();
  } catch (const ClusteringError& e) {
    EXPECT_NE(std::string(e.what()).find("c ≤ m violated"), std::string::npos);
  }
  EXPECT_THROW(run_fcm(m, fcm(2, DistanceMode::kUnweighted, 1.0)), ConfigError);
  EXPECT_THROW(run_fcm(m, fcm(0)), ConfigError);
}

TEST(RunFcm, IdenticalRowsSplitEvenly) {
  const SessionMatrix m = SessionMatrix::from_rows({{1, 1}, {1, 1}, {1, 1}});
  const FcmState st = run_fcm(m, fcm(2));
  // Coincident centers split every point evenly; nothing is degenerate.
  EXPECT_NEAR(st.memberships(0, 0), 0.5, 1e-12);
}

// Exhaustive minimum of the within-cluster sum of squares over 2-partitions.
double best_two_partition(const std::vector<std::vector<double>>& pts) {
  const std::size_t m = pts.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << m); ++mask) {
    double j = 0.0;
    for (int side = 0; side < 2; ++side) {
      std::vector<double> mean(pts[0].size(), 0.0);
      std::size_t count = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (((mask >> i) & 1) != static_cast<std::size_t>(side)) continue;
        ++count;
        for (std::size_t k = 0; k < mean.size(); ++k) mean[k] += pts[i][k];
      }
      for (double& v : mean) v /= static_cast<double>(count);
      for (std::size_t i = 0; i < m; ++i) {
        if (((mask >> i) & 1) != static_cast<std::size_t>(side)) continue;
        for (std::size_t k = 0; k < mean.size(); ++k) j += (pts[i][k] - mean[k]) * (pts[i][k] - mean[k]);
      }
    }
    best = std::min(best, j);
  }
  return best;
}

TEST(RunHcm, FourPointExample) {
  const HcmResult r = run_hcm(line({0, 1, 9, 10}), fcm(2));
  EXPECT_EQ(canonical(r.assignment), (std::vector<std::size_t>{0, 0, 1, 1}));
  const auto centers = sorted_centers(r.centers);
  EXPECT_DOUBLE_EQ(centers[0][0], 0.5);
  EXPECT_DOUBLE_EQ(centers[1][0], 9.5);
  EXPECT_DOUBLE_EQ(r.objective, 1.0);
  EXPECT_DOUBLE_EQ(best_two_partition({{0}, {1}, {9}, {10}}), 1.0);
}

TEST(RunHcm, EveryPointItsOwnCenter) {
  const HcmResult r = run_hcm(line({0, 3, 7, 8}), fcm(4));
  EXPECT_EQ(r.objective, 0.0);
  std::vector<std::size_t> sorted = r.assignment;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(RunHcm, MatchesExhaustiveOracleAndNearCrispFcm) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = testing::pick(rng, 4, 6);
    const std::size_t dim = testing::pick(rng, 1, 3);
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> p(dim);
      const double offset = i < m / 2 ? 0.0 : 20.0;
      for (double& v : p) v = offset + testing::uniform(rng, -2, 2);
      pts.push_back(p);
    }
    const SessionMatrix matrix = SessionMatrix::from_rows(pts);
    const HcmResult h = run_hcm(matrix, fcm(2, DistanceMode::kUnweighted, 2.0, trial));
    EXPECT_NEAR(h.objective, best_two_partition(pts), 1e-9);

    FcmConfig near_crisp = fcm(2, DistanceMode::kUnweighted, 1.05, trial);
    near_crisp.epsilon = 1e-9;
    const FcmState f = run_fcm(matrix, near_crisp);
    EXPECT_EQ(canonical(f.top_clusters()), canonical(h.assignment));
  }
  const FcmState f = run_fcm(line({0, 1, 9, 10}), fcm(2, DistanceMode::kUnweighted, 1.05));
  EXPECT_EQ(canonical(f.top_clusters()), (std::vector<std::size_t>{0, 0, 1, 1}));
}

TEST(RunHcm, EscapesLloydFixedPoint) {
  // {4.148} against the rest is stable under nearest-center reassignment.
  const std::vector<double> xs = {-2.290, 0.840, 1.397, 4.148, -2.437, 1.212};
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const HcmResult r = run_hcm(line(xs), fcm(2, DistanceMode::kUnweighted, 2.0, seed));
    EXPECT_NEAR(r.objective, best_two_partition(pts), 1e-9);
    EXPECT_EQ(canonical(r.assignment), (std::vector<std::size_t>{0, 1, 1, 1, 0, 1}));
  }
}

// Objective of a crisp labelling with factor-weighted means, computed from the raw matrix.
double crisp_cost(const SessionMatrix& x, DistanceMode mode, const std::vector<std::size_t>& labels,
                  std::size_t c) {
  const bool weighted = mode == DistanceMode::kWeighted;
  const std::size_t n = x.cols();
  std::vector<std::vector<double>> sum(c, std::vector<double>(n, 0.0));
  std::vector<double> mass(c, 0.0);
  auto coord = [&](std::size_t i, std::size_t k) {
    return weighted ? x.col_weights[k] * x.data(i, k) : x.data(i, k);
  };
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double w = weighted ? x.row_weights[i] : 1.0;
    mass[labels[i]] += w;
    for (std::size_t k = 0; k < n; ++k) sum[labels[i]][k] += w * coord(i, k);
  }
  double j = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double w = weighted ? x.row_weights[i] : 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = coord(i, k) - sum[labels[i]][k] / mass[labels[i]];
      j += w * d * d;
    }
  }
  return j;
}

TEST(RunHcm, NoSinglePointTransferImproves) {
  std::mt19937_64 rng(71);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t m = testing::pick(rng, 4, 30), n = testing::pick(rng, 1, 4);
    SessionMatrix x = SessionMatrix::from_dense(testing::random_dense(rng, m, n, -5, 5));
    for (auto& w : x.row_weights) w = testing::uniform(rng, 0.05, 1.0);
    for (auto& w : x.col_weights) w = testing::uniform(rng, 0.05, 1.0);
    const std::size_t c = testing::pick(rng, 2, std::min<std::size_t>(m - 1, 5));
    const DistanceMode mode = trial % 2 ? DistanceMode::kWeighted : DistanceMode::kUnweighted;
    const HcmResult r = run_hcm(x, fcm(c, mode, 2.0, trial));
    const double base = crisp_cost(x, mode, r.assignment, c);
    EXPECT_NEAR(r.objective, base, 1e-9 * std::max(1.0, base)) << "trial " << trial;
    std::vector<std::size_t> sizes(c, 0);
    for (auto l : r.assignment) ++sizes[l];
    for (std::size_t i = 0; i < m; ++i) {
      if (sizes[r.assignment[i]] == 1) continue;
      for (std::size_t b = 0; b < c; ++b) {
        if (b == r.assignment[i]) continue;
        std::vector<std::size_t> moved = r.assignment;
        moved[i] = b;
        EXPECT_GE(crisp_cost(x, mode, moved, c), base - 1e-9) << "trial " << trial;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

// FCM objective at q = 2 of the memberships induced by a crisp partition's means.
double partition_objective(const std::vector<std::vector<double>>& pts, std::size_t mask) {
  const std::size_t n = pts[0].size();
  std::vector<std::vector<double>> centers(2, std::vector<double>(n, 0.0));
  std::size_t count[2] = {0, 0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t s = (mask >> i) & 1;
    ++count[s];
    for (std::size_t k = 0; k < n; ++k) centers[s][k] += pts[i][k];
  }
  for (int s = 0; s < 2; ++s)
    for (double& v : centers[s]) v /= static_cast<double>(count[s]);
  double j = 0.0;
  for (const auto& p : pts) {
    double d[2];
    for (int s = 0; s < 2; ++s) {
      d[s] = 0.0;
      for (std::size_t k = 0; k < n; ++k) d[s] += (p[k] - centers[s][k]) * (p[k] - centers[s][k]);
    }
    double u[2];
    if (d[0] < 1e-12 || d[1] < 1e-12) {
      const bool z0 = d[0] < 1e-12, z1 = d[1] < 1e-12;
      u[0] = z0 ? (z1 ? 0.5 : 1.0) : 0.0;
      u[1] = z1 ? (z0 ? 0.5 : 1.0) : 0.0;
    } else {
      u[0] = (1.0 / d[0]) / (1.0 / d[0] + 1.0 / d[1]);
      u[1] = 1.0 - u[0];
    }
    j += u[0] * u[0] * d[0] + u[1] * u[1] * d[1];
  }
  return j;
}

TEST(RunFcm, SmallInstanceOracle) {
  std::mt19937_64 rng(8);
  int checked = 0;
  while (checked < 40) {
    const std::size_t m = testing::pick(rng, 3, 6);
    const DenseMatrix d = testing::random_binary(rng, m, 3);
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < m; ++i) pts.emplace_back(d.row(i).begin(), d.row(i).end());
    if (std::all_of(pts.begin(), pts.end(), [&](const auto& p) { return p == pts[0]; })) continue;

    double oracle = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << m); ++mask)
      oracle = std::min(oracle, partition_objective(pts, mask));

    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      FcmConfig cfg = fcm(2, DistanceMode::kUnweighted, 2.0, seed);
      cfg.epsilon = 1e-10;
      cfg.max_iter = 2000;
      best = std::min(best, run_fcm(SessionMatrix::from_rows(pts), cfg).final_objective());
    }
    EXPECT_LE(best, oracle + 1e-9);
    ++checked;
  }
}

TEST(FixedU, WeightedObjectiveNeverExceedsUnweighted) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = testing::pick(rng, 2, 20), n = testing::pick(rng, 1, 6);
    const std::size_t c = testing::pick(rng, 1, std::min<std::size_t>(m, 4));
    SessionMatrix matrix = SessionMatrix::from_dense(testing::random_binary(rng, m, n));
    for (auto& w : matrix.row_weights) w = testing::uniform(rng, 0.0, 1.0);
    for (auto& w : matrix.col_weights) w = testing::uniform(rng, 0.0, 1.0);
    const DenseMatrix u = testing::random_memberships(rng, m, c);
    const double q = testing::uniform(rng, 1.1, 3.0);

    const ClusteringSpace ws(matrix, DistanceMode::kWeighted);
    const ClusteringSpace us(matrix, DistanceMode::kUnweighted);
    const double jw = objective(u, update_centers(u, ws, q), ws, q);
    const double ju = objective(u, update_centers(u, us, q), us, q);
    EXPECT_LE(jw, ju + 1e-12) << "trial " << trial;
  }
}

TEST(InitialCenters, DistinctValuesPreferred) {
  const DenseMatrix pts(4, 1, std::vector<double>{1, 1, 1, 2});
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rows = initial_center_rows(pts, 2, seed);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_NE(pts(rows[0], 0), pts(rows[1], 0));
  }
}

}  // namespace
}  // namespace sessionlens
