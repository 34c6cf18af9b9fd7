// Copyright 2026 The Rolex Authors
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

#include "rolex/clustering.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rolex/errors.hpp"

namespace rolex {
namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();

double squared_distance(const Matrix& A, Eigen::Index i, const Matrix& B,
                        Eigen::Index j) {
  return (A.row(i) - B.row(j)).squaredNorm();
}

Matrix cluster_means(const Matrix& X, const std::vector<std::size_t>& labels,
                     Eigen::Index k, const Matrix& fallback) {
  Matrix sums = Matrix::Zero(k, X.cols());
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    sums.row(static_cast<Eigen::Index>(labels[i])) += X.row(i);
    ++counts[labels[i]];
  }
  for (Eigen::Index c = 0; c < k; ++c) {
    if (counts[c] > 0) {
      sums.row(c) /= static_cast<double>(counts[c]);
    } else {
      sums.row(c) = fallback.row(c);
    }
  }
  return sums;
}

double objective_of(const Matrix& X, const Matrix& centroids,
                    const std::vector<std::size_t>& labels) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    total += squared_distance(X, i, centroids, static_cast<Eigen::Index>(labels[i]));
  }
  return total;
}

template <typename Accept>
ValidatedClustering restart_loop(const Matrix& X, std::size_t k, const Rng& rng,
                                 const ClusterOptions& options,
                                 bool allow_coincident, Accept accept) {
  if (options.max_restarts < 1) {
    throw InvalidArgument("max_restarts must be at least 1");
  }
  const NormalizedRows normalized = normalize_rows(X);
  const Matrix& data = options.normalize ? normalized.rows : X;

  ValidatedClustering best;
  bool have_best = false;
  for (int t = 0; t < options.max_restarts; ++t) {
    Rng stream = rng.split(static_cast<std::uint64_t>(t));
    const Matrix init = kmeans_pp_init(data, k, stream, allow_coincident);
    ValidatedClustering attempt;
    attempt.model = kmeans(data, init, options.max_iter);
    attempt.model.restarts_used = t + 1;
    attempt.validation =
        validate(attempt.model, normalized.rows, options.thresholds);
    if (accept(attempt.validation)) {
      attempt.validation.passed = true;
      return attempt;
    }
    attempt.validation.passed = false;
    if (!have_best || attempt.model.objective < best.model.objective) {
      best = std::move(attempt);
      have_best = true;
    }
  }
  best.model.restarts_used = options.max_restarts;
  return best;
}

}  // namespace

NormalizedRows normalize_rows(const Matrix& X) {
  NormalizedRows out{X, {}};
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const double norm = X.row(i).norm();
    if (norm > 0.0) {
      out.rows.row(i) /= norm;
    } else {
      out.rows.row(i).setZero();
      out.zero_rows.push_back(static_cast<std::size_t>(i));
    }
  }
  return out;
}

Matrix kmeans_pp_init(const Matrix& X, std::size_t k, Rng& rng,
                      bool allow_coincident) {
  const auto n = static_cast<std::size_t>(X.rows());
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (k > n) {
    throw SeedingError("cannot seed " + std::to_string(k) + " clusters from " +
                       std::to_string(n) + " rows");
  }
  Matrix centroids(static_cast<Eigen::Index>(k), X.cols());
  std::vector<bool> chosen(n, false);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());

  auto take = [&](std::size_t idx, std::size_t slot) {
    chosen[idx] = true;
    centroids.row(static_cast<Eigen::Index>(slot)) =
        X.row(static_cast<Eigen::Index>(idx));
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_distance(X, static_cast<Eigen::Index>(i),
                                               centroids,
                                               static_cast<Eigen::Index>(slot)));
    }
  };

  take(rng.below(n), 0);
  for (std::size_t slot = 1; slot < k; ++slot) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += d2[i];
    if (!(total > 0.0)) {
      if (!allow_coincident) {
        throw SeedingError("only " + std::to_string(slot) +
                           " distinct rows available for k = " +
                           std::to_string(k));
      }
      std::vector<std::size_t> unused;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) unused.push_back(i);
      }
      take(unused[rng.below(unused.size())], slot);
      continue;
    }
    const double target = rng.uniform() * total;
    double cumulative = 0.0;
    std::size_t pick = n;
    std::size_t last_positive = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (d2[i] <= 0.0) continue;
      last_positive = i;
      cumulative += d2[i];
      if (cumulative > target) {
        pick = i;
        break;
      }
    }
    take(pick == n ? last_positive : pick, slot);
  }
  return centroids;
}

ClusterModel kmeans(const Matrix& X, const Matrix& init, int max_iter) {
  if (init.cols() != X.cols()) {
    throw DimensionError("initial centroids have " + std::to_string(init.cols()) +
                         " columns, data has " + std::to_string(X.cols()));
  }
  const Eigen::Index n = X.rows();
  const Eigen::Index k = init.rows();
  if (k < 1) throw InvalidArgument("need at least one initial centroid");
  if (n < k) throw InvalidArgument("more centroids than rows");

  Matrix centroids = init;
  std::vector<std::size_t> labels(static_cast<std::size_t>(n), kUnassigned);
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  double previous = std::numeric_limits<double>::infinity();
  ClusterModel model;

  for (int it = 1; it <= max_iter; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = squared_distance(X, i, centroids, 0);
      for (Eigen::Index c = 1; c < k; ++c) {
        const double d = squared_distance(X, i, centroids, c);
        if (d < best_d) {
          best_d = d;
          best = static_cast<std::size_t>(c);
        }
      }
      std::size_t& current = labels[i];
      if (current != kUnassigned && current != best &&
          squared_distance(X, i, centroids, static_cast<Eigen::Index>(current)) <=
              best_d) {
        best = current;
      }
      if (best != current) {
        current = best;
        changed = true;
      }
      dist[i] = best_d;
    }

    // Re-seed empty clusters with the farthest point of a cluster that can
    // spare one.
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t l : labels) ++counts[l];
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      Eigen::Index far = -1;
      double far_d = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[labels[i]] < 2) continue;
        const double d =
            squared_distance(X, i, centroids, static_cast<Eigen::Index>(labels[i]));
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      --counts[labels[far]];
      labels[far] = static_cast<std::size_t>(c);
      ++counts[c];
      centroids.row(c) = X.row(far);
      changed = true;
    }

    centroids = cluster_means(X, labels, k, centroids);
    const double objective = objective_of(X, centroids, labels);
    if (objective > previous + 1e-12 * (1.0 + previous)) {
      throw std::logic_error("k-means objective increased from " +
                             std::to_string(previous) + " to " +
                             std::to_string(objective) + " at iteration " +
                             std::to_string(it));
    }
    previous = objective;
    model.iterations = it;
    if (!changed) break;
  }

  std::vector<Label> final_labels(labels.begin(), labels.end());
  model.centroids = std::move(centroids);
  model.labels = RolePartition(std::move(final_labels), static_cast<std::size_t>(k));
  model.objective = previous;
  model.restarts_used = 1;
  return model;
}

ClusterValidation validate(const ClusterModel& model, const Matrix& X_normalized,
                           const ValidationThresholds& thresholds) {
  if (model.labels.size() != static_cast<std::size_t>(X_normalized.rows())) {
    throw DimensionError("labels do not cover the rows of X");
  }
  const auto k = static_cast<Eigen::Index>(model.labels.cluster_count());
  Matrix directions = Matrix::Zero(k, X_normalized.cols());
  for (Eigen::Index i = 0; i < X_normalized.rows(); ++i) {
    directions.row(model.labels[i]) += X_normalized.row(i);
  }
  std::vector<bool> usable(static_cast<std::size_t>(k), false);
  for (Eigen::Index c = 0; c < k; ++c) {
    const double norm = directions.row(c).norm();
    if (norm > 0.0) {
      directions.row(c) /= norm;
      usable[c] = true;
    }
  }

  ClusterValidation v;
  for (Eigen::Index i = 0; i < X_normalized.rows(); ++i) {
    if (X_normalized.row(i).squaredNorm() == 0.0) continue;
    const double dot = X_normalized.row(i).dot(directions.row(model.labels[i]));
    v.min_within = std::min(v.min_within, dot);
  }
  for (Eigen::Index a = 0; a < k; ++a) {
    if (!usable[a]) continue;
    for (Eigen::Index b = a + 1; b < k; ++b) {
      if (!usable[b]) continue;
      v.max_between = std::max(v.max_between, directions.row(a).dot(directions.row(b)));
    }
  }
  v.passed = v.min_within >= thresholds.within && v.max_between <= thresholds.between;
  return v;
}

ValidatedClustering cluster_validated(const Matrix& X, std::size_t k,
                                      const Rng& rng,
                                      const ClusterOptions& options) {
  return restart_loop(X, k, rng, options, false,
                      [](const ClusterValidation& v) { return v.passed; });
}

ValidatedClustering cluster_colinear(const Matrix& X, std::size_t k,
                                     const Rng& rng,
                                     const ClusterOptions& options) {
  const double within = options.thresholds.within;
  return restart_loop(X, k, rng, options, true,
                      [within](const ClusterValidation& v) {
                        return v.min_within >= within;
                      });
}

}  // namespace rolex
