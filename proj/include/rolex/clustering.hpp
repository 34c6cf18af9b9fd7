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

#pragma once

#include <cstddef>
#include <vector>

#include "rolex/graph.hpp"
#include "rolex/rng.hpp"
#include "rolex/similarity.hpp"

namespace rolex {

struct NormalizedRows {
  Matrix rows;
  std::vector<std::size_t> zero_rows;  // indices left at zero
};

/// Scales every nonzero row of X to unit Euclidean norm.
NormalizedRows normalize_rows(const Matrix& X);

/// k-means++ seeding: first row uniform, then rows drawn with probability
/// proportional to D(x)², the squared distance to the nearest chosen seed.
/// Throws SeedingError when fewer than k distinct rows exist, unless
/// `allow_coincident` is set, in which case exhausted draws fall back to a
/// uniformly chosen unused row.
Matrix kmeans_pp_init(const Matrix& X, std::size_t k, Rng& rng,
                      bool allow_coincident = false);

struct ClusterModel {
  Matrix centroids;  // k x r, mean of each cluster's rows
  RolePartition labels;
  double objective = 0.0;  // sum of squared distances to own centroid
  int iterations = 0;
  int restarts_used = 0;
};

/// Lloyd iterations from `init` until no label changes or `max_iter`.
/// Ties go to the lowest centroid index, except that a point never leaves
/// a centroid that is still among the nearest. An emptied cluster is
/// re-seeded with the point farthest from its centroid. Throws
/// std::logic_error if the objective ever increases.
ClusterModel kmeans(const Matrix& X, const Matrix& init, int max_iter = 300);

struct ValidationThresholds {
  double within = 0.9;
  double between = 0.7;
};

struct ClusterValidation {
  /// Smallest inner product between a nonzero unit row and its unit
  /// centroid; 1 when there is nothing to check.
  double min_within = 1.0;
  /// Largest inner product between two distinct nonzero unit centroids;
  /// -1 when there are fewer than two.
  double max_between = -1.0;
  bool passed = true;
};

/// Angle checks on unit-normalized rows. Centroids are recomputed from
/// `X_normalized` and the model's labels.
ClusterValidation validate(const ClusterModel& model, const Matrix& X_normalized,
                           const ValidationThresholds& thresholds = {});

struct ClusterOptions {
  ValidationThresholds thresholds;
  int max_restarts = 50;
  int max_iter = 300;
  /// Cluster the unit-normalized rows (default) or the raw rows of X.
  bool normalize = true;
};

struct ValidatedClustering {
  ClusterModel model;
  ClusterValidation validation;
};

/// Restarts seeded k-means until validation passes. Restart t seeds from
/// rng.split(t), so the sequence is reproducible and order-independent.
/// Without a passing restart, returns the lowest-objective model.
ValidatedClustering cluster_validated(const Matrix& X, std::size_t k,
                                      const Rng& rng,
                                      const ClusterOptions& options = {});

/// Same loop with only the within-cluster check, used to over-cluster.
ValidatedClustering cluster_colinear(const Matrix& X, std::size_t k,
                                     const Rng& rng,
                                     const ClusterOptions& options = {});

}  // namespace rolex
