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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rolex/clustering.hpp"

namespace rolex {

enum class KMethod { k_moving, hierarchical, svd };

std::string_view to_string(KMethod m) noexcept;
/// Accepts "k_moving", "hierarchical", "svd". Throws InvalidArgument.
KMethod parse_k_method(std::string_view name);

struct KMovingStep {
  std::size_t k = 0;
  bool passed = false;
  double min_within = 0.0;
  double max_between = 0.0;
  std::string note;  // why seeding failed, when it did
};

struct MergeEvent {
  std::size_t kept = 0;    // group index that absorbs
  std::size_t merged = 0;  // group index that is emptied
  double distance = 0.0;   // squared distance between the two centroids
  double cosine = 0.0;     // inner product of their unit directions
};

struct KEstimateResult {
  std::size_t k = 0;  // 0: no acceptable classification
  KMethod method = KMethod::k_moving;

  std::vector<KMovingStep> steps;     // k_moving
  std::size_t subclusters = 0;        // hierarchical
  std::vector<MergeEvent> merges;     // hierarchical
  std::vector<double> singular_values;  // svd
  std::string note;

  /// Clustering at the returned k, when the method produced one.
  std::optional<ValidatedClustering> clustering;
};

struct KEstimateConfig {
  ClusterOptions cluster;
  /// Minimum σ_q / σ_{q+1} for the SVD method.
  double gap_factor = 3.0;
};

/// Tries k = r, r-1, ..., 1 (r = X.cols()) and returns the first k whose
/// validated clustering passes. A k that cannot be seeded counts as failed.
KEstimateResult k_moving(const Matrix& X, const Rng& rng,
                         const KEstimateConfig& cfg = {});

/// Over-clusters into r co-linear sub-clusters, then merges the closest pair
/// of centroids (squared distance, size-weighted mean update) while any two
/// unit centroids have inner product above the between threshold. The final
/// partition is a validated clustering at the surviving count.
KEstimateResult hierarchical_estimate(const Matrix& X, const Rng& rng,
                                      const KEstimateConfig& cfg = {});

/// q = position of the largest ratio σ_q / σ_{q+1} >= gap_factor among
/// q in 1..r-1; r when no ratio qualifies; 0 when all σ coincide.
/// Requires r >= 2.
KEstimateResult svd_estimate(const Matrix& X, double gap_factor = 3.0);

}  // namespace rolex
