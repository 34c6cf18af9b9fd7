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

#include "rolex/k_estimate.hpp"

#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "rolex/errors.hpp"

namespace rolex {

std::string_view to_string(KMethod m) noexcept {
  switch (m) {
    case KMethod::k_moving:
      return "k_moving";
    case KMethod::hierarchical:
      return "hierarchical";
    case KMethod::svd:
      return "svd";
  }
  return "unknown";
}

KMethod parse_k_method(std::string_view name) {
  if (name == "k_moving") return KMethod::k_moving;
  if (name == "hierarchical") return KMethod::hierarchical;
  if (name == "svd") return KMethod::svd;
  throw InvalidArgument("unknown k estimation method '" + std::string(name) +
                        "' (expected k_moving, hierarchical or svd)");
}

KEstimateResult k_moving(const Matrix& X, const Rng& rng,
                         const KEstimateConfig& cfg) {
  const auto r = static_cast<std::size_t>(X.cols());
  if (r < 1) throw InvalidArgument("k_moving needs a factor with r >= 1");

  KEstimateResult result;
  result.method = KMethod::k_moving;
  for (std::size_t k = r; k >= 1; --k) {
    KMovingStep step;
    step.k = k;
    try {
      auto clustering = cluster_validated(X, k, rng.split(k), cfg.cluster);
      step.passed = clustering.validation.passed;
      step.min_within = clustering.validation.min_within;
      step.max_between = clustering.validation.max_between;
      result.steps.push_back(step);
      if (step.passed) {
        result.k = k;
        result.clustering = std::move(clustering);
        return result;
      }
    } catch (const SeedingError& e) {
      step.note = e.what();
      result.steps.push_back(step);
    }
  }
  result.note = "no k in 1..r passed validation";
  return result;
}

KEstimateResult hierarchical_estimate(const Matrix& X, const Rng& rng,
                                      const KEstimateConfig& cfg) {
  const auto r = static_cast<std::size_t>(X.cols());
  if (r < 1) throw InvalidArgument("hierarchical_estimate needs r >= 1");
  if (static_cast<std::size_t>(X.rows()) < r) {
    throw InvalidArgument("fewer rows than sub-clusters");
  }

  KEstimateResult result;
  result.method = KMethod::hierarchical;

  const auto sub = cluster_colinear(X, r, rng.split(0), cfg.cluster);
  const Matrix& data =
      cfg.cluster.normalize ? normalize_rows(X).rows : X;
  const auto sizes = sub.model.labels.cluster_sizes();
  result.subclusters = r;

  std::vector<Eigen::RowVectorXd> centroid(r);
  std::vector<double> weight(r);
  std::vector<bool> alive(r, true);
  for (std::size_t c = 0; c < r; ++c) {
    centroid[c] = Eigen::RowVectorXd::Zero(data.cols());
    weight[c] = static_cast<double>(sizes[c]);
  }
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    centroid[sub.model.labels[i]] += data.row(i);
  }
  for (std::size_t c = 0; c < r; ++c) {
    if (weight[c] > 0.0) centroid[c] /= weight[c];
  }

  const auto cosine = [&](std::size_t a, std::size_t b) {
    const double na = centroid[a].norm();
    const double nb = centroid[b].norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return centroid[a].dot(centroid[b]) / (na * nb);
  };

  std::size_t groups = r;
  while (groups > 1) {
    bool collinear = false;
    std::size_t best_a = 0;
    std::size_t best_b = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < r; ++a) {
      if (!alive[a]) continue;
      for (std::size_t b = a + 1; b < r; ++b) {
        if (!alive[b]) continue;
        if (cosine(a, b) > cfg.cluster.thresholds.between) collinear = true;
        const double d = (centroid[a] - centroid[b]).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (!collinear) break;

    result.merges.push_back({best_a, best_b, best_d, cosine(best_a, best_b)});
    const double total = weight[best_a] + weight[best_b];
    centroid[best_a] =
        (weight[best_a] * centroid[best_a] + weight[best_b] * centroid[best_b]) /
        total;
    weight[best_a] = total;
    alive[best_b] = false;
    --groups;
  }

  result.k = groups;
  try {
    result.clustering = cluster_validated(X, groups, rng.split(1), cfg.cluster);
  } catch (const SeedingError& e) {
    result.note = e.what();
  }
  return result;
}

KEstimateResult svd_estimate(const Matrix& X, double gap_factor) {
  const Eigen::Index r = X.cols();
  if (r < 2) throw InvalidArgument("svd_estimate needs r >= 2");
  if (!(gap_factor > 1.0)) throw InvalidArgument("gap_factor must exceed 1");

  KEstimateResult result;
  result.method = KMethod::svd;
  const Eigen::JacobiSVD<Matrix> svd(X);
  const Vector sigma = svd.singularValues();
  result.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  // For n < r the trailing singular values are exactly zero.
  result.singular_values.resize(static_cast<std::size_t>(r), 0.0);

  const auto& s = result.singular_values;
  const double top = s.front();
  if (top - s.back() <= 1e-12 * std::max(1.0, top)) {
    result.k = 0;
    result.note = "all singular values coincide; no gap";
    return result;
  }

  double best_ratio = 0.0;
  std::size_t best_q = 0;
  for (std::size_t q = 1; q < s.size(); ++q) {
    const double upper = s[q - 1];
    const double lower = s[q];
    if (upper <= 0.0) break;
    const double ratio = lower > 0.0 ? upper / lower
                                     : std::numeric_limits<double>::infinity();
    if (ratio >= gap_factor && ratio >= best_ratio) {
      best_ratio = ratio;
      best_q = q;
    }
  }
  if (best_q == 0) {
    result.k = static_cast<std::size_t>(r);
    result.note = "no ratio reaches gap_factor; keeping q = r";
  } else {
    result.k = best_q;
  }
  return result;
}

}  // namespace rolex
