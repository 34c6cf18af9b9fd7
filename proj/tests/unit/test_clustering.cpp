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

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "helpers.hpp"
#include "rolex/clustering.hpp"
#include "rolex/errors.hpp"
#include "rolex/eval.hpp"

using namespace rolex;

namespace {

Matrix random_rows(Eigen::Index n, Eigen::Index r, std::uint64_t seed) {
  Rng rng(seed);
  Matrix X(n, r);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) X(i, j) = 2.0 * rng.uniform() - 1.0;
  }
  return X;
}

// Copies of the rows of `basis`, `copies` each, in row-major order.
Matrix repeated(const Matrix& basis, Eigen::Index copies) {
  Matrix X(basis.rows() * copies, basis.cols());
  for (Eigen::Index i = 0; i < X.rows(); ++i) X.row(i) = basis.row(i / copies);
  return X;
}

}  // namespace

TEST_CASE("row normalization") {
  const Matrix X{{3, 4}, {0, 0}, {-1, 0}};
  const NormalizedRows out = normalize_rows(X);
  CHECK(out.rows.row(0).isApprox(Eigen::RowVector2d(0.6, 0.8)));
  CHECK(out.rows.row(1).isZero(0.0));
  CHECK(out.rows.row(2) == Eigen::RowVector2d(-1, 0));
  CHECK(out.zero_rows == std::vector<std::size_t>{1});

  const Matrix Y = normalize_rows(random_rows(200, 5, 4)).rows;
  for (Eigen::Index i = 0; i < Y.rows(); ++i) CHECK(std::abs(Y.row(i).norm() - 1.0) < 1e-12);
}

TEST_CASE("k-means++ seeding") {
  SUBCASE("D² weights") {
    const Matrix X{{0, 0}, {0, 0}, {10, 0}};
    for (std::uint64_t s = 0; s < 50; ++s) {
      Rng rng(s);
      const Matrix C = kmeans_pp_init(X, 2, rng);
      // Whichever row comes first, the other seed is the only row at D > 0.
      CHECK(C.row(0) != C.row(1));
      CHECK(std::set<double>{C(0, 0), C(1, 0)} == std::set<double>{0.0, 10.0});
    }
  }
  SUBCASE("k = 1 picks a row") {
    const Matrix X = random_rows(10, 3, 1);
    Rng rng(5);
    const Matrix C = kmeans_pp_init(X, 1, rng);
    bool found = false;
    for (Eigen::Index i = 0; i < X.rows(); ++i) found = found || X.row(i) == C.row(0);
    CHECK(found);
  }
  SUBCASE("deterministic") {
    const Matrix X = random_rows(50, 4, 2);
    Rng a(9);
    Rng b(9);
    CHECK(kmeans_pp_init(X, 5, a) == kmeans_pp_init(X, 5, b));
  }
  SUBCASE("too few distinct rows") {
    const Matrix X = repeated(Matrix::Identity(2, 2), 5);
    Rng rng(0);
    CHECK_THROWS_AS(kmeans_pp_init(X, 3, rng), SeedingError);
    Rng again(0);
    CHECK(kmeans_pp_init(X, 3, again, true).rows() == 3);
  }
}

TEST_CASE("lloyd iterations") {
  SUBCASE("two separated pairs") {
    const Matrix X{{0, 0}, {0, 2}, {10, 0}, {10, 2}};
    const ClusterModel m = kmeans(X, Matrix{{0, 0}, {10, 0}});
    CHECK(m.labels.labels() == std::vector<Label>{0, 0, 1, 1});
    CHECK(m.objective == doctest::Approx(4.0));
    CHECK(m.centroids.isApprox(Matrix{{0, 1}, {10, 1}}));
  }
  SUBCASE("single cluster") {
    const Matrix X = random_rows(40, 3, 7);
    const ClusterModel m = kmeans(X, X.topRows(1));
    const Eigen::RowVectorXd mean = X.colwise().mean();
    CHECK(m.centroids.row(0).isApprox(mean, 1e-12));
    CHECK(m.objective == doctest::Approx((X.rowwise() - mean).squaredNorm()));
  }
  SUBCASE("duplicates of orthonormal rows") {
    const Matrix X = repeated(Matrix::Identity(4, 4), 6);
    Rng rng(3);
    const ClusterModel m = kmeans(X, kmeans_pp_init(X, 4, rng));
    CHECK(m.objective == 0.0);
    CHECK(m.labels.cluster_count() == 4);
  }
  SUBCASE("no empty clusters") {
    const Matrix X{{0, 0}, {0, 1}, {5, 5}, {5, 6}};
    // A centroid far from every point loses all of them on the first pass.
    const ClusterModel m = kmeans(X, Matrix{{0, 0}, {100, 100}});
    CHECK(m.labels.cluster_count() == 2);
    CHECK(m.objective == doctest::Approx(1.0));
  }
  SUBCASE("row permutation equivariance") {
    const Matrix X = random_rows(60, 3, 11);
    Rng rng(2);
    const Matrix init = kmeans_pp_init(X, 4, rng);
    std::vector<Eigen::Index> order(60);
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());
    std::rotate(order.begin(), order.begin() + 17, order.end());
    Matrix P(60, 3);
    for (Eigen::Index i = 0; i < 60; ++i) P.row(i) = X.row(order[i]);
    const ClusterModel a = kmeans(X, init);
    const ClusterModel b = kmeans(P, init);
    CHECK(std::abs(a.objective - b.objective) < 1e-9);
    std::vector<Label> back(60);
    for (Eigen::Index i = 0; i < 60; ++i) {
      back[static_cast<std::size_t>(order[i])] = b.labels[static_cast<std::size_t>(i)];
    }
    CHECK(nmi(a.labels, RolePartition(back, b.labels.cluster_count())) == 1.0);
  }
}

TEST_CASE("validation") {
  SUBCASE("ideal") {
    const Matrix X = repeated(Matrix::Identity(3, 3), 4);
    const ClusterModel m = kmeans(X, Matrix::Identity(3, 3));
    const ClusterValidation v = validate(m, X);
    CHECK(v.min_within == doctest::Approx(1.0));
    CHECK(v.max_between == doctest::Approx(0.0));
    CHECK(v.passed);
  }
  SUBCASE("over-split identical rows") {
    const Matrix X = Matrix::Constant(6, 2, 1.0 / std::sqrt(2.0));
    ClusterModel m;
    m.labels = RolePartition({0, 0, 0, 1, 1, 1}, 2);
    m.centroids = X.topRows(2);
    const ClusterValidation v = validate(m, X);
    CHECK(v.max_between == doctest::Approx(1.0));
    CHECK_FALSE(v.passed);
  }
  SUBCASE("thresholds are inclusive") {
    const double c = 0.9;
    const double s = std::sqrt(1.0 - c * c);
    // Member at angle acos(0.9) from its centroid direction (1, 0).
    const Matrix X{{1, 0}, {c, s}, {c, -s}};
    ClusterModel m;
    m.labels = RolePartition({0, 0, 0}, 1);
    const ClusterValidation v = validate(m, X);
    CHECK(v.max_between == -1.0);
    CHECK(v.min_within >= 0.9);
    CHECK(v.passed);
  }
  SUBCASE("zero rows are skipped") {
    const Matrix X{{1, 0}, {0, 0}, {0, 1}};
    ClusterModel m;
    m.labels = RolePartition({0, 0, 1}, 2);
    const ClusterValidation v = validate(m, X);
    CHECK(v.min_within == doctest::Approx(1.0));
    CHECK(v.passed);
  }
}

TEST_CASE("validated clustering") {
  SUBCASE("noiseless five-block factor") {
    const auto B = rolex::test::block(
        {{0, 1, 0, 0, 0}, {1, 0, 1, 0, 0}, {1, 0, 0, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 0, 1}});
    const auto p = rolex::test::planted(B, {30, 30, 30, 30, 30}, 1.0, 0.0, 3);
    SimilarityConfig cfg;
    cfg.rank = 5;
    const Matrix X = browet_factor(p.graph, cfg).X;
    for (std::uint64_t s = 0; s < 5; ++s) {
      const ValidatedClustering c = cluster_validated(X, 5, Rng(s));
      CHECK(c.validation.passed);
      CHECK(nmi(c.model.labels, p.truth) == 1.0);
    }
  }
  SUBCASE("ideal data passes at once") {
    const Matrix X = repeated(Matrix::Identity(3, 3), 5);
    const ValidatedClustering c = cluster_validated(X, 3, Rng(1));
    CHECK(c.validation.passed);
    CHECK(c.model.restarts_used == 1);
  }
  SUBCASE("over-specified k never passes") {
    const Matrix X = repeated(Matrix::Identity(3, 3), 5) + 1e-3 * random_rows(15, 3, 4);
    ClusterOptions options;
    options.max_restarts = 20;
    const ValidatedClustering c = cluster_validated(X, 4, Rng(1), options);
    CHECK_FALSE(c.validation.passed);
    CHECK(c.model.restarts_used == 20);
    CHECK(c.model.labels.cluster_count() == 4);
  }
  SUBCASE("reproducible restarts") {
    const Matrix X = random_rows(80, 4, 6);
    const ValidatedClustering a = cluster_validated(X, 3, Rng(12));
    const ValidatedClustering b = cluster_validated(X, 3, Rng(12));
    CHECK(a.model.labels == b.model.labels);
    CHECK(a.model.objective == b.model.objective);
    CHECK(a.model.restarts_used == b.model.restarts_used);
  }
  SUBCASE("colinear check ignores the between threshold") {
    const Matrix X = Matrix::Constant(8, 2, 1.0);
    const ValidatedClustering c = cluster_colinear(X + 1e-6 * random_rows(8, 2, 1), 2, Rng(0));
    CHECK(c.validation.passed);
    CHECK(c.validation.max_between > 0.99);
  }
}
