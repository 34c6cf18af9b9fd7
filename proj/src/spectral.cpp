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

#include "spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "rolex/rng.hpp"

namespace rolex::detail {
namespace {

Matrix orthonormal_basis(const Matrix& Z) {
  Eigen::HouseholderQR<Matrix> qr(Z);
  return qr.householderQ() * Matrix::Identity(Z.rows(), Z.cols());
}

// T_d of the operator mapped so that [0, high] goes to [-1, 1]: that part of
// the spectrum stays bounded while everything above it grows like
// cosh(d·acosh(x)), far faster than plain powers for clustered eigenvalues.
Matrix chebyshev_filter(const BlockOperator& apply, const Matrix& V, int degree,
                        double high) {
  const double half = 0.5 * high;
  Matrix previous = V;
  Matrix current = (apply(V) - half * V) / half;
  for (int d = 2; d <= degree; ++d) {
    Matrix next = 2.0 * (apply(current) - half * current) / half - previous;
    previous = std::move(current);
    current = std::move(next);
  }
  return current;
}

// Largest degree that keeps the top direction within ~1e8 of the damped
// ones, so that re-orthonormalization loses nothing that matters.
int filter_degree(double top, double high) {
  const double x = 2.0 * top / high - 1.0;
  if (!(x > 1.0)) return 1;
  const double growth = std::log(2.0 * x + 1.0);
  return std::clamp(static_cast<int>(std::log(2e8) / growth), 1, 10);
}

}  // namespace

EigenPairs top_eigenpairs(std::size_t n, std::size_t count,
                          const BlockOperator& apply,
                          const SubspaceOptions& options) {
  EigenPairs result;
  count = std::min(count, n);
  result.vectors = Matrix::Zero(static_cast<Eigen::Index>(n),
                                static_cast<Eigen::Index>(count));
  result.values = Vector::Zero(static_cast<Eigen::Index>(count));
  if (count == 0) return result;

  const auto rows = static_cast<Eigen::Index>(n);
  const auto block =
      static_cast<Eigen::Index>(std::min(n, std::max(2 * count, count + 16)));
  const auto wanted = static_cast<Eigen::Index>(count);

  Rng rng(options.seed);
  Matrix start(rows, block);
  for (Eigen::Index c = 0; c < block; ++c) {
    for (Eigen::Index i = 0; i < rows; ++i) start(i, c) = 2.0 * rng.uniform() - 1.0;
  }
  Matrix Q = orthonormal_basis(start);

  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    const Matrix Z = apply(Q);
    Matrix T = Q.transpose() * Z;
    T = 0.5 * (T + T.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> eig(T);
    // Ascending order from Eigen; reverse into decreasing.
    const Matrix W = eig.eigenvectors().rowwise().reverse();
    const Vector lambda = eig.eigenvalues().reverse();

    const double top = std::max(lambda(0), 0.0);
    result.sweeps = sweep;
    const Matrix ritz = Q * W.leftCols(wanted);
    for (Eigen::Index c = 0; c < wanted; ++c) {
      result.values(c) = std::max(lambda(c), 0.0);
    }
    result.vectors = ritz;

    if (top == 0.0 || block == rows) break;

    const Matrix residual =
        Z * W.leftCols(wanted) - ritz * lambda.head(wanted).asDiagonal();
    const Vector norms = residual.colwise().norm().transpose();
    const bool converged =
        options.accept ? options.accept(result.values, norms)
                       : norms.maxCoeff() <= options.residual_tol * top;
    if (converged) break;

    const double floor_value = lambda(block - 1);
    if (floor_value > 1e-8 * top) {
      Q = orthonormal_basis(
          chebyshev_filter(apply, Q * W, filter_degree(top, floor_value), floor_value));
    } else {
      Q = orthonormal_basis(Z * W);
    }
  }
  return result;
}

Matrix concat_gram_apply(const DirectedGraph& g, const Vector& out_scale,
                         const Vector& in_scale, const Matrix& V) {
  const auto scale = [](const Vector& s, const Matrix& M) -> Matrix {
    if (s.size() == 0) return M;
    return s.asDiagonal() * M;
  };
  Matrix children_part =
      scale(out_scale,
            multiply_adjacency(g, multiply_adjacency_transposed(g, scale(out_scale, V))));
  Matrix parents_part =
      scale(in_scale,
            multiply_adjacency_transposed(g, multiply_adjacency(g, scale(in_scale, V))));
  return children_part + parents_part;
}

Matrix factor_from_pairs(const EigenPairs& pairs, std::size_t rank) {
  const auto cols = static_cast<Eigen::Index>(rank);
  Matrix X = Matrix::Zero(pairs.vectors.rows(), cols);
  const Eigen::Index filled = std::min(cols, pairs.values.size());
  // Eigenvalues at round-off level are zeros; their square roots would not be.
  const double noise = filled > 0 ? 1e-13 * pairs.values(0) : 0.0;
  for (Eigen::Index c = 0; c < filled; ++c) {
    if (pairs.values(c) <= noise) break;
    X.col(c) = pairs.vectors.col(c) * std::sqrt(pairs.values(c));
  }
  return X;
}

EigenPairs concat_eigenpairs(const DirectedGraph& g, const Vector& out_scale,
                             const Vector& in_scale, std::size_t count,
                             const SubspaceOptions& options) {
  return top_eigenpairs(
      g.node_count(), count,
      [&](const Matrix& V) { return concat_gram_apply(g, out_scale, in_scale, V); },
      options);
}

Matrix concat_factor(const DirectedGraph& g, const Vector& out_scale,
                     const Vector& in_scale, std::size_t rank) {
  return factor_from_pairs(concat_eigenpairs(g, out_scale, in_scale, rank), rank);
}

}  // namespace rolex::detail
