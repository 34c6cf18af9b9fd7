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

#include "rolex/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "rolex/errors.hpp"
#include "spectral.hpp"

namespace rolex {

std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::browet:
      return "browet";
    case Measure::salton:
      return "salton";
  }
  return "unknown";
}

Measure parse_measure(std::string_view name) {
  if (name == "browet") return Measure::browet;
  if (name == "salton") return Measure::salton;
  throw InvalidArgument("unknown similarity measure '" + std::string(name) +
                        "' (expected browet or salton)");
}

void SimilarityConfig::validate() const {
  if (rank < 1) throw InvalidArgument("rank must be at least 1");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be at least 1");
  if (beta && !(*beta >= 0.0 && std::isfinite(*beta))) {
    throw InvalidArgument("beta must be finite and non-negative");
  }
}

namespace {

void require_rows(const DirectedGraph& g, const Matrix& X) {
  if (static_cast<std::size_t>(X.rows()) != g.node_count()) {
    throw DimensionError("matrix has " + std::to_string(X.rows()) +
                         " rows for a graph of " +
                         std::to_string(g.node_count()) + " nodes");
  }
}

void require_rank(const DirectedGraph& g, std::size_t rank) {
  if (rank < 1) throw InvalidArgument("rank must be at least 1");
  if (rank > g.node_count()) {
    throw InvalidArgument("rank " + std::to_string(rank) +
                          " exceeds node count " +
                          std::to_string(g.node_count()));
  }
}

}  // namespace

namespace {

// Sum over neighbours(i) of row j of X, for every node i. Works on the
// transposed block so that each neighbour contributes one contiguous run of
// X.cols() values; gathering column by column falls out of cache on large n.
template <typename Neighbours>
Matrix gather_rows(const DirectedGraph& g, const Matrix& X, Neighbours neighbours) {
  const auto n = static_cast<NodeId>(g.node_count());
  const Eigen::Index w = X.cols();
  const Matrix in = X.transpose();
  Matrix out(w, X.rows());
  for (NodeId i = 0; i < n; ++i) {
    auto dst = out.col(i);
    dst.setZero();
    for (NodeId j : neighbours(i)) dst += in.col(j);
  }
  return out.transpose();
}

}  // namespace

Matrix multiply_adjacency(const DirectedGraph& g, const Matrix& X) {
  require_rows(g, X);
  return gather_rows(g, X, [&](NodeId i) { return g.children(i); });
}

Matrix multiply_adjacency_transposed(const DirectedGraph& g, const Matrix& X) {
  require_rows(g, X);
  return gather_rows(g, X, [&](NodeId j) { return g.parents(j); });
}

Matrix gamma_apply(const DirectedGraph& g, const Matrix& X) {
  require_rows(g, X);
  Matrix out(X.rows(), 2 * X.cols());
  out << multiply_adjacency(g, X), multiply_adjacency_transposed(g, X);
  return out;
}

Vector concat_singular_values(const DirectedGraph& g, std::size_t count) {
  // Only values are needed, and a Ritz value lies within its residual norm
  // of an eigenvalue, so this needs a far looser target than the factor.
  detail::SubspaceOptions options;
  options.residual_tol = 1e-6;
  return detail::concat_eigenpairs(g, Vector(), Vector(), count, options)
      .values.cwiseSqrt();
}

Matrix initial_factor(const DirectedGraph& g, std::size_t rank) {
  require_rank(g, rank);
  return detail::concat_factor(g, Vector(), Vector(), rank);
}

double gram_change(const Matrix& X, const Matrix& Y) {
  if (X.rows() != Y.rows()) throw DimensionError("gram_change: row mismatch");
  Matrix stacked(X.rows(), X.cols() + Y.cols());
  stacked << X, Y;
  Eigen::HouseholderQR<Matrix> qr(stacked);
  const Eigen::Index m = std::min(stacked.rows(), stacked.cols());
  const Matrix R = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  const Matrix Rx = R.leftCols(X.cols());
  const Matrix Ry = R.rightCols(Y.cols());
  const double num = (Rx * Rx.transpose() - Ry * Ry.transpose()).norm();
  const double den = (Rx.transpose() * Rx).norm();
  if (den == 0.0) return num == 0.0 ? 0.0 : HUGE_VAL;
  return num / den;
}

namespace {

struct SpectralGap {
  double value = 0.0;
  Eigen::Index upper = 0;   // index of the larger eigenvalue
  Eigen::Index lower = -1;  // index of the smaller one; -1 when gap = λ_ρ
};

// Gap below eigenvalue `rank` of the concatenated Gram operator, falling
// back to the smallest nonzero eigenvalue when rank reaches the numerical
// rank of the graph.
SpectralGap spectral_gap(const Vector& lambda, std::size_t rank) {
  const double top = lambda(0);
  Eigen::Index numerical_rank = 0;
  while (numerical_rank < lambda.size() && lambda(numerical_rank) > 1e-10 * top) {
    ++numerical_rank;
  }
  const auto r = static_cast<Eigen::Index>(rank);
  if (r < numerical_rank) return {lambda(r - 1) - lambda(r), r - 1, r};
  return {lambda(numerical_rank - 1), numerical_rank - 1, -1};
}

double beta_squared_bound(const DirectedGraph& g, double top, double gap) {
  const double frobenius_bound = 2.0 * static_cast<double>(g.edge_count());
  return 1.0 / (frobenius_bound * (8.0 * top / gap + 1.0));
}

constexpr double kBetaSafety = 0.99;

}  // namespace

SimilarityFactor browet_factor(const DirectedGraph& g,
                               const SimilarityConfig& cfg) {
  cfg.validate();
  require_rank(g, cfg.rank);
  const double beta = cfg.beta ? *cfg.beta : beta_estimate(g, cfg.rank);
  const auto r = static_cast<Eigen::Index>(cfg.rank);
  const Matrix first = initial_factor(g, cfg.rank);

  SimilarityFactor result;
  result.measure = Measure::browet;
  result.beta = beta;

  result.X = first;
  result.iterations = 1;
  if (beta == 0.0) {
    result.converged = true;
    return result;
  }

  const auto n = first.rows();
  Matrix Y(n, 3 * r);
  for (int it = 2; it <= cfg.max_iter; ++it) {
    const Matrix& current = result.X;
    Y << first, beta * multiply_adjacency(g, current),
        beta * multiply_adjacency_transposed(g, current);

    Eigen::HouseholderQR<Matrix> qr(Y);
    const Eigen::Index m = std::min(n, 3 * r);
    const Matrix Q = qr.householderQ() * Matrix::Identity(n, m);
    const Matrix R = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();

    Eigen::JacobiSVD<Matrix> svd(R, Eigen::ComputeThinU);
    const Eigen::Index keep = std::min(r, svd.singularValues().size());
    Matrix next = Matrix::Zero(n, r);
    next.leftCols(keep) = Q * svd.matrixU().leftCols(keep) *
                          svd.singularValues().head(keep).asDiagonal();

    if (!next.allFinite()) {
      throw DivergenceError(it, "non-finite similarity factor (beta = " +
                                    std::to_string(beta) + " too large?)");
    }
    const double change = gram_change(next, current);
    result.X = std::move(next);
    result.iterations = it;
    if (change <= cfg.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

SimilarityFactor salton_factor(const DirectedGraph& g, std::size_t rank) {
  require_rank(g, rank);
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Vector out_scale(n);
  Vector in_scale(n);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto kout = static_cast<double>(g.out_degree(i));
    const auto kin = static_cast<double>(g.in_degree(i));
    out_scale(i) = kout > 0.0 ? 1.0 / std::sqrt(kout) : 0.0;
    in_scale(i) = kin > 0.0 ? 1.0 / std::sqrt(kin) : 0.0;
  }
  SimilarityFactor result;
  result.X = detail::concat_factor(g, out_scale, in_scale, rank);
  result.measure = Measure::salton;
  result.beta = 0.0;
  result.iterations = 1;
  result.converged = true;
  return result;
}

double beta_estimate(const DirectedGraph& g, std::size_t rank) {
  require_rank(g, rank);
  const std::size_t count = std::min(rank + 1, g.node_count());

  // Every Ritz value is within its residual norm of an eigenvalue. Stop once
  // those error bars move the bound by under half a percent, which the
  // safety factor below absorbs.
  detail::SubspaceOptions options;
  options.accept = [&](const Vector& values, const Vector& residuals) {
    if (!(values(0) > 0.0)) return true;
    const SpectralGap gap = spectral_gap(values, rank);
    if (!(gap.value > 1e-12 * values(0))) {
      return residuals.maxCoeff() <= 1e-11 * values(0);
    }
    const double gap_error =
        residuals(gap.upper) + (gap.lower >= 0 ? residuals(gap.lower) : 0.0);
    if (gap_error >= gap.value) return false;
    return beta_squared_bound(g, values(0) + residuals(0), gap.value - gap_error) >=
           0.995 * beta_squared_bound(g, values(0), gap.value);
  };
  const Vector lambda =
      detail::concat_eigenpairs(g, Vector(), Vector(), count, options).values;

  if (lambda.size() == 0 || !(lambda(0) > 0.0)) {
    throw GapError("graph has no edges, so no spectral gap exists; pass an explicit beta");
  }
  const SpectralGap gap = spectral_gap(lambda, rank);
  if (!(gap.value > 1e-12 * lambda(0))) {
    throw GapError("singular values " + std::to_string(rank) + " and " +
                   std::to_string(rank + 1) +
                   " of [A | A^T] coincide; pass an explicit beta");
  }
  return std::sqrt(kBetaSafety * beta_squared_bound(g, lambda(0), gap.value));
}

Matrix dense_oracle(const DirectedGraph& g, double beta, double tol,
                    int max_iter) {
  const std::size_t n = g.node_count();
  if (n > 200) {
    throw InvalidArgument("dense_oracle is limited to 200 nodes, got " +
                          std::to_string(n));
  }
  const auto size = static_cast<Eigen::Index>(n);
  Matrix A = Matrix::Zero(size, size);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j : g.children(i)) A(i, j) = 1.0;
  }
  const Matrix S1 = A * A.transpose() + A.transpose() * A;
  const double scale = beta * beta;
  Matrix S = Matrix::Zero(size, size);
  for (int it = 1; it <= max_iter; ++it) {
    Matrix next = S1 + scale * (A * S * A.transpose() + A.transpose() * S * A);
    if (!next.allFinite()) throw DivergenceError(it, "dense iteration overflowed");
    // stableNorm: squaring entries near 1e160 would overflow norm() and
    // make inf <= tol·inf look like convergence.
    const double step = (next - S).stableNorm();
    const double base = S.stableNorm();
    if (!std::isfinite(step)) throw DivergenceError(it, "dense iteration overflowed");
    S = std::move(next);
    if (step <= tol * base || step == 0.0) return S;
  }
  throw DivergenceError(max_iter, "dense iteration did not converge");
}

SimilarityFactor compute_factor(const DirectedGraph& g, Measure measure,
                                const SimilarityConfig& cfg) {
  if (measure == Measure::salton) {
    cfg.validate();
    return salton_factor(g, cfg.rank);
  }
  return browet_factor(g, cfg);
}

}  // namespace rolex
