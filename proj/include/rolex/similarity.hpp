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

#include <Eigen/Core>

#include "rolex/graph.hpp"

namespace rolex {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Measure { browet, salton };

std::string_view to_string(Measure m) noexcept;
/// Throws InvalidArgument on an unknown name.
Measure parse_measure(std::string_view name);

struct SimilarityConfig {
  std::size_t rank = 1;
  /// Scaling of long neighbourhood patterns. Unset means beta_estimate.
  std::optional<double> beta;
  double tol = 1e-6;
  int max_iter = 100;

  void validate() const;
};

/// S ≈ X·Xᵀ. Columns of X are orthogonal with non-increasing norms.
struct SimilarityFactor {
  Matrix X;
  Measure measure = Measure::browet;
  double beta = 0.0;
  int iterations = 0;
  bool converged = false;

  std::size_t rank() const noexcept { return static_cast<std::size_t>(X.cols()); }
};

/// A·X (row i sums X over the children of i).
Matrix multiply_adjacency(const DirectedGraph& g, const Matrix& X);
/// Aᵀ·X (row j sums X over the parents of j).
Matrix multiply_adjacency_transposed(const DirectedGraph& g, const Matrix& X);

/// The n×2r block [A·X | Aᵀ·X].
Matrix gamma_apply(const DirectedGraph& g, const Matrix& X);

/// Top `count` singular values of [A | Aᵀ], in decreasing order.
Vector concat_singular_values(const DirectedGraph& g, std::size_t count);

/// X₁ = U₁Σ₁ from the rank-r truncated SVD of [A | Aᵀ], so X₁X₁ᵀ is the best
/// rank-r approximation of AAᵀ + AᵀA. Rank deficiency gives zero columns.
Matrix initial_factor(const DirectedGraph& g, std::size_t rank);

/// Low-rank fixed point of S = S₁ + β²(A S Aᵀ + Aᵀ S A). Each step takes a
/// thin QR of Y = [X₁ | βA·X | βAᵀ·X] and keeps the rank-r truncated SVD of
/// the R factor. Stops on the relative change of X·Xᵀ (computed on a 2r×2r
/// core) or after cfg.max_iter iterations, X₁ counting as the first.
/// Throws DivergenceError on non-finite iterates, GapError if β must be
/// estimated and cannot be.
SimilarityFactor browet_factor(const DirectedGraph& g, const SimilarityConfig& cfg);

/// Rank-r factor of [C | Dᵀ], C = A with rows scaled by 1/√k_out and
/// D = A with columns scaled by 1/√k_in (zero-degree scalings are 0).
SimilarityFactor salton_factor(const DirectedGraph& g, std::size_t rank);

/// β with β² = 0.99 · 1 / (2‖A‖²_F (8σ₁² / (σ_r² − σ_{r+1}²) + 1)), σ the
/// singular values of [A | Aᵀ]. When r reaches the numerical rank ρ of
/// [A | Aᵀ] the gap is taken as σ_ρ² − 0. Throws GapError when the graph
/// has no spectrum or the gap vanishes.
double beta_estimate(const DirectedGraph& g, std::size_t rank);

/// Dense reference iteration of the full (untruncated) similarity, for
/// small graphs only (n <= 200). Stops when ‖S_{k+1} − S_k‖_F <= tol·‖S_k‖_F.
Matrix dense_oracle(const DirectedGraph& g, double beta, double tol = 1e-12,
                    int max_iter = 1000);

/// Relative change ‖XXᵀ − YYᵀ‖_F / ‖XXᵀ‖_F without forming either product.
double gram_change(const Matrix& X, const Matrix& Y);

/// Dispatches on `measure`. Salton ignores beta, tol and max_iter.
SimilarityFactor compute_factor(const DirectedGraph& g, Measure measure,
                                const SimilarityConfig& cfg);

}  // namespace rolex
