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

// Dominant eigenpairs of a symmetric positive semidefinite operator that is
// only available through block products.

#include <cstddef>
#include <cstdint>
#include <functional>

#include "rolex/similarity.hpp"

namespace rolex::detail {

struct EigenPairs {
  Matrix vectors;  // n x count, orthonormal columns
  Vector values;   // decreasing, clamped at 0
  int sweeps = 0;
};

struct SubspaceOptions {
  double residual_tol = 1e-11;  // relative to the largest eigenvalue
  /// Replaces the residual test when set: called after every sweep with the
  /// Ritz values and residual norms of the wanted pairs.
  std::function<bool(const Vector& values, const Vector& residuals)> accept;
  int max_sweeps = 1000;
  std::uint64_t seed = 0x726f6c6578ULL;
};

using BlockOperator = std::function<Matrix(const Matrix&)>;

/// Block subspace iteration with Rayleigh-Ritz. The block covers
/// min(n, max(2·count, count + 16)) columns; when it spans all of ℝⁿ a single
/// sweep is exact.
EigenPairs top_eigenpairs(std::size_t n, std::size_t count,
                          const BlockOperator& apply,
                          const SubspaceOptions& options = {});

/// V ↦ diag(a)·A·Aᵀ·diag(a)·V + diag(b)·Aᵀ·A·diag(b)·V, i.e. M·Mᵀ·V for
/// M = [diag(a)·A | diag(b)·Aᵀ]. Empty scale vectors mean all ones.
Matrix concat_gram_apply(const DirectedGraph& g, const Vector& out_scale,
                         const Vector& in_scale, const Matrix& V);

/// U·diag(√λ) over the first `rank` pairs.
Matrix factor_from_pairs(const EigenPairs& pairs, std::size_t rank);

/// Top `count` eigenpairs of M·Mᵀ (see concat_gram_apply).
EigenPairs concat_eigenpairs(const DirectedGraph& g, const Vector& out_scale,
                             const Vector& in_scale, std::size_t count,
                             const SubspaceOptions& options = {});

/// Factor U·diag(√λ) from the top `rank` eigenpairs of M·Mᵀ.
Matrix concat_factor(const DirectedGraph& g, const Vector& out_scale,
                     const Vector& in_scale, std::size_t rank);

}  // namespace rolex::detail
