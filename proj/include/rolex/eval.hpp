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
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rolex/graph.hpp"

namespace rolex {

struct ContingencyTable {
  std::size_t n = 0;
  std::vector<std::size_t> n_x;  // cluster sizes of the first partition
  std::vector<std::size_t> n_y;  // cluster sizes of the second partition
  Eigen::Matrix<std::size_t, Eigen::Dynamic, Eigen::Dynamic> n_xy;
};

/// Throws DimensionError on length mismatch.
ContingencyTable contingency(const RolePartition& a, const RolePartition& b);

/// Entropy in nats of the distribution counts/n; zero counts contribute 0.
double entropy(std::span<const std::size_t> counts, std::size_t n);

double joint_entropy(const ContingencyTable& table);
double mutual_information(const ContingencyTable& table);

/// I(a, b) / √(H(a)·H(b)), clamped to [0, 1]. Two single-cluster partitions
/// score 1; one single-cluster partition against a non-trivial one scores 0.
double nmi(const RolePartition& a, const RolePartition& b);

}  // namespace rolex
