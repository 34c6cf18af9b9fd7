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
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace rolex {

using NodeId = std::uint32_t;
using Label = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Binary directed graph on nodes 0..n-1, stored twice: CSR by source for
/// children and CSR by destination for parents. Immutable once built.
/// Self-loops are allowed; duplicate edges are collapsed on construction.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Throws DimensionError if an endpoint is >= node_count.
  DirectedGraph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return children_.size(); }

  std::span<const NodeId> children(NodeId i) const noexcept {
    return {children_.data() + out_offsets_[i],
            children_.data() + out_offsets_[i + 1]};
  }
  std::span<const NodeId> parents(NodeId j) const noexcept {
    return {parents_.data() + in_offsets_[j],
            parents_.data() + in_offsets_[j + 1]};
  }

  std::size_t out_degree(NodeId i) const noexcept {
    return out_offsets_[i + 1] - out_offsets_[i];
  }
  std::size_t in_degree(NodeId j) const noexcept {
    return in_offsets_[j + 1] - in_offsets_[j];
  }

  bool has_edge(NodeId src, NodeId dst) const noexcept;

  /// Edges in (src, dst) lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.node_count_ == b.node_count_ && a.out_offsets_ == b.out_offsets_ &&
           a.children_ == b.children_;
  }

 private:
  std::size_t node_count_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> children_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> parents_;
};

/// Node -> cluster assignment with labels in 0..k-1.
class RolePartition {
 public:
  RolePartition() = default;

  /// Throws InvalidArgument if some label is >= k. Empty clusters are
  /// allowed here; use `require_populated` where they are not.
  RolePartition(std::vector<Label> labels, std::size_t k);

  /// Relabels arbitrary values to 0..k-1, ordered by original value.
  static RolePartition compact(std::span<const std::int64_t> raw_labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t cluster_count() const noexcept { return k_; }
  Label operator[](std::size_t i) const noexcept { return labels_[i]; }
  const std::vector<Label>& labels() const noexcept { return labels_; }

  std::vector<std::size_t> cluster_sizes() const;
  bool has_empty_cluster() const;
  /// Throws EmptyClusterError naming the first empty cluster.
  void require_populated() const;

  friend bool operator==(const RolePartition&, const RolePartition&) = default;

 private:
  std::vector<Label> labels_;
  std::size_t k_ = 0;
};

struct Degrees {
  std::vector<std::size_t> out;
  std::vector<std::size_t> in;
};

Degrees degrees(const DirectedGraph& g);

/// Planted-partition benchmark: node i has role R(i); pair (i, j) is an edge
/// with probability p_in if block(R(i), R(j)) = 1, else p_out.
struct BenchmarkSpec {
  Eigen::MatrixXi block;  // k_B x k_B, entries 0/1
  std::vector<std::size_t> sizes;
  double p_in = 1.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument when the invariants do not hold.
  void validate() const;
  std::size_t node_count() const;
};

struct PlantedGraph {
  DirectedGraph graph;
  RolePartition truth;
};

/// Roles are laid out contiguously: the first sizes[0] nodes have role 0, and
/// so on. Ordered pairs (i, j) are visited row-major, self-pairs included,
/// with one uniform draw per pair.
PlantedGraph generate_planted(const BenchmarkSpec& spec);

/// Relabels node i to new_of_old[i].
DirectedGraph relabel(const DirectedGraph& g, std::span<const NodeId> new_of_old);

/// Stable ordering of nodes by label: result[i] is node i's new position.
std::vector<NodeId> permutation_by_label(const RolePartition& p);

/// Reorders nodes so that labels are non-decreasing, stable within a label.
DirectedGraph permute(const DirectedGraph& g, const RolePartition& p);

struct ReducedGraph {
  std::size_t k = 0;
  double threshold = 0.0;
  Eigen::MatrixXd density;  // edges in block (a, b) / (|a| * |b|)
  Eigen::MatrixXi edges;    // density > threshold
};

ReducedGraph extract_reduced(const DirectedGraph& g, const RolePartition& p,
                             double threshold);

}  // namespace rolex
