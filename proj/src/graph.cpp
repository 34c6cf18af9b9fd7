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

#include "rolex/graph.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "rolex/errors.hpp"
#include "rolex/rng.hpp"

namespace rolex {
namespace {

// Counting-sort style CSR build; `key` picks the row of each edge and
// `value` the stored column. Edges arrive sorted and unique.
template <typename Key, typename Value>
void build_csr(std::size_t n, const std::vector<Edge>& edges, Key key,
               Value value, std::vector<std::size_t>& offsets,
               std::vector<NodeId>& targets) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : edges) ++offsets[key(e) + 1];
  for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  targets.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Edge& e : edges) targets[cursor[key(e)]++] = value(e);
}

}  // namespace

DirectedGraph::DirectedGraph(std::size_t node_count, std::vector<Edge> edges)
    : node_count_(node_count) {
  for (const Edge& e : edges) {
    if (e.src >= node_count || e.dst >= node_count) {
      throw DimensionError("edge (" + std::to_string(e.src) + ", " +
                           std::to_string(e.dst) + ") outside graph of " +
                           std::to_string(node_count) + " nodes");
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  build_csr(
      node_count, edges, [](const Edge& e) { return e.src; },
      [](const Edge& e) { return e.dst; }, out_offsets_, children_);
  // Edges are sorted by src, so each parent list comes out sorted too.
  build_csr(
      node_count, edges, [](const Edge& e) { return e.dst; },
      [](const Edge& e) { return e.src; }, in_offsets_, parents_);
}

bool DirectedGraph::has_edge(NodeId src, NodeId dst) const noexcept {
  if (src >= node_count_ || dst >= node_count_) return false;
  const auto row = children(src);
  return std::binary_search(row.begin(), row.end(), dst);
}

std::vector<Edge> DirectedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId i = 0; i < node_count_; ++i) {
    for (NodeId j : children(i)) out.push_back({i, j});
  }
  return out;
}

RolePartition::RolePartition(std::vector<Label> labels, std::size_t k)
    : labels_(std::move(labels)), k_(k) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] >= k_) {
      throw InvalidArgument("label " + std::to_string(labels_[i]) +
                            " of node " + std::to_string(i) +
                            " is not below k = " + std::to_string(k_));
    }
  }
}

RolePartition RolePartition::compact(std::span<const std::int64_t> raw_labels) {
  std::map<std::int64_t, Label> remap;
  for (std::int64_t v : raw_labels) remap.emplace(v, 0);
  Label next = 0;
  for (auto& [value, label] : remap) label = next++;
  std::vector<Label> labels;
  labels.reserve(raw_labels.size());
  for (std::int64_t v : raw_labels) labels.push_back(remap.at(v));
  return RolePartition(std::move(labels), remap.size());
}

std::vector<std::size_t> RolePartition::cluster_sizes() const {
  std::vector<std::size_t> sizes(k_, 0);
  for (Label l : labels_) ++sizes[l];
  return sizes;
}

bool RolePartition::has_empty_cluster() const {
  const auto sizes = cluster_sizes();
  return std::find(sizes.begin(), sizes.end(), 0) != sizes.end();
}

void RolePartition::require_populated() const {
  const auto sizes = cluster_sizes();
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] == 0) {
      throw EmptyClusterError("cluster " + std::to_string(c) + " is empty");
    }
  }
}

Degrees degrees(const DirectedGraph& g) {
  const std::size_t n = g.node_count();
  Degrees d{std::vector<std::size_t>(n), std::vector<std::size_t>(n)};
  for (NodeId i = 0; i < n; ++i) {
    d.out[i] = g.out_degree(i);
    d.in[i] = g.in_degree(i);
  }
  return d;
}

void BenchmarkSpec::validate() const {
  if (block.rows() != block.cols()) {
    throw InvalidArgument("block matrix must be square");
  }
  if (static_cast<std::size_t>(block.rows()) != sizes.size()) {
    throw InvalidArgument("block matrix has " + std::to_string(block.rows()) +
                          " rows but " + std::to_string(sizes.size()) +
                          " role sizes were given");
  }
  if ((block.array() != 0 && block.array() != 1).any()) {
    throw InvalidArgument("block matrix entries must be 0 or 1");
  }
  for (std::size_t s : sizes) {
    if (s == 0) throw InvalidArgument("role sizes must be positive");
  }
  if (!(p_in >= 0.0 && p_in <= 1.0) || !(p_out >= 0.0 && p_out <= 1.0)) {
    throw InvalidArgument("p_in and p_out must lie in [0, 1]");
  }
}

std::size_t BenchmarkSpec::node_count() const {
  std::size_t n = 0;
  for (std::size_t s : sizes) n += s;
  return n;
}

PlantedGraph generate_planted(const BenchmarkSpec& spec) {
  spec.validate();
  const std::size_t n = spec.node_count();

  std::vector<Label> roles;
  roles.reserve(n);
  for (std::size_t r = 0; r < spec.sizes.size(); ++r) {
    roles.insert(roles.end(), spec.sizes[r], static_cast<Label>(r));
  }

  Rng rng(spec.seed);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = 0; j < n; ++j) {
      const double p = spec.block(roles[i], roles[j]) ? spec.p_in : spec.p_out;
      // Always draw, so graphs with the same seed are coupled across p.
      if (rng.uniform() < p) edges.push_back({i, j});
    }
  }
  return {DirectedGraph(n, std::move(edges)),
          RolePartition(std::move(roles), spec.sizes.size())};
}

DirectedGraph relabel(const DirectedGraph& g,
                      std::span<const NodeId> new_of_old) {
  if (new_of_old.size() != g.node_count()) {
    throw DimensionError("relabeling has " + std::to_string(new_of_old.size()) +
                         " entries for a graph of " +
                         std::to_string(g.node_count()) + " nodes");
  }
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) e = {new_of_old[e.src], new_of_old[e.dst]};
  return DirectedGraph(g.node_count(), std::move(edges));
}

std::vector<NodeId> permutation_by_label(const RolePartition& p) {
  std::vector<NodeId> order(p.size());
  for (NodeId i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return p[a] < p[b]; });
  std::vector<NodeId> new_of_old(p.size());
  for (NodeId pos = 0; pos < order.size(); ++pos) new_of_old[order[pos]] = pos;
  return new_of_old;
}

DirectedGraph permute(const DirectedGraph& g, const RolePartition& p) {
  if (p.size() != g.node_count()) {
    throw DimensionError("partition has " + std::to_string(p.size()) +
                         " labels for a graph of " +
                         std::to_string(g.node_count()) + " nodes");
  }
  const auto new_of_old = permutation_by_label(p);
  return relabel(g, new_of_old);
}

ReducedGraph extract_reduced(const DirectedGraph& g, const RolePartition& p,
                             double threshold) {
  if (p.size() != g.node_count()) {
    throw DimensionError("partition has " + std::to_string(p.size()) +
                         " labels for a graph of " +
                         std::to_string(g.node_count()) + " nodes");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("threshold must lie in [0, 1]");
  }
  p.require_populated();

  const auto k = static_cast<Eigen::Index>(p.cluster_count());
  const auto sizes = p.cluster_sizes();
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k, k);
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (NodeId j : g.children(i)) counts(p[i], p[j]) += 1.0;
  }

  ReducedGraph reduced;
  reduced.k = p.cluster_count();
  reduced.threshold = threshold;
  reduced.density.resize(k, k);
  reduced.edges.resize(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = 0; b < k; ++b) {
      const double cells = static_cast<double>(sizes[a]) *
                           static_cast<double>(sizes[b]);
      reduced.density(a, b) = counts(a, b) / cells;
      reduced.edges(a, b) = reduced.density(a, b) > threshold ? 1 : 0;
    }
  }
  return reduced;
}

}  // namespace rolex
