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

// Small builders shared by the unit tests.

#include <initializer_list>
#include <vector>

#include <Eigen/Core>

#include "rolex/graph.hpp"
#include "rolex/similarity.hpp"

namespace rolex::test {

inline DirectedGraph graph(std::size_t n, std::initializer_list<Edge> edges) {
  return DirectedGraph(n, std::vector<Edge>(edges));
}

inline Eigen::MatrixXi block(std::initializer_list<std::initializer_list<int>> rows) {
  Eigen::MatrixXi m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Eigen::MatrixXi cycle3() { return block({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}); }

inline PlantedGraph planted(const Eigen::MatrixXi& B, std::vector<std::size_t> sizes,
                            double p_in, double p_out, std::uint64_t seed = 1) {
  BenchmarkSpec spec;
  spec.block = B;
  spec.sizes = std::move(sizes);
  spec.p_in = p_in;
  spec.p_out = p_out;
  spec.seed = seed;
  return generate_planted(spec);
}

inline Matrix dense_adjacency(const DirectedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Matrix A = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) A(e.src, e.dst) = 1.0;
  return A;
}

}  // namespace rolex::test
