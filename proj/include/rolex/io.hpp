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

#include <iosfwd>

#include "json.hpp"

#include "rolex/graph.hpp"

namespace rolex {

struct EdgeListOptions {
  bool one_indexed = false;
  /// When false, a third column of 0 drops the line's edge.
  bool ignore_weights = true;
};

/// Reads "src dst [weight]" lines. Blank lines and lines starting with '#'
/// or '%' are skipped; duplicate edges collapse. n = 1 + largest id.
/// Throws ParseError carrying the offending line number.
DirectedGraph load_edge_list(std::istream& in, const EdgeListOptions& options = {});

/// One "src dst" line per edge, 0-indexed, in lexicographic order.
void write_edge_list(std::ostream& out, const DirectedGraph& g);

/// CSV with header "node,cluster".
void write_partition_csv(std::ostream& out, const RolePartition& p);

/// Accepts rows in any order but requires every node 0..n-1 exactly once.
/// Cluster values are compacted to 0..k-1 preserving their order.
RolePartition read_partition_csv(std::istream& in);

nlohmann::json to_json(const ReducedGraph& reduced);

/// {"B": [[..]], "sizes": [..], "p_in": x, "p_out": y, "seed": s}
/// p_in, p_out and seed default to 1, 0 and 0 when missing.
BenchmarkSpec benchmark_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BenchmarkSpec& spec);

}  // namespace rolex
