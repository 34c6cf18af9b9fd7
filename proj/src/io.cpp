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

#include "rolex/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rolex/errors.hpp"

namespace rolex {
namespace {

constexpr std::string_view kWhitespace = " \t\r\v\f";

std::vector<std::string_view> split_fields(std::string_view line,
                                           std::string_view separators) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t start = line.find_first_not_of(separators, pos);
    if (start == std::string_view::npos) break;
    std::size_t end = line.find_first_of(separators, start);
    if (end == std::string_view::npos) end = line.size();
    fields.push_back(line.substr(start, end - start));
    pos = end;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  const std::size_t start = s.find_first_not_of(kWhitespace);
  if (start == std::string_view::npos) return {};
  const std::size_t end = s.find_last_not_of(kWhitespace);
  return s.substr(start, end - start + 1);
}

std::int64_t parse_integer(std::string_view field, std::size_t line,
                           const char* what) {
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("malformed ") + what + " '" +
                               std::string(field) + "'");
  }
  return value;
}

double parse_weight(std::string_view field, std::size_t line) {
  // from_chars for double is not available in libstdc++ 11 for all targets.
  const std::string text(field);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw ParseError(line, "malformed weight '" + text + "'");
  }
  return value;
}

}  // namespace

DirectedGraph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<Edge> edges;
  std::int64_t max_id = -1;
  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    const std::string_view line = trim(buffer);
    if (line.empty() || line.front() == '#' || line.front() == '%') continue;

    const auto fields = split_fields(line, kWhitespace);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(line_no, "expected 'src dst [weight]', got " +
                                    std::to_string(fields.size()) + " fields");
    }
    std::int64_t src = parse_integer(fields[0], line_no, "source id");
    std::int64_t dst = parse_integer(fields[1], line_no, "destination id");
    if (src < 0 || dst < 0) throw ParseError(line_no, "negative node id");
    if (options.one_indexed) {
      if (src == 0 || dst == 0) {
        throw ParseError(line_no, "node id 0 in a one-indexed edge list");
      }
      --src;
      --dst;
    }
    if (src > std::int64_t{UINT32_MAX} - 1 || dst > std::int64_t{UINT32_MAX} - 1) {
      throw ParseError(line_no, "node id too large");
    }
    if (fields.size() == 3) {
      const double weight = parse_weight(fields[2], line_no);
      if (!options.ignore_weights && weight == 0.0) continue;
    }
    max_id = std::max({max_id, src, dst});
    edges.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst)});
  }
  return DirectedGraph(static_cast<std::size_t>(max_id + 1), std::move(edges));
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
  for (NodeId i = 0; i < g.node_count(); ++i) {
    for (NodeId j : g.children(i)) out << i << ' ' << j << '\n';
  }
}

void write_partition_csv(std::ostream& out, const RolePartition& p) {
  out << "node,cluster\r\n";
  for (std::size_t i = 0; i < p.size(); ++i) out << i << ',' << p[i] << "\r\n";
}

RolePartition read_partition_csv(std::istream& in) {
  std::string buffer;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<std::pair<std::int64_t, std::int64_t>> rows;
  while (std::getline(in, buffer)) {
    ++line_no;
    const std::string_view line = trim(buffer);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != "node,cluster") {
        throw ParseError(line_no, "expected header 'node,cluster'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split_fields(line, ",");
    if (fields.size() != 2) throw ParseError(line_no, "expected 'node,cluster'");
    const std::int64_t node = parse_integer(trim(fields[0]), line_no, "node id");
    const std::int64_t cluster =
        parse_integer(trim(fields[1]), line_no, "cluster id");
    if (node < 0) throw ParseError(line_no, "negative node id");
    rows.emplace_back(node, cluster);
  }
  if (!header_seen) throw ParseError(0, "empty partition file");

  std::vector<std::int64_t> raw(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [node, cluster] : rows) {
    if (static_cast<std::size_t>(node) >= rows.size()) {
      throw ParseError(0, "node " + std::to_string(node) +
                              " out of range for " +
                              std::to_string(rows.size()) + " rows");
    }
    if (seen[node]) {
      throw ParseError(0, "node " + std::to_string(node) + " listed twice");
    }
    seen[node] = true;
    raw[node] = cluster;
  }
  return RolePartition::compact(raw);
}

nlohmann::json to_json(const ReducedGraph& reduced) {
  nlohmann::json density = nlohmann::json::array();
  nlohmann::json edges = nlohmann::json::array();
  for (Eigen::Index a = 0; a < reduced.density.rows(); ++a) {
    nlohmann::json drow = nlohmann::json::array();
    nlohmann::json erow = nlohmann::json::array();
    for (Eigen::Index b = 0; b < reduced.density.cols(); ++b) {
      drow.push_back(reduced.density(a, b));
      erow.push_back(reduced.edges(a, b));
    }
    density.push_back(std::move(drow));
    edges.push_back(std::move(erow));
  }
  return {{"k", reduced.k},
          {"threshold", reduced.threshold},
          {"density", std::move(density)},
          {"edges", std::move(edges)}};
}

BenchmarkSpec benchmark_from_json(const nlohmann::json& j) {
  try {
    BenchmarkSpec spec;
    const auto& rows = j.at("B");
    const auto k = static_cast<Eigen::Index>(rows.size());
    spec.block.resize(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      const auto& row = rows.at(a);
      if (static_cast<Eigen::Index>(row.size()) != k) {
        throw InvalidArgument("B must be square");
      }
      for (Eigen::Index b = 0; b < k; ++b) spec.block(a, b) = row.at(b).get<int>();
    }
    spec.sizes = j.at("sizes").get<std::vector<std::size_t>>();
    spec.p_in = j.value("p_in", 1.0);
    spec.p_out = j.value("p_out", 0.0);
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("benchmark spec: ") + e.what());
  }
}

nlohmann::json to_json(const BenchmarkSpec& spec) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index a = 0; a < spec.block.rows(); ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index b = 0; b < spec.block.cols(); ++b) {
      row.push_back(spec.block(a, b));
    }
    rows.push_back(std::move(row));
  }
  return {{"B", std::move(rows)},
          {"sizes", spec.sizes},
          {"p_in", spec.p_in},
          {"p_out", spec.p_out},
          {"seed", spec.seed}};
}

}  // namespace rolex
