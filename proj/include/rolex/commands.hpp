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

// Experiment drivers behind the command-line tool. Each returns plain data;
// the writers below turn it into the CSV / JSON files the tool emits.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "json.hpp"

#include "rolex/clustering.hpp"
#include "rolex/graph.hpp"
#include "rolex/k_estimate.hpp"
#include "rolex/similarity.hpp"

namespace rolex {

// ---------------------------------------------------------------- extract

struct ExtractOptions {
  Measure measure = Measure::browet;
  SimilarityConfig similarity;  // rank, beta, tol, max_iter
  /// Exactly one of `k` and `k_method` must be set.
  std::optional<std::size_t> k;
  std::optional<KMethod> k_method;
  std::uint64_t seed = 0;
  KEstimateConfig estimate;  // cluster options + gap factor
  double reduced_threshold = 0.1;
};

struct ExtractResult {
  SimilarityFactor factor;
  std::optional<KEstimateResult> estimate;
  /// Unset when k estimation found no acceptable k.
  std::optional<ValidatedClustering> clustering;
  std::optional<ReducedGraph> reduced;
};

/// factor -> optional k estimation -> validated clustering -> reduced graph.
ExtractResult run_extract(const DirectedGraph& g, const ExtractOptions& options);

nlohmann::json validation_json(const ValidatedClustering& c);
nlohmann::json estimate_json(const KEstimateResult& e);
nlohmann::json factor_sidecar_json(const SimilarityFactor& f);
void write_factor_csv(std::ostream& out, const Matrix& X);

// ------------------------------------------------------------------ sweep

enum class Clusterer { kmeans, kmeans_validated };

struct SweepSpec {
  BenchmarkSpec benchmark;  // p_in / p_out are overwritten per cell
  double grid_step = 0.05;
  int realizations = 20;
  Measure measure = Measure::browet;
  Clusterer clusterer = Clusterer::kmeans_validated;
  std::size_t rank = 0;  // 0: number of roles
  /// Unset: the number of roles is given to the clusterer.
  std::optional<KMethod> k_method;
  KEstimateConfig estimate;
  double tol = 1e-6;
  int max_iter = 100;

  void validate() const;
  /// Points 0, step, 2·step, ..., 1 (1 always included).
  std::vector<double> grid() const;
};

/// Keys: benchmark{B, sizes, seed}, grid_step, realizations, measure,
/// clusterer, r, k_mode ("fixed" | k_moving | hierarchical | svd),
/// max_restarts, within, between, gap_factor. Throws ParseError on missing
/// or mistyped keys, InvalidArgument on unknown names and invalid values.
SweepSpec sweep_from_json(const nlohmann::json& j);

struct SweepRow {
  double p_in = 0.0;
  double p_out = 0.0;
  double mean_nmi = 0.0;  // NaN when a realization failed
  double std_nmi = 0.0;
  double mean_seconds = 0.0;
};

/// Seed of a realization: derive_seed(derive_seed(master, cell), realization),
/// cell = i_in · grid_size + i_out.
std::uint64_t sweep_seed(std::uint64_t master, std::size_t cell,
                         std::size_t realization);

/// Rows in (p_in, p_out) grid order regardless of `threads`.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 1);

SweepRow run_sweep_cell(const SweepSpec& spec, double p_in, double p_out,
                        std::size_t cell);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// ------------------------------------------------------------------- hist

inline constexpr std::size_t kHistogramBins = 200;  // width 0.01 over [-1, 1]
inline constexpr std::size_t kHistogramMaxNodes = 5000;

/// Counts of inner products over all unordered pairs of unit-normalized
/// nonzero rows. Bin b covers [-1 + b/100, -1 + (b+1)/100); 1 lands in the
/// last bin. Throws InvalidArgument above kHistogramMaxNodes rows.
std::vector<std::size_t> inner_product_histogram(const Matrix& X);

double histogram_bin_low(std::size_t bin);

void write_histogram_csv(std::ostream& out, const std::vector<std::size_t>& counts);

// ------------------------------------------------------------------ bench

struct BenchOptions {
  std::vector<std::size_t> sizes{500, 1000, 2000, 4000};
  std::vector<Measure> measures{Measure::browet, Measure::salton};
  int repetitions = 3;
  std::size_t roles = 3;  // cyclic role graph
  std::size_t rank = 3;
  /// Expected number of children per node inside / outside the role graph,
  /// fixed across n so that |E| grows linearly.
  double in_degree = 20.0;
  double out_degree = 2.0;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::size_t n = 0;
  Measure measure = Measure::browet;
  double seconds = 0.0;  // median over repetitions
};

/// Benchmark graph for size n: B = cyclic role graph, p_in / p_out from the
/// expected degrees.
BenchmarkSpec bench_spec(const BenchOptions& options, std::size_t n);

/// Wall time of factor + validated clustering at k = roles.
double time_pipeline(const DirectedGraph& g, Measure measure, std::size_t rank,
                     std::size_t k, std::uint64_t seed);

std::vector<BenchRow> run_bench(const BenchOptions& options);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Cyclic role graph on k roles: role a points to role a+1 mod k.
Eigen::MatrixXi cyclic_block(std::size_t k);

}  // namespace rolex
