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

#include "rolex/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "rolex/errors.hpp"
#include "rolex/eval.hpp"
#include "rolex/io.hpp"
#include "rolex/rng.hpp"

namespace rolex {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "NaN";
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

}  // namespace

// ---------------------------------------------------------------- extract

ExtractResult run_extract(const DirectedGraph& g, const ExtractOptions& options) {
  if (options.k.has_value() == options.k_method.has_value()) {
    throw InvalidArgument("give either a fixed k or a k estimation method");
  }
  const Rng master(options.seed);

  ExtractResult result;
  result.factor = compute_factor(g, options.measure, options.similarity);
  const Matrix& X = result.factor.X;

  std::size_t k = 0;
  if (options.k) {
    k = *options.k;
    if (k < 1) throw InvalidArgument("k must be at least 1");
    result.clustering = cluster_validated(X, k, master.split(1), options.estimate.cluster);
  } else {
    switch (*options.k_method) {
      case KMethod::k_moving:
        result.estimate = k_moving(X, master.split(2), options.estimate);
        break;
      case KMethod::hierarchical:
        result.estimate = hierarchical_estimate(X, master.split(2), options.estimate);
        break;
      case KMethod::svd:
        result.estimate = svd_estimate(X, options.estimate.gap_factor);
        break;
    }
    k = result.estimate->k;
    if (k == 0) return result;
    if (result.estimate->clustering) {
      result.clustering = result.estimate->clustering;
    } else {
      result.clustering =
          cluster_validated(X, k, master.split(1), options.estimate.cluster);
    }
  }

  // A returned model never has an empty cluster.
  result.reduced =
      extract_reduced(g, result.clustering->model.labels, options.reduced_threshold);
  return result;
}

nlohmann::json validation_json(const ValidatedClustering& c) {
  return {{"min_within", c.validation.min_within},
          {"max_between", c.validation.max_between},
          {"passed", c.validation.passed},
          {"restarts_used", c.model.restarts_used},
          {"objective", c.model.objective}};
}

nlohmann::json estimate_json(const KEstimateResult& e) {
  nlohmann::json trace = nlohmann::json::object();
  switch (e.method) {
    case KMethod::k_moving: {
      nlohmann::json steps = nlohmann::json::array();
      for (const auto& s : e.steps) {
        nlohmann::json step = {{"k", s.k},
                               {"passed", s.passed},
                               {"min_within", s.min_within},
                               {"max_between", s.max_between}};
        if (!s.note.empty()) step["note"] = s.note;
        steps.push_back(std::move(step));
      }
      trace["steps"] = std::move(steps);
      break;
    }
    case KMethod::hierarchical: {
      nlohmann::json merges = nlohmann::json::array();
      for (const auto& m : e.merges) {
        merges.push_back({{"kept", m.kept},
                          {"merged", m.merged},
                          {"distance", m.distance},
                          {"cosine", m.cosine}});
      }
      trace["subclusters"] = e.subclusters;
      trace["merges"] = std::move(merges);
      break;
    }
    case KMethod::svd:
      trace["singular_values"] = e.singular_values;
      break;
  }
  nlohmann::json out = {{"method", std::string(to_string(e.method))},
                        {"k", e.k},
                        {"trace", std::move(trace)}};
  if (!e.note.empty()) out["note"] = e.note;
  return out;
}

nlohmann::json factor_sidecar_json(const SimilarityFactor& f) {
  return {{"measure", std::string(to_string(f.measure))},
          {"r", f.rank()},
          {"beta", f.beta},
          {"iterations", f.iterations},
          {"converged", f.converged}};
}

void write_factor_csv(std::ostream& out, const Matrix& X) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      if (c > 0) out << ',';
      out << X(i, c);
    }
    out << "\r\n";
  }
}

// ------------------------------------------------------------------ sweep

void SweepSpec::validate() const {
  benchmark.validate();
  if (!(grid_step > 0.0 && grid_step <= 0.5)) {
    throw InvalidArgument("grid_step must lie in (0, 0.5]");
  }
  if (realizations < 1) throw InvalidArgument("realizations must be at least 1");
  const std::size_t effective_rank = rank == 0 ? benchmark.sizes.size() : rank;
  if (k_method == KMethod::svd && effective_rank < 2) {
    throw InvalidArgument("the svd method needs r >= 2");
  }
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> points;
  const auto steps = static_cast<std::size_t>(std::floor(1.0 / grid_step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) {
    points.push_back(std::min(1.0, static_cast<double>(i) * grid_step));
  }
  if (points.back() < 1.0 - 1e-12) points.push_back(1.0);
  return points;
}

SweepSpec sweep_from_json(const nlohmann::json& j) {
  try {
    SweepSpec spec;
    spec.benchmark = benchmark_from_json(j.at("benchmark"));
    spec.grid_step = j.value("grid_step", 0.05);
    spec.realizations = j.value("realizations", 20);
    spec.measure = parse_measure(j.value("measure", std::string("browet")));
    const std::string clusterer = j.value("clusterer", std::string("kmeans_validated"));
    if (clusterer == "kmeans") {
      spec.clusterer = Clusterer::kmeans;
    } else if (clusterer == "kmeans_validated") {
      spec.clusterer = Clusterer::kmeans_validated;
    } else {
      throw InvalidArgument("unknown clusterer '" + clusterer + "'");
    }
    spec.rank = j.value("r", std::size_t{0});
    const std::string mode = j.value("k_mode", std::string("fixed"));
    if (mode != "fixed") spec.k_method = parse_k_method(mode);
    spec.estimate.cluster.max_restarts = j.value("max_restarts", 50);
    spec.estimate.cluster.thresholds.within = j.value("within", 0.9);
    spec.estimate.cluster.thresholds.between = j.value("between", 0.7);
    spec.estimate.gap_factor = j.value("gap_factor", 3.0);
    spec.tol = j.value("tol", 1e-6);
    spec.max_iter = j.value("max_iter", 100);
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("sweep spec: ") + e.what());
  }
}

std::uint64_t sweep_seed(std::uint64_t master, std::size_t cell,
                         std::size_t realization) {
  return derive_seed(derive_seed(master, cell), realization);
}

SweepRow run_sweep_cell(const SweepSpec& spec, double p_in, double p_out,
                        std::size_t cell) {
  SweepRow row{p_in, p_out, 0.0, 0.0, 0.0};
  const std::size_t roles = spec.benchmark.sizes.size();
  const std::size_t rank = spec.rank == 0 ? roles : spec.rank;

  std::vector<double> scores;
  double total_seconds = 0.0;
  bool failed = false;
  for (int rep = 0; rep < spec.realizations; ++rep) {
    BenchmarkSpec bench = spec.benchmark;
    bench.p_in = p_in;
    bench.p_out = p_out;
    bench.seed = sweep_seed(spec.benchmark.seed, cell, static_cast<std::size_t>(rep));
    const PlantedGraph planted = generate_planted(bench);

    ExtractOptions options;
    options.measure = spec.measure;
    options.similarity.rank = rank;
    options.similarity.tol = spec.tol;
    options.similarity.max_iter = spec.max_iter;
    options.seed = bench.seed;
    options.estimate = spec.estimate;
    if (spec.clusterer == Clusterer::kmeans) options.estimate.cluster.max_restarts = 1;
    if (spec.k_method) {
      options.k_method = spec.k_method;
    } else {
      options.k = roles;
    }

    const auto start = Clock::now();
    try {
      const ExtractResult result = run_extract(planted.graph, options);
      total_seconds += seconds_since(start);
      if (!result.clustering) {
        failed = true;
        continue;
      }
      scores.push_back(nmi(planted.truth, result.clustering->model.labels));
    } catch (const Error&) {
      total_seconds += seconds_since(start);
      failed = true;
    }
  }

  row.mean_seconds = total_seconds / spec.realizations;
  if (failed || scores.empty()) {
    row.mean_nmi = std::numeric_limits<double>::quiet_NaN();
    row.std_nmi = std::numeric_limits<double>::quiet_NaN();
    return row;
  }
  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());
  double var = 0.0;
  for (double s : scores) var += (s - mean) * (s - mean);
  var /= static_cast<double>(scores.size());
  row.mean_nmi = mean;
  row.std_nmi = std::sqrt(var);
  return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const std::vector<double> grid = spec.grid();
  const std::size_t g = grid.size();
  std::vector<SweepRow> rows(g * g);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t cell = next++; cell < rows.size(); cell = next++) {
      rows[cell] = run_sweep_cell(spec, grid[cell / g], grid[cell % g], cell);
    }
  };
  threads = std::max(1u, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "p_in,p_out,mean_nmi,std_nmi,mean_seconds\r\n";
  for (const auto& r : rows) {
    out << csv_number(r.p_in) << ',' << csv_number(r.p_out) << ','
        << csv_number(r.mean_nmi) << ',' << csv_number(r.std_nmi) << ','
        << csv_number(r.mean_seconds) << "\r\n";
  }
}

// ------------------------------------------------------------------- hist

std::vector<std::size_t> inner_product_histogram(const Matrix& X) {
  if (static_cast<std::size_t>(X.rows()) > kHistogramMaxNodes) {
    throw InvalidArgument("histogram over " + std::to_string(X.rows()) +
                          " rows exceeds the limit of " +
                          std::to_string(kHistogramMaxNodes));
  }
  const NormalizedRows unit = normalize_rows(X);
  std::vector<bool> zero(static_cast<std::size_t>(X.rows()), false);
  for (std::size_t i : unit.zero_rows) zero[i] = true;

  std::vector<std::size_t> counts(kHistogramBins, 0);
  const Matrix gram_rows = unit.rows;  // n x r
  for (Eigen::Index i = 0; i < gram_rows.rows(); ++i) {
    if (zero[i]) continue;
    for (Eigen::Index j = i + 1; j < gram_rows.rows(); ++j) {
      if (zero[j]) continue;
      const double v = gram_rows.row(i).dot(gram_rows.row(j));
      const double pos = std::floor(v * 100.0 + 100.0);
      const auto bin = static_cast<std::size_t>(
          std::clamp(pos, 0.0, static_cast<double>(kHistogramBins - 1)));
      ++counts[bin];
    }
  }
  return counts;
}

double histogram_bin_low(std::size_t bin) {
  return -1.0 + static_cast<double>(bin) / 100.0;
}

void write_histogram_csv(std::ostream& out, const std::vector<std::size_t>& counts) {
  out << "bin_low,count\r\n";
  out << std::fixed << std::setprecision(2);
  for (std::size_t b = 0; b < counts.size(); ++b) {
    // Avoid printing "-0.00" for the bin starting at zero.
    const double low = std::abs(histogram_bin_low(b)) < 1e-12 ? 0.0 : histogram_bin_low(b);
    out << low << ',' << counts[b] << "\r\n";
  }
  out.unsetf(std::ios::fixed);
}

// ------------------------------------------------------------------ bench

Eigen::MatrixXi cyclic_block(std::size_t k) {
  const auto size = static_cast<Eigen::Index>(k);
  Eigen::MatrixXi b = Eigen::MatrixXi::Zero(size, size);
  for (Eigen::Index a = 0; a < size; ++a) b(a, (a + 1) % size) = 1;
  return b;
}

BenchmarkSpec bench_spec(const BenchOptions& options, std::size_t n) {
  if (options.roles < 1 || n < options.roles) {
    throw InvalidArgument("bench size must be at least the number of roles");
  }
  BenchmarkSpec spec;
  spec.block = cyclic_block(options.roles);
  spec.sizes.assign(options.roles, n / options.roles);
  for (std::size_t extra = 0; extra < n % options.roles; ++extra) ++spec.sizes[extra];
  const double block_size = static_cast<double>(n) / static_cast<double>(options.roles);
  const double outside = static_cast<double>(n) - block_size;
  spec.p_in = std::min(1.0, options.in_degree / block_size);
  spec.p_out = outside > 0.0 ? std::min(1.0, options.out_degree / outside) : 0.0;
  spec.seed = derive_seed(options.seed, n);
  return spec;
}

double time_pipeline(const DirectedGraph& g, Measure measure, std::size_t rank,
                     std::size_t k, std::uint64_t seed) {
  SimilarityConfig cfg;
  cfg.rank = rank;
  const auto start = Clock::now();
  const SimilarityFactor factor = compute_factor(g, measure, cfg);
  const auto clustering = cluster_validated(factor.X, k, Rng(seed));
  const double seconds = seconds_since(start);
  // Keep the optimizer honest about the result being used.
  if (clustering.model.labels.size() != g.node_count()) {
    throw std::logic_error("clustering lost nodes");
  }
  return seconds;
}

std::vector<BenchRow> run_bench(const BenchOptions& options) {
  if (options.repetitions < 1) throw InvalidArgument("repetitions must be at least 1");
  std::vector<BenchRow> rows;
  for (std::size_t n : options.sizes) {
    const PlantedGraph planted = generate_planted(bench_spec(options, n));
    for (Measure m : options.measures) {
      std::vector<double> times;
      for (int rep = 0; rep < options.repetitions; ++rep) {
        times.push_back(time_pipeline(planted.graph, m, options.rank, options.roles,
                                      derive_seed(options.seed, static_cast<std::uint64_t>(rep))));
      }
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      const double median = times.size() % 2 == 1
                                ? times[mid]
                                : 0.5 * (times[mid - 1] + times[mid]);
      rows.push_back({n, m, median});
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "n,measure,seconds\r\n";
  for (const auto& r : rows) {
    out << r.n << ',' << to_string(r.measure) << ',' << csv_number(r.seconds) << "\r\n";
  }
}

}  // namespace rolex
