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

// rolex: role extraction on directed graphs.
//
// Exit codes: 0 success, 2 validation failure (passed = false or no
// acceptable k), 1 any other error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rolex/commands.hpp"
#include "rolex/errors.hpp"
#include "rolex/eval.hpp"
#include "rolex/io.hpp"

namespace fs = std::filesystem;
using namespace rolex;

namespace {

constexpr int kExitError = 1;
constexpr int kExitValidation = 2;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

// Writes to `path`, or to stdout for "-".
template <typename Write>
void emit(const std::string& path, Write write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  auto out = open_out(path);
  write(out);
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

struct SimilarityFlags {
  std::string measure = "browet";
  std::size_t rank = 3;
  std::optional<double> beta;
  double tol = 1e-6;
  int max_iter = 100;

  void attach(CLI::App* cmd) {
    cmd->add_option("--measure", measure, "Similarity measure: browet or salton")
        ->capture_default_str();
    cmd->add_option("-r,--rank", rank, "Rank r of the similarity factor")
        ->capture_default_str();
    cmd->add_option("--beta", beta,
                    "Scaling of long patterns (browet); default: automatic bound");
    cmd->add_option("--tol", tol, "Convergence tolerance of the low-rank iteration")
        ->capture_default_str();
    cmd->add_option("--max-iter", max_iter, "Iteration cap of the low-rank iteration")
        ->capture_default_str();
  }

  SimilarityConfig config() const {
    SimilarityConfig cfg;
    cfg.rank = rank;
    cfg.beta = beta;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    return cfg;
  }
};

struct ClusterFlags {
  double within = 0.9;
  double between = 0.7;
  int max_restarts = 50;
  double gap_factor = 3.0;
  bool raw = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--within", within, "Minimum row/centroid inner product")
        ->capture_default_str();
    cmd->add_option("--between", between, "Maximum centroid/centroid inner product")
        ->capture_default_str();
    cmd->add_option("--max-restarts", max_restarts, "k-means restarts per k")
        ->capture_default_str();
    cmd->add_option("--gap-factor", gap_factor, "Singular value ratio for the svd method")
        ->capture_default_str();
    cmd->add_flag("--raw-rows", raw, "Cluster raw factor rows instead of unit rows");
  }

  KEstimateConfig config() const {
    KEstimateConfig cfg;
    cfg.cluster.thresholds = {within, between};
    cfg.cluster.max_restarts = max_restarts;
    cfg.cluster.normalize = !raw;
    cfg.gap_factor = gap_factor;
    return cfg;
  }
};

DirectedGraph read_graph(const std::string& path, bool one_indexed, bool keep_weights) {
  auto in = open_in(path);
  EdgeListOptions options;
  options.one_indexed = one_indexed;
  options.ignore_weights = !keep_weights;
  return load_edge_list(in, options);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rolex - role extraction for directed graphs"};
  app.require_subcommand(1);

  // generate
  std::string gen_spec;
  std::string gen_edges = "graph.txt";
  std::string gen_truth = "truth.csv";
  auto* generate = app.add_subcommand("generate", "Sample a planted-partition graph");
  generate->add_option("spec", gen_spec, "Benchmark spec JSON")->required();
  generate->add_option("--edges", gen_edges, "Edge list output")->capture_default_str();
  generate->add_option("--truth", gen_truth, "Ground-truth partition CSV output")
      ->capture_default_str();

  // extract
  std::string ext_graph;
  bool one_indexed = false;
  bool keep_weights = false;
  SimilarityFlags ext_sim;
  ClusterFlags ext_cluster;
  std::optional<std::size_t> ext_k;
  std::string ext_k_mode;
  std::uint64_t ext_seed = 0;
  double ext_threshold = 0.1;
  std::string ext_out = ".";
  bool ext_factor = false;
  auto* extract = app.add_subcommand("extract", "Extract roles from an edge list");
  extract->add_option("graph", ext_graph, "Edge list")->required();
  extract->add_flag("--one-indexed", one_indexed, "Node ids start at 1");
  extract->add_flag("--zero-weight-drops", keep_weights,
                    "Drop lines whose third column is 0");
  ext_sim.attach(extract);
  ext_cluster.attach(extract);
  auto* k_opt = extract->add_option("-k,--k", ext_k, "Fixed number of roles");
  auto* mode_opt = extract->add_option("--k-mode", ext_k_mode,
                                       "Estimate k: k_moving, hierarchical or svd");
  k_opt->excludes(mode_opt);
  extract->add_option("--seed", ext_seed, "Clustering seed")->capture_default_str();
  extract->add_option("--threshold", ext_threshold, "Reduced-graph block density threshold")
      ->capture_default_str();
  extract->add_option("-o,--out-dir", ext_out, "Output directory")->capture_default_str();
  extract->add_flag("--write-factor", ext_factor, "Also write factor.csv and factor.json");

  // sweep
  std::string sweep_spec_path;
  std::string sweep_out = "-";
  unsigned sweep_threads = std::max(1u, std::thread::hardware_concurrency());
  auto* sweep = app.add_subcommand("sweep", "NMI over a (p_in, p_out) grid");
  sweep->add_option("spec", sweep_spec_path, "Sweep spec JSON")->required();
  sweep->add_option("-o,--out", sweep_out, "CSV output ('-' for stdout)")
      ->capture_default_str();
  sweep->add_option("--threads", sweep_threads, "Worker threads")->capture_default_str();

  // hist
  std::string hist_graph;
  std::string hist_out = "-";
  SimilarityFlags hist_sim;
  bool hist_one_indexed = false;
  auto* hist = app.add_subcommand("hist", "Histogram of pairwise row inner products");
  hist->add_option("graph", hist_graph, "Edge list")->required();
  hist->add_flag("--one-indexed", hist_one_indexed, "Node ids start at 1");
  hist_sim.attach(hist);
  hist->add_option("-o,--out", hist_out, "CSV output ('-' for stdout)")
      ->capture_default_str();

  // bench
  BenchOptions bench_opts;
  std::vector<std::string> bench_measures{"browet", "salton"};
  std::string bench_out = "-";
  auto* bench = app.add_subcommand("bench", "Time factor + clustering against n");
  bench->add_option("--sizes", bench_opts.sizes, "Node counts")->delimiter(',')
      ->capture_default_str();
  bench->add_option("--measures", bench_measures, "Measures")->delimiter(',')
      ->capture_default_str();
  bench->add_option("--repetitions", bench_opts.repetitions, "Repetitions (median)")
      ->capture_default_str();
  bench->add_option("--roles", bench_opts.roles, "Roles in the cyclic role graph")
      ->capture_default_str();
  bench->add_option("-r,--rank", bench_opts.rank, "Factor rank")->capture_default_str();
  bench->add_option("--in-degree", bench_opts.in_degree,
                    "Expected children per node along role edges")
      ->capture_default_str();
  bench->add_option("--out-degree", bench_opts.out_degree,
                    "Expected noise children per node")
      ->capture_default_str();
  bench->add_option("--seed", bench_opts.seed, "Seed")->capture_default_str();
  bench->add_option("-o,--out", bench_out, "CSV output ('-' for stdout)")
      ->capture_default_str();

  // nmi
  std::string nmi_a;
  std::string nmi_b;
  auto* nmi_cmd = app.add_subcommand("nmi", "Score two partition CSV files");
  nmi_cmd->add_option("first", nmi_a, "Partition CSV")->required();
  nmi_cmd->add_option("second", nmi_b, "Partition CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*generate) {
      auto in = open_in(gen_spec);
      const BenchmarkSpec spec = benchmark_from_json(nlohmann::json::parse(in));
      const PlantedGraph planted = generate_planted(spec);
      emit(gen_edges, [&](std::ostream& out) { write_edge_list(out, planted.graph); });
      emit(gen_truth, [&](std::ostream& out) { write_partition_csv(out, planted.truth); });
      std::cout << planted.graph.edge_count() << '\n';
      return 0;
    }

    if (*extract) {
      if (!ext_k && ext_k_mode.empty()) {
        throw InvalidArgument("extract needs --k or --k-mode");
      }
      const DirectedGraph g = read_graph(ext_graph, one_indexed, keep_weights);
      ExtractOptions options;
      options.measure = parse_measure(ext_sim.measure);
      options.similarity = ext_sim.config();
      options.k = ext_k;
      if (!ext_k_mode.empty()) options.k_method = parse_k_method(ext_k_mode);
      options.seed = ext_seed;
      options.estimate = ext_cluster.config();
      options.reduced_threshold = ext_threshold;

      const ExtractResult result = run_extract(g, options);
      const fs::path dir(ext_out);
      fs::create_directories(dir);
      if (ext_factor) {
        auto out = open_out(dir / "factor.csv");
        write_factor_csv(out, result.factor.X);
        write_json(dir / "factor.json", factor_sidecar_json(result.factor));
      }
      if (result.estimate) write_json(dir / "estimate.json", estimate_json(*result.estimate));
      if (!result.clustering) {
        std::cerr << "no acceptable number of roles found\n";
        return kExitValidation;
      }
      {
        auto out = open_out(dir / "partition.csv");
        write_partition_csv(out, result.clustering->model.labels);
      }
      write_json(dir / "validation.json", validation_json(*result.clustering));
      write_json(dir / "reduced.json", to_json(*result.reduced));
      std::cout << "k = " << result.clustering->model.labels.cluster_count()
                << ", validation " << (result.clustering->validation.passed ? "passed" : "failed")
                << '\n';
      return result.clustering->validation.passed ? 0 : kExitValidation;
    }

    if (*sweep) {
      auto in = open_in(sweep_spec_path);
      const SweepSpec spec = sweep_from_json(nlohmann::json::parse(in));
      const auto rows = run_sweep(spec, sweep_threads);
      emit(sweep_out, [&](std::ostream& out) { write_sweep_csv(out, rows); });
      return 0;
    }

    if (*hist) {
      const DirectedGraph g = read_graph(hist_graph, hist_one_indexed, false);
      const SimilarityFactor factor =
          compute_factor(g, parse_measure(hist_sim.measure), hist_sim.config());
      const auto counts = inner_product_histogram(factor.X);
      emit(hist_out, [&](std::ostream& out) { write_histogram_csv(out, counts); });
      return 0;
    }

    if (*bench) {
      bench_opts.measures.clear();
      for (const auto& m : bench_measures) bench_opts.measures.push_back(parse_measure(m));
      const auto rows = run_bench(bench_opts);
      emit(bench_out, [&](std::ostream& out) { write_bench_csv(out, rows); });
      return 0;
    }

    if (*nmi_cmd) {
      auto a_in = open_in(nmi_a);
      auto b_in = open_in(nmi_b);
      const RolePartition a = read_partition_csv(a_in);
      const RolePartition b = read_partition_csv(b_in);
      std::cout << std::setprecision(12) << nmi(a, b) << '\n';
      return 0;
    }
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
