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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rolex/clustering.hpp"
#include "rolex/commands.hpp"
#include "rolex/errors.hpp"
#include "rolex/eval.hpp"
#include "rolex/graph.hpp"
#include "rolex/k_estimate.hpp"
#include "rolex/rng.hpp"
#include "rolex/similarity.hpp"

using namespace rolex;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Eigen::MatrixXi matrix(std::initializer_list<std::initializer_list<int>> rows) {
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

// Five roles: 1 <-> 2, 2 -> 3, 3 -> 1, roles 4 and 5 self-linked.
Eigen::MatrixXi five_block_mixed() {
  return matrix({{0, 1, 0, 0, 0},
                 {1, 0, 1, 0, 0},
                 {1, 0, 0, 0, 0},
                 {0, 0, 0, 1, 0},
                 {0, 0, 0, 0, 1}});
}

// Five roles: a 3-cycle plus two self-linked roles.
Eigen::MatrixXi five_block_cycle() {
  return matrix({{0, 1, 0, 0, 0},
                 {0, 0, 1, 0, 0},
                 {1, 0, 0, 0, 0},
                 {0, 0, 0, 1, 0},
                 {0, 0, 0, 0, 1}});
}

PlantedGraph planted(const Eigen::MatrixXi& B, std::size_t per_block, double p_in,
                     double p_out, std::uint64_t seed) {
  BenchmarkSpec spec;
  spec.block = B;
  spec.sizes.assign(static_cast<std::size_t>(B.rows()), per_block);
  spec.p_in = p_in;
  spec.p_out = p_out;
  spec.seed = seed;
  return generate_planted(spec);
}

Matrix factor(const DirectedGraph& g, std::size_t rank,
              Measure measure = Measure::browet) {
  SimilarityConfig cfg;
  cfg.rank = rank;
  return compute_factor(g, measure, cfg).X;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------------------

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  double worst = 0.0;
  Rng sizes_rng(2024);
  for (std::uint64_t s = 0; s < 20; ++s) {
    BenchmarkSpec spec;
    spec.block = matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    spec.sizes.clear();
    for (int b = 0; b < 3; ++b) spec.sizes.push_back(2 + sizes_rng.below(9));  // <= 30
    spec.p_in = 0.7;
    spec.p_out = 0.15;
    spec.seed = 100 + s;
    const DirectedGraph g = generate_planted(spec).graph;
    const std::size_t n = g.node_count();

    SimilarityConfig cfg;
    cfg.rank = n;
    cfg.beta = beta_estimate(g, n);
    cfg.tol = 1e-13;
    cfg.max_iter = 2000;
    const SimilarityFactor f = browet_factor(g, cfg);
    const Matrix dense = dense_oracle(g, *cfg.beta);
    const double diff = (f.X * f.X.transpose() - dense).cwiseAbs().maxCoeff();
    worst = std::max(worst, diff);
  }
  const double elapsed = seconds_since(start);
  return {worst <= 1e-6 && elapsed < 10.0,
          "max |XX^T - S| = " + fmt(worst) + ", " + fmt(elapsed) + " s"};
}

Outcome noiseless_recovery() {
  // NMI on the mixed five-role graph.
  const PlantedGraph mixed = planted(five_block_mixed(), 100, 1.0, 0.0, 7);
  const Matrix X = factor(mixed.graph, 5);
  int exact = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto c = cluster_validated(X, 5, Rng(s));
    if (nmi(c.model.labels, mixed.truth) == 1.0) ++exact;
  }

  // Inner products on the cycle-plus-self-loops graph.
  const PlantedGraph cyc = planted(five_block_cycle(), 100, 1.0, 0.0, 7);
  const Matrix Y = factor(cyc.graph, 5);
  const auto counts = inner_product_histogram(Y);
  std::size_t total = 0;
  std::size_t inside = 0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    total += counts[b];
    // 0 sits on the edge between bins 99 and 100; 1 is in the last bin.
    if (b == 99 || b == 100 || b == counts.size() - 1) inside += counts[b];
  }
  const Matrix U = normalize_rows(Y).rows;
  const Matrix G = U * U.transpose();
  double off = 0.0;
  for (Eigen::Index i = 0; i < G.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < G.cols(); ++j) {
      const double v = G(i, j);
      off = std::max(off, std::min(std::abs(v), std::abs(v - 1.0)));
    }
  }
  const bool passed = exact == 20 && inside == total && off <= 1e-9;
  return {passed, std::to_string(exact) + "/20 seeds with NMI = 1; histogram " +
                      std::to_string(inside) + "/" + std::to_string(total) +
                      " pairs at 0 or 1, max distance to {0,1} = " + fmt(off)};
}

Outcome nmi_grid() {
  const auto start = Clock::now();
  SweepSpec spec;
  spec.benchmark.block = matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  spec.benchmark.sizes = {100, 100, 100};
  spec.benchmark.seed = 11;
  spec.grid_step = 0.25;
  spec.realizations = 5;
  spec.measure = Measure::browet;
  spec.clusterer = Clusterer::kmeans_validated;
  const auto rows =
      run_sweep(spec, std::max(1u, std::thread::hardware_concurrency()));
  const double elapsed = seconds_since(start);

  double worst_far = 1.0;
  double worst_diag = 0.0;
  bool ok = true;
  for (const auto& row : rows) {
    const double gap = std::abs(row.p_in - row.p_out);
    if (gap >= 0.5 - 1e-12) {
      if (!(row.mean_nmi >= 0.9)) ok = false;
      worst_far = std::min(worst_far, std::isnan(row.mean_nmi) ? -1.0 : row.mean_nmi);
    }
    if (gap < 1e-12 && row.p_in > 0.1 && row.p_in < 0.9) {
      if (!(row.mean_nmi <= 0.3)) ok = false;
      worst_diag = std::max(worst_diag, std::isnan(row.mean_nmi) ? 2.0 : row.mean_nmi);
    }
  }
  return {ok && elapsed < 300.0, "min NMI off-diagonal = " + fmt(worst_far) +
                                     ", max NMI on diagonal = " + fmt(worst_diag) +
                                     ", " + fmt(elapsed) + " s"};
}

Outcome svd_gap() {
  int hits = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  const auto B = matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PlantedGraph p = planted(B, 50, 0.9, 0.1, 300 + s);
    const auto est = svd_estimate(factor(p.graph, 6), 3.0);
    const double ratio = est.singular_values[2] / est.singular_values[3];
    min_ratio = std::min(min_ratio, ratio);
    if (est.k == 3 && ratio >= 3.0) ++hits;
  }
  return {hits >= 18, std::to_string(hits) + "/20 seeds with q = 3, min sigma3/sigma4 = " +
                          fmt(min_ratio)};
}

Outcome k_moving_trace() {
  int hits = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const PlantedGraph p = planted(five_block_mixed(), 100, 0.9, 0.05, 400 + s);
    const auto est = k_moving(factor(p.graph, 7), Rng(s), {});
    const bool rejected = est.steps.size() >= 2 && est.steps[0].k == 7 &&
                          !est.steps[0].passed && est.steps[1].k == 6 &&
                          !est.steps[1].passed;
    if (est.k == 5 && rejected) ++hits;
  }
  return {hits >= 18, std::to_string(hits) + "/20 seeds reach k = 5 after rejecting 7, 6"};
}

Outcome hierarchical_merges() {
  const auto B = matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  const PlantedGraph p = planted(B, 50, 1.0, 0.0, 5);
  const Matrix X = factor(p.graph, 6);
  int hits = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto est = hierarchical_estimate(X, Rng(s), {});
    if (est.k == 3 && est.merges.size() == 3) ++hits;
  }
  return {hits == 20, std::to_string(hits) + "/20 seeds with k = 3 after 3 merges"};
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

Outcome timing() {
  BenchOptions opts;
  const DirectedGraph g = generate_planted(bench_spec(opts, 2000)).graph;
  std::vector<double> t_salton;
  std::vector<double> t_browet;
  SimilarityConfig cfg;
  cfg.rank = 5;
  for (int rep = 0; rep < 5; ++rep) {
    auto start = Clock::now();
    (void)salton_factor(g, 5);
    t_salton.push_back(seconds_since(start));
    start = Clock::now();
    (void)browet_factor(g, cfg);
    t_browet.push_back(seconds_since(start));
  }
  const double ms = median(t_salton);
  const double mb = median(t_browet);

  opts.repetitions = 7;
  const auto rows = run_bench(opts);
  bool slopes_ok = true;
  std::string slopes;
  for (Measure m : opts.measures) {
    std::vector<double> n;
    std::vector<double> t;
    for (const auto& row : rows) {
      if (row.measure != m) continue;
      n.push_back(static_cast<double>(row.n));
      t.push_back(row.seconds);
    }
    const double slope = loglog_slope(n, t);
    slopes_ok = slopes_ok && slope <= 1.3;
    if (!slopes.empty()) slopes += "; ";
    slopes += std::string(to_string(m)) + " slope " + fmt(slope);
  }
  return {ms < mb && slopes_ok, "n=2000 r=5 median salton " + fmt(ms) + " s vs browet " +
                                    fmt(mb) + " s; " + slopes};
}

RolePartition random_partition(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<std::int64_t> raw(n);
  for (auto& v : raw) v = static_cast<std::int64_t>(rng.below(k));
  return RolePartition::compact(raw);
}

Outcome metric_axioms() {
  Rng rng(8);
  int failures = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.below(200);
    const RolePartition a = random_partition(rng, n, 1 + rng.below(12));
    const RolePartition b = random_partition(rng, n, 1 + rng.below(12));
    const double ab = nmi(a, b);
    const double ba = nmi(b, a);

    std::vector<Label> perm(a.cluster_count());
    std::iota(perm.begin(), perm.end(), Label{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Label> relabeled(n);
    for (std::size_t i = 0; i < n; ++i) relabeled[i] = perm[a[i]];
    const RolePartition a2(relabeled, a.cluster_count());

    bool ok = ab == ba && ab >= 0.0 && ab <= 1.0 + 1e-12 &&
              std::abs(nmi(a2, b) - ab) <= 1e-12;
    if (a.cluster_count() >= 2) ok = ok && nmi(a, a) == 1.0;
    if (!ok) ++failures;
  }
  return {failures == 0, std::to_string(failures) + "/1000 pairs violate an axiom"};
}

Outcome clustering_properties() {
  // Lloyd runs on noisy factors and random point clouds.
  int runs = 0;
  int fired = 0;
  Rng rng(9);
  for (std::uint64_t s = 0; s < 40; ++s) {
    Matrix X;
    if (s % 2 == 0) {
      const PlantedGraph p = planted(five_block_mixed(), 40, 0.6, 0.2, 500 + s);
      X = normalize_rows(factor(p.graph, 5)).rows;
    } else {
      X = Matrix::NullaryExpr(300, 4, [&] { return rng.uniform() * 2.0 - 1.0; });
    }
    for (std::size_t k = 2; k <= 8; ++k) {
      Rng seed_rng = rng.split(k);
      try {
        (void)kmeans(X, kmeans_pp_init(X, k, seed_rng));
      } catch (const std::logic_error&) {
        ++fired;
      }
      ++runs;
    }
  }

  // Over-estimated k on noiseless data.
  const PlantedGraph p = planted(five_block_cycle(), 100, 1.0, 0.0, 3);
  const Matrix X = factor(p.graph, 5);
  int rejected = 0;
  int seeding = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    try {
      if (!cluster_validated(X, 6, Rng(s)).validation.passed) ++rejected;
    } catch (const SeedingError&) {
      ++rejected;
      ++seeding;
    }
  }
  return {fired == 0 && rejected == 20,
          std::to_string(fired) + "/" + std::to_string(runs) +
              " Lloyd runs broke monotonicity; k = 6 rejected on " +
              std::to_string(rejected) + "/20 seeds (" + std::to_string(seeding) +
              " by seeding)"};
}

// Maps each found cluster to the majority truth label; empty when the map
// is not a bijection.
std::vector<Label> match_labels(const RolePartition& found, const RolePartition& truth) {
  const ContingencyTable t = contingency(found, truth);
  std::vector<Label> map(found.cluster_count());
  std::vector<bool> used(truth.cluster_count(), false);
  for (Eigen::Index x = 0; x < t.n_xy.rows(); ++x) {
    Eigen::Index best = 0;
    t.n_xy.row(x).maxCoeff(&best);
    if (used[best]) return {};
    used[best] = true;
    map[x] = static_cast<Label>(best);
  }
  return map;
}

Outcome reduced_graph() {
  const auto B = five_block_mixed();
  int hits = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const PlantedGraph p = planted(B, 100, 0.9, 0.05, 600 + s);
    const auto c = cluster_validated(factor(p.graph, 5), 5, Rng(s));
    const auto map = match_labels(c.model.labels, p.truth);
    if (map.empty()) continue;
    const ReducedGraph red = extract_reduced(p.graph, c.model.labels, 0.1);
    bool same = true;
    for (Eigen::Index a = 0; a < red.edges.rows(); ++a) {
      for (Eigen::Index b = 0; b < red.edges.cols(); ++b) {
        if (red.edges(a, b) != B(map[a], map[b])) same = false;
      }
    }
    if (same) ++hits;
  }
  return {hits >= 99, std::to_string(hits) + "/100 seeds recover B"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"noiseless recovery", noiseless_recovery},
      {"NMI grid", nmi_grid},
      {"SVD k-estimation", svd_gap},
      {"k-moving", k_moving_trace},
      {"hierarchical", hierarchical_merges},
      {"timing", timing},
      {"metric axioms", metric_axioms},
      {"clustering properties", clustering_properties},
      {"reduced graph", reduced_graph},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.passed) ++failed;
    std::printf("%s %2zu %-22s %s\n", o.passed ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
