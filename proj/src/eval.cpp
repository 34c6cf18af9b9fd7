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

#include "rolex/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rolex/errors.hpp"

namespace rolex {

ContingencyTable contingency(const RolePartition& a, const RolePartition& b) {
  if (a.size() != b.size()) {
    throw DimensionError("partitions have " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " nodes");
  }
  ContingencyTable t;
  t.n = a.size();
  t.n_x = a.cluster_sizes();
  t.n_y = b.cluster_sizes();
  t.n_xy.setZero(static_cast<Eigen::Index>(a.cluster_count()),
                 static_cast<Eigen::Index>(b.cluster_count()));
  for (std::size_t i = 0; i < a.size(); ++i) ++t.n_xy(a[i], b[i]);
  return t;
}

double entropy(std::span<const std::size_t> counts, std::size_t n) {
  if (n == 0) return 0.0;
  const auto total = static_cast<double>(n);
  // Same term shape and summation order as mutual_information, so that
  // I(a, a) and H(a) agree to the last bit.
  std::vector<double> terms;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const auto count = static_cast<double>(c);
    terms.push_back(count / total * std::log(total / count));
  }
  std::sort(terms.begin(), terms.end());
  double h = 0.0;
  for (double t : terms) h += t;
  return h;
}

double joint_entropy(const ContingencyTable& table) {
  const auto total = static_cast<double>(table.n);
  double h = 0.0;
  for (Eigen::Index x = 0; x < table.n_xy.rows(); ++x) {
    for (Eigen::Index y = 0; y < table.n_xy.cols(); ++y) {
      const std::size_t c = table.n_xy(x, y);
      if (c == 0) continue;
      const double p = static_cast<double>(c) / total;
      h -= p * std::log(p);
    }
  }
  return h;
}

double mutual_information(const ContingencyTable& table) {
  const auto total = static_cast<double>(table.n);
  std::vector<double> terms;
  for (Eigen::Index x = 0; x < table.n_xy.rows(); ++x) {
    for (Eigen::Index y = 0; y < table.n_xy.cols(); ++y) {
      const std::size_t c = table.n_xy(x, y);
      if (c == 0) continue;
      // p(x,y) log(p(x,y) / (p(x) p(y))) with the n factors folded together.
      const double ratio = static_cast<double>(c) * total /
                           (static_cast<double>(table.n_x[x]) *
                            static_cast<double>(table.n_y[y]));
      terms.push_back(static_cast<double>(c) / total * std::log(ratio));
    }
  }
  // Summation order must not depend on which partition came first.
  std::sort(terms.begin(), terms.end());
  double info = 0.0;
  for (double t : terms) info += t;
  return info;
}

double nmi(const RolePartition& a, const RolePartition& b) {
  const ContingencyTable table = contingency(a, b);
  if (table.n == 0) throw InvalidArgument("nmi of empty partitions");
  const double ha = entropy(table.n_x, table.n);
  const double hb = entropy(table.n_y, table.n);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  if (ha == 0.0 || hb == 0.0) return 0.0;
  const double raw = mutual_information(table) / std::sqrt(ha * hb);
  if (raw > 1.0 + 1e-9 || raw < -1e-9) {
    throw std::logic_error("nmi out of range before clamping: " + std::to_string(raw));
  }
  return std::clamp(raw, 0.0, 1.0);
}

}  // namespace rolex
