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

#include "doctest.h"

#include <cmath>

#include "rolex/errors.hpp"
#include "rolex/eval.hpp"
#include "rolex/rng.hpp"

using namespace rolex;

namespace {

RolePartition part(std::vector<Label> labels) {
  std::size_t k = 0;
  for (Label l : labels) k = std::max<std::size_t>(k, l + 1);
  return RolePartition(std::move(labels), k);
}

}  // namespace

TEST_CASE("contingency table") {
  const ContingencyTable t = contingency(part({0, 0, 1, 1, 2}), part({1, 0, 0, 0, 0}));
  CHECK(t.n == 5);
  CHECK(t.n_x == std::vector<std::size_t>{2, 2, 1});
  CHECK(t.n_y == std::vector<std::size_t>{4, 1});
  CHECK(t.n_xy(0, 0) == 1);
  CHECK(t.n_xy(0, 1) == 1);
  CHECK(t.n_xy(1, 0) == 2);
  CHECK(t.n_xy(2, 0) == 1);
  CHECK_THROWS_AS(contingency(part({0, 1}), part({0})), DimensionError);
}

TEST_CASE("entropy") {
  const std::vector<std::size_t> one{4};
  const std::vector<std::size_t> half{2, 2};
  const std::vector<std::size_t> skew{1, 3};
  const std::vector<std::size_t> with_zero{0, 2, 2};
  CHECK(entropy(one, 4) == 0.0);
  CHECK(entropy(half, 4) == doctest::Approx(std::log(2.0)));
  CHECK(entropy(skew, 4) == doctest::Approx(0.5623351446));
  CHECK(entropy(with_zero, 4) == entropy(half, 4));
}

TEST_CASE("normalized mutual information") {
  const RolePartition a = part({0, 0, 1, 1});
  CHECK(nmi(a, a) == 1.0);
  CHECK(nmi(a, part({1, 1, 0, 0})) == 1.0);
  CHECK(nmi(a, part({0, 1, 0, 1})) == doctest::Approx(0.0));
  CHECK(nmi(part({0, 0, 0}), part({0, 0, 0})) == 1.0);
  CHECK(nmi(part({0, 0, 0, 0}), a) == 0.0);

  // Splitting one of two clusters: I = ln 2, H(b) = 1.5 ln 2.
  const RolePartition b = part({0, 0, 1, 2});
  CHECK(nmi(a, b) == doctest::Approx(1.0 / std::sqrt(1.5)));
  CHECK(mutual_information(contingency(a, b)) == doctest::Approx(std::log(2.0)));
  CHECK(joint_entropy(contingency(a, b)) == doctest::Approx(1.5 * std::log(2.0)));
}

TEST_CASE("nmi properties on random pairs") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(60);
    const std::size_t ka = 1 + rng.below(6);
    const std::size_t kb = 1 + rng.below(6);
    std::vector<Label> la(n);
    std::vector<Label> lb(n);
    for (std::size_t i = 0; i < n; ++i) {
      la[i] = static_cast<Label>(rng.below(ka));
      lb[i] = static_cast<Label>(rng.below(kb));
    }
    const RolePartition a = part(la);
    const RolePartition b = part(lb);
    const double v = nmi(a, b);
    CHECK(v == nmi(b, a));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(nmi(a, a) == 1.0);
    // Relabel a by reversing its label order.
    std::vector<Label> flipped = la;
    for (Label& l : flipped) l = static_cast<Label>(ka - 1 - l);
    CHECK(std::abs(nmi(part(flipped), b) - v) < 1e-12);
  }
}
