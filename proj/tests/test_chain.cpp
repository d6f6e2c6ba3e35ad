// Copyright 2026 The Authors.
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

#include <algorithm>
#include <cmath>
#include <random>

#include "confband/chain.hpp"
#include "confband/oracle.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace confband;
using confband::testing::example_one;
using confband::testing::example_two;

namespace {

bool strict_subset(const Members& a, const Members& b) {
  return a.size() < b.size() &&
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Distinct exhaustive optima over a grid of alphas finer than delta / n^2.
std::vector<Members> swept_bands(const SeriesMatrix& matrix) {
  const auto subsets = seed_subsets(matrix);
  const double tolerance = oracle_tolerance(matrix);
  const double n = static_cast<double>(matrix.series_count());
  const double step = delta_gap(matrix) / (n * n) / 2.0;
  const double top = area_score(matrix, all_series(matrix)) + 1.0;
  std::vector<Members> out;
  for (double alpha = step; alpha <= top; alpha += step) {
    const Members& members = best_regularized(subsets, alpha, tolerance).members;
    if (out.empty() || out.back() != members) out.push_back(members);
  }
  return out;
}

}  // namespace

TEST_CASE("delta gap") {
  CHECK(delta_gap(example_two()) == 1.0);
  CHECK(delta_gap(example_one()) == 1.0);
  CHECK(delta_gap(SeriesMatrix::from_rows({{0.0}, {0.25}, {1.0}}, 0)) == 0.25);
  CHECK_THROWS_WITH_AS(
      delta_gap(SeriesMatrix::from_rows({{1.0, 2.0}, {1.0, 2.0}}, 0)),
      "degenerate data", InvalidInput);
}

TEST_CASE("chain of the two-series example") {
  const auto chain = enumerate_chain(example_two());
  REQUIRE(chain.size() == 2);
  CHECK(chain.bands[0].members == Members{0});
  CHECK(chain.bands[1].members == Members{0, 1});
  CHECK(chain.breakpoints == std::vector<double>{3.0});
  CHECK(chain.delta == 1.0);
  CHECK(chain.first_inclusion == std::vector<std::size_t>{0, 1});
}

TEST_CASE("chain of the constant example skips the pair") {
  const auto chain = enumerate_chain(example_one());
  REQUIRE(chain.size() == 2);
  CHECK(chain.bands[0].members == Members{0});
  CHECK(chain.bands[1].members == Members{0, 1, 2, 3});
  CHECK(chain.breakpoints == std::vector<double>{1.0});
  CHECK(chain.first_inclusion == std::vector<std::size_t>{0, 1, 1, 1});
  CHECK(chain.regband_calls == 2);
}

TEST_CASE("identical series form a single band") {
  const auto matrix =
      SeriesMatrix::from_rows({{4.0, 1.0}, {4.0, 1.0}, {4.0, 1.0}}, 2);
  const auto chain = enumerate_chain(matrix);
  REQUIRE(chain.size() == 1);
  CHECK(chain.bands[0].members == Members{0, 1, 2});
  CHECK(chain.breakpoints.empty());
  CHECK_FALSE(chain.delta.has_value());
  CHECK(enumerate_chain(SeriesMatrix::from_rows({{1.0}}, 0)).size() == 1);
}

TEST_CASE("seed duplicates belong to the innermost band") {
  const auto matrix =
      SeriesMatrix::from_rows({{0.0, 1.0}, {0.0, 1.0}, {3.0, 1.0}, {0.0, 5.0}}, 0);
  const auto chain = enumerate_chain(matrix);
  CHECK(chain.bands[0].members == Members{0, 1});
}

TEST_CASE("solutions form a chain in alpha") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto matrix = confband::testing::random_small(rng, 2, 8, 5);
    double a = 0.05 * static_cast<double>(1 + rng() % 100);
    double b = 0.05 * static_cast<double>(1 + rng() % 100);
    if (a == b) b += 0.05;
    if (a > b) std::swap(a, b);
    const auto small = solve_regband(matrix, a).band.members;
    const auto large = solve_regband(matrix, b).band.members;
    CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("enumerated chain matches an exhaustive alpha sweep") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 120; ++trial) {
    const auto matrix = confband::testing::random_small(rng, 2, 7, 4);
    CAPTURE(trial);
    const auto chain = enumerate_chain(matrix);
    std::vector<Members> members;
    for (const auto& band : chain.bands) members.push_back(band.members);
    if (!chain.delta) {
      CHECK(chain.size() == 1);
      continue;
    }
    CHECK(members == swept_bands(matrix));
    CHECK(chain.size() <= matrix.series_count() + 1);
    CHECK(chain.regband_calls <= 2 * chain.size() + 2);

    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      CHECK(strict_subset(members[j], members[j + 1]));
      CHECK(chain.bands[j].area < chain.bands[j + 1].area);
      if (j + 2 < chain.size()) {
        CHECK(chain.breakpoints[j] < chain.breakpoints[j + 1]);
      }
    }
    for (std::size_t l = 0; l < matrix.series_count(); ++l) {
      const std::size_t first = chain.first_inclusion[l];
      CHECK(chain.bands[first].contains(l));
      if (first > 0) CHECK_FALSE(chain.bands[first - 1].contains(l));
    }
  }
}

TEST_CASE("each band is optimal exactly between its breakpoints") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    const auto matrix = confband::testing::random_small(rng, 2, 8, 4);
    const auto chain = enumerate_chain(matrix);
    for (std::size_t j = 0; j < chain.size(); ++j) {
      const double lo = j == 0 ? 0.0 : chain.breakpoints[j - 1];
      const double hi = j + 1 < chain.size() ? chain.breakpoints[j]
                                             : lo + 10.0;
      for (double t : {0.0, 0.3, 0.7}) {
        const double alpha = lo + t * (hi - lo);
        if (alpha <= 0.0) continue;
        CHECK(solve_regband(matrix, alpha).band.members ==
              chain.bands[j].members);
      }
      if (j > 0) {
        // At the left breakpoint the tie goes to the larger band.
        CHECK(solve_regband(matrix, lo).band.members == chain.bands[j].members);
      }
    }
  }
}

TEST_CASE("next band is the sparsest extension") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 80; ++trial) {
    const auto matrix = confband::testing::random_small(rng, 2, 8, 4);
    const auto chain = enumerate_chain(matrix);
    const auto subsets = seed_subsets(matrix);
    for (std::size_t j = 0; j + 1 < chain.size(); ++j) {
      const Band& inner = chain.bands[j];
      double best = std::numeric_limits<double>::infinity();
      for (const auto& s : subsets) {
        if (!strict_subset(inner.members, s.members)) continue;
        best = std::min(best, (s.area - inner.area) /
                                  static_cast<double>(s.members.size() - inner.size()));
      }
      CHECK(chain.breakpoints[j] == doctest::Approx(best).epsilon(1e-9));
    }
  }
}

TEST_CASE("restriction, parallelism and arithmetic do not change the chain") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    InstanceSpec spec;
    spec.n = 5 + rng() % 30;
    spec.m = 1 + rng() % 12;
    spec.flavor = trial % 2 ? Flavor::clustered : Flavor::random_walk;
    spec.outliers = rng() % 4;
    spec.resolution = trial % 3 == 0 ? 0.1 : 1.0;
    spec.rng_seed = rng();
    const auto matrix = generate(spec);

    auto as_members = [](const BandChain& c) {
      std::vector<Members> out;
      for (const auto& b : c.bands) out.push_back(b.members);
      return out;
    };
    const auto base = as_members(enumerate_chain(matrix));
    ChainOptions unrestricted;
    unrestricted.restrict_subproblems = false;
    CHECK(as_members(enumerate_chain(matrix, unrestricted)) == base);
    ChainOptions parallel;
    parallel.parallel = true;
    CHECK(as_members(enumerate_chain(matrix, parallel)) == base);
    ChainOptions floating;
    floating.arithmetic = Arithmetic::floating;
    CHECK(as_members(enumerate_chain(matrix, floating)) == base);
  }
}
