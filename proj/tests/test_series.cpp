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
#include <random>

#include "doctest.h"
#include "fixtures.hpp"

using namespace confband;
using confband::testing::example_one;
using confband::testing::example_two;

TEST_CASE("envelope of the four constant series") {
  const auto e1 = example_one();
  const std::vector<std::size_t> pair{0, 1};
  const Band band = envelope(e1, pair);
  CHECK(band.lower == std::vector<double>{-1.0});
  CHECK(band.upper == std::vector<double>{0.0});
  CHECK(band.area == 1.0);

  const std::vector<std::size_t> seed_only{0};
  const Band single = envelope(e1, seed_only);
  CHECK(single.lower == std::vector<double>{0.0});
  CHECK(single.upper == std::vector<double>{0.0});
  CHECK(single.area == 0.0);
  CHECK(single.width == 0.0);
}

TEST_CASE("envelope of two series over two positions") {
  const auto e2 = example_two();
  const std::vector<std::size_t> both{1, 0};
  const Band band = envelope(e2, both);
  CHECK(band.members == Members{0, 1});
  CHECK(band.lower == std::vector<double>{0.0, 0.0});
  CHECK(band.upper == std::vector<double>{1.0, 2.0});
  CHECK(band.area == 3.0);
  CHECK(band.width == 2.0);
}

TEST_CASE("area, width and regularized scores") {
  const auto e1 = example_one();
  const auto e2 = example_two();
  CHECK(area_score(e1, Members{0, 2, 3}) == 2.0);
  CHECK(area_score(e1, Members{0, 1, 2, 3}) == 3.0);
  CHECK(width_score(e2, Members{0, 1}) == 2.0);

  CHECK(reg_score(e1, Members{0}, 0.9) == doctest::Approx(-0.9));
  CHECK(reg_score(e1, Members{0, 1, 2, 3}, 1.2) == doctest::Approx(-1.8));
  CHECK(reg_score(e2, Members{0, 1}, 4.0) == -5.0);

  CHECK_THROWS_WITH_AS(reg_score(e1, Members{0}, 0.0), "invalid alpha",
                       InvalidInput);
  CHECK_THROWS_WITH_AS(reg_score(e1, Members{0}, -1.0), "invalid alpha",
                       InvalidInput);
}

TEST_CASE("envelope rejects malformed member sets") {
  const auto e1 = example_one();
  CHECK_THROWS_WITH_AS(envelope(e1, Members{}), "empty band", InvalidInput);
  CHECK_THROWS_WITH_AS(envelope(e1, Members{1, 2}), "seed not in band",
                       InvalidInput);
  CHECK_THROWS_AS(envelope(e1, Members{0, 7}), InvalidInput);
  CHECK_THROWS_AS(envelope(e1, Members{0, 1, 1}), InvalidInput);
}

TEST_CASE("matrix construction validates its input") {
  CHECK_THROWS_AS(SeriesMatrix::from_rows({}, 0), InvalidInput);
  CHECK_THROWS_AS(SeriesMatrix::from_rows({{1.0, 2.0}, {1.0}}, 0),
                  InvalidInput);
  CHECK_THROWS_AS(SeriesMatrix::from_rows({{1.0}}, 1), InvalidInput);
  CHECK_THROWS_AS(SeriesMatrix::from_rows({{1.0}, {std::nan("")}}, 0),
                  InvalidInput);
  CHECK_THROWS_AS(SeriesMatrix::from_rows({{}}, 0), InvalidInput);
  CHECK_THROWS_AS(SeriesMatrix::from_rows({{1.0}, {2.0}}, 0, {"a"}),
                  InvalidInput);
}

TEST_CASE("derived seeds") {
  SUBCASE("lower median of an even count") {
    const auto matrix =
        derive_seed({{0.0}, {-1.0}, {2.0}, {2.0}}, SeedPolicy::median);
    CHECK(matrix.series_count() == 5);
    CHECK(matrix.seed() == 4);
    CHECK(matrix.at(4, 0) == 0.0);
    CHECK(matrix.label(4) == "median");
  }
  SUBCASE("mean of one series is that series") {
    const auto matrix = derive_seed({{1.5, -2.0, 7.0}}, SeedPolicy::mean);
    CHECK(matrix.seed() == 1);
    CHECK(std::vector<double>(matrix.seed_row().begin(), matrix.seed_row().end()) ==
          std::vector<double>{1.5, -2.0, 7.0});
  }
  SUBCASE("mean of two values") {
    const auto matrix = derive_seed({{1.0}, {3.0}}, SeedPolicy::mean);
    CHECK(matrix.at(matrix.seed(), 0) == 2.0);
  }
  SUBCASE("median of an odd count is the middle value per position") {
    const auto matrix =
        derive_seed({{5.0, 0.0}, {1.0, 9.0}, {3.0, 4.0}}, SeedPolicy::median);
    CHECK(matrix.at(3, 0) == 3.0);
    CHECK(matrix.at(3, 1) == 4.0);
  }
}

namespace {

Members random_subset(std::mt19937_64& rng, std::size_t n, std::size_t seed) {
  Members out{seed};
  for (std::size_t l = 0; l < n; ++l) {
    if (l != seed && rng() % 2) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Members with(Members set, std::size_t extra) {
  if (!std::binary_search(set.begin(), set.end(), extra)) {
    set.insert(std::lower_bound(set.begin(), set.end(), extra), extra);
  }
  return set;
}

}  // namespace

TEST_CASE("area is submodular and monotone on random nested sets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto matrix = confband::testing::random_small(rng, 2, 9, 6);
    const std::size_t n = matrix.series_count();
    const Members outer = random_subset(rng, n, matrix.seed());
    Members inner{matrix.seed()};
    for (std::size_t l : outer) {
      if (l != matrix.seed() && rng() % 2) inner.push_back(l);
    }
    std::sort(inner.begin(), inner.end());
    const std::size_t t = rng() % n;

    const double outer_gain =
        area_score(matrix, with(outer, t)) - area_score(matrix, outer);
    const double inner_gain =
        area_score(matrix, with(inner, t)) - area_score(matrix, inner);
    CHECK(outer_gain <= inner_gain);
    CHECK(outer_gain >= 0.0);
    CHECK(width_score(matrix, with(inner, t)) >= width_score(matrix, inner));
  }
}

TEST_CASE("envelope ignores member order and non-members") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto matrix = confband::testing::random_small(rng, 2, 8, 5);
    Members members = random_subset(rng, matrix.series_count(), matrix.seed());
    const Band sorted = envelope(matrix, members);
    std::shuffle(members.begin(), members.end(), rng);
    const Band shuffled = envelope(matrix, members);
    CHECK(sorted.lower == shuffled.lower);
    CHECK(sorted.upper == shuffled.upper);
    CHECK(sorted.members == shuffled.members);

    // Perturbing a non-member leaves the envelope alone.
    std::vector<std::vector<double>> rows;
    for (std::size_t l = 0; l < matrix.series_count(); ++l) {
      const auto r = matrix.row(l);
      rows.emplace_back(r.begin(), r.end());
      if (!sorted.contains(l)) {
        for (double& v : rows.back()) v += 100.0;
      }
    }
    const auto moved = SeriesMatrix::from_rows(rows, matrix.seed());
    CHECK(envelope(moved, sorted.members).area == sorted.area);

    for (std::size_t i = 0; i < matrix.length(); ++i) {
      CHECK(sorted.lower[i] <= matrix.at(matrix.seed(), i));
      CHECK(matrix.at(matrix.seed(), i) <= sorted.upper[i]);
    }
  }
}
