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

#ifndef CONFBAND_TESTS_FIXTURES_HPP
#define CONFBAND_TESTS_FIXTURES_HPP

#include <cstdint>
#include <random>

#include "confband/oracle.hpp"
#include "confband/series.hpp"

namespace confband::testing {

// Four constant series 0, -1, 2, 2 with the first as seed.
inline SeriesMatrix example_one() {
  return SeriesMatrix::from_rows({{0.0}, {-1.0}, {2.0}, {2.0}}, 0);
}

// Seed (0, 0) and one series (1, 2).
inline SeriesMatrix example_two() {
  return SeriesMatrix::from_rows({{0.0, 0.0}, {1.0, 2.0}}, 0);
}

// Small integer instance: n in [min_n, max_n], m in [1, max_m], values 0..9,
// random seed position.
inline SeriesMatrix random_small(std::mt19937_64& rng, std::size_t min_n,
                                 std::size_t max_n, std::size_t max_m) {
  std::uniform_int_distribution<std::size_t> pick_n(min_n, max_n);
  std::uniform_int_distribution<std::size_t> pick_m(1, max_m);
  InstanceSpec spec;
  spec.n = pick_n(rng);
  spec.m = pick_m(rng);
  spec.rng_seed = rng();
  spec.seed_index = std::uniform_int_distribution<std::size_t>(0, spec.n - 1)(rng);
  return generate(spec);
}

}  // namespace confband::testing

#endif  // CONFBAND_TESTS_FIXTURES_HPP
