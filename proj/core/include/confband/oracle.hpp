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

#ifndef CONFBAND_ORACLE_HPP
#define CONFBAND_ORACLE_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "confband/series.hpp"

namespace confband {

// Exhaustive solvers over every seed-containing subset. They share nothing
// with the cut-based solvers and serve as ground truth in tests.

inline constexpr std::size_t kDefaultOracleCap = 12;

struct SubsetScore {
  Members members;
  double area = 0.0;
  double width = 0.0;
};

/// All 2^(n-1) seed-containing subsets with their scores. Throws
/// InvalidInput("instance too large for oracle") when n exceeds `cap`.
std::vector<SubsetScore> seed_subsets(const SeriesMatrix& matrix,
                                      std::size_t cap = kDefaultOracleCap);

/// Absolute tolerance for score ties: 1e-9 scaled by the full area.
double oracle_tolerance(const SeriesMatrix& matrix);

/// Minimum-area set of size k; ties go to the lexicographically smallest
/// member list.
Band exact_sumband(const SeriesMatrix& matrix, std::size_t k,
                   std::size_t cap = kDefaultOracleCap);

/// Minimum-width set of size k; same tie rule.
Band exact_infband(const SeriesMatrix& matrix, std::size_t k,
                   std::size_t cap = kDefaultOracleCap);

/// Minimizer of area - alpha * |U|; ties go to the largest set.
Band exact_regband(const SeriesMatrix& matrix, double alpha,
                   std::size_t cap = kDefaultOracleCap);

/// Same as exact_regband but reuses a precomputed subset table.
const SubsetScore& best_regularized(const std::vector<SubsetScore>& subsets,
                                    double alpha, double tolerance);

enum class Flavor { uniform, random_walk, clustered };

struct InstanceSpec {
  std::size_t n = 8;
  std::size_t m = 5;
  /// Values are multiples of `resolution` within [low, high] (uniform) or
  /// start there (random walk, clustered).
  double resolution = 1.0;
  double low = 0.0;
  double high = 9.0;
  std::uint64_t rng_seed = 0;
  Flavor flavor = Flavor::uniform;
  /// Clustered flavor: how many series stray from the bundle.
  std::size_t outliers = 0;
  std::size_t seed_index = 0;
};

/// Deterministic for a fixed spec.
SeriesMatrix generate(const InstanceSpec& spec);

}  // namespace confband

#endif  // CONFBAND_ORACLE_HPP
