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

#ifndef CONFBAND_CHAIN_HPP
#define CONFBAND_CHAIN_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "confband/regband.hpp"
#include "confband/series.hpp"

namespace confband {

/*
 * Every distinct regularized band, innermost first. bands[0] is the
 * solution for alpha -> 0+ and bands.back() holds every series. Consecutive
 * bands are strictly nested, and breakpoints[i] is the added area per added
 * series between bands[i] and bands[i + 1]; bands[i] is optimal exactly for
 * alpha in [breakpoints[i - 1], breakpoints[i]).
 */
struct BandChain {
  std::vector<Band> bands;
  std::vector<double> breakpoints;
  /// Index of the smallest band containing each series.
  std::vector<std::size_t> first_inclusion;
  /// Smallest positive gap between two values at the same position; empty
  /// when every series is identical.
  std::optional<double> delta;
  /// Number of single-alpha solves performed, including the innermost band.
  std::size_t regband_calls = 0;
  /// Set when a floating-point gamma had to be nudged below its ratio.
  bool gamma_rounding = false;

  std::size_t size() const { return bands.size(); }
  /// Largest j with |bands[j]| <= k, or empty when even bands[0] is larger.
  std::optional<std::size_t> largest_within(std::size_t k) const;
};

/// Throws InvalidInput("degenerate data") when every position holds a single
/// distinct value.
double delta_gap(const SeriesMatrix& matrix);

struct ChainOptions {
  /// Solve each split on the series between the two known bands only, with
  /// the inner band contracted to its envelope.
  bool restrict_subproblems = true;
  /// Run independent splits concurrently.
  bool parallel = false;
  std::size_t parallel_depth = 4;
  Arithmetic arithmetic = Arithmetic::automatic;
  double tolerance = 1e-9;
};

BandChain enumerate_chain(const SeriesMatrix& matrix,
                          const ChainOptions& options = {});

}  // namespace confband

#endif  // CONFBAND_CHAIN_HPP
