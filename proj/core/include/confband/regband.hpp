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

#ifndef CONFBAND_REGBAND_HPP
#define CONFBAND_REGBAND_HPP

#include <cstddef>
#include <vector>

#include "confband/flow.hpp"
#include "confband/series.hpp"

namespace confband {

/*
 * Per-position skeleton of the cut graph.
 *
 * values[i] holds the distinct observed values at position i in ascending
 * order; counts[i][j] is the number of series whose value at i is at most
 * values[i][j]. Ranks are 0-based indices into values[i].
 */
struct ValueGrid {
  std::size_t series_count = 0;
  std::size_t length = 0;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<std::size_t>> counts;
  std::vector<std::size_t> seed_rank;
  std::vector<std::size_t> ranks;  // ranks[series * length + position]

  std::size_t rank(std::size_t series, std::size_t position) const {
    return ranks[series * length + position];
  }
  /// Total number of grid points, i.e. a-nodes of the cut graph.
  std::size_t point_count() const;
};

ValueGrid build_value_grid(const SeriesMatrix& matrix);

/*
 * The cut graph for one alpha, with every weight multiplied by alpha/m:
 * count terms carry the factor alpha/m and value gaps are used as is. This
 * leaves the optimal cuts unchanged and the capacity of the cut induced by a
 * band U becomes (alpha/m) * n * m + q(U; alpha).
 */
struct RegNetwork {
  FlowNetwork<double> network;
  NodeId source = 0;
  NodeId sink = 1;
  /// a-node of grid point (i, j) is a_offset[i] + j.
  std::vector<NodeId> a_offset;
  /// b-node of series l is b_offset + l.
  NodeId b_offset = 0;
  /// Multiplier applied to the unscaled weights.
  double scale = 1.0;

  NodeId a_node(std::size_t position, std::size_t rank) const {
    return a_offset[position] + static_cast<NodeId>(rank);
  }
  NodeId b_node(std::size_t series) const {
    return b_offset + static_cast<NodeId>(series);
  }
};

/// Throws InvalidInput when alpha <= 0.
RegNetwork build_network(const ValueGrid& grid, const SeriesMatrix& matrix,
                         double alpha);

enum class Arithmetic {
  /// Exact integer capacities when values and alpha are short decimals and
  /// the scaled capacities fit in 64 bits; floating point otherwise.
  automatic,
  floating,
  /// Throws InvalidInput when the instance cannot be scaled to integers.
  exact,
};

struct SolveOptions {
  Arithmetic arithmetic = Arithmetic::automatic;
  /// Relative residual tolerance for floating capacities.
  double tolerance = 1e-9;
};

struct RegBandSolution {
  Band band;
  double alpha = 0.0;
  /// area - alpha * |band|
  double objective = 0.0;
  /// Minimum cut value in unscaled units: n*m + (m/alpha) * objective.
  double cut_value = 0.0;
  bool exact = false;
};

/// Exact minimizer of area - alpha * |U| over seed-containing sets, taking
/// the inclusion-maximal optimizer when several tie.
RegBandSolution solve_regband(const SeriesMatrix& matrix, double alpha,
                              const SolveOptions& options = {});

}  // namespace confband

#endif  // CONFBAND_REGBAND_HPP
