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

#ifndef CONFBAND_SRC_CUT_PROBLEM_HPP
#define CONFBAND_SRC_CUT_PROBLEM_HPP

// Internal machinery shared by regband.cpp and chain.cpp.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "confband/regband.hpp"
#include "confband/series.hpp"

namespace confband::detail {

/// Intermediate width for exact capacity arithmetic.
__extension__ using Wide = __int128;

/// Values that are integers after multiplying by 10^digits.
struct DecimalScale {
  int digits = 0;
  double factor = 1.0;

  std::int64_t scaled(double v) const {
    return static_cast<std::int64_t>(std::llround(v * factor));
  }
};

std::optional<DecimalScale> detect_decimal_scale(const SeriesMatrix& matrix,
                                                 int max_digits = 6);

/// alpha * 10^digits == numerator / denominator, both positive.
struct RationalAlpha {
  std::int64_t numerator = 1;
  std::int64_t denominator = 1;

  double value(const DecimalScale& scale) const {
    return static_cast<double>(numerator) /
           static_cast<double>(denominator) / scale.factor;
  }
};

std::optional<RationalAlpha> rational_alpha(double alpha,
                                            const DecimalScale& scale,
                                            int max_digits = 6);

/*
 * A cut instance: `free` series get b-nodes, every grid point inside
 * [core_lo(i), core_hi(i)] is tied to the source. The full problem has all
 * series free and a core equal to the seed; restricted subproblems drop
 * the series outside an outer band and contract an inner band to its
 * envelope.
 */
struct CutSpec {
  Members free;
  std::vector<double> core_lo;
  std::vector<double> core_hi;
};

CutSpec full_spec(const SeriesMatrix& matrix);
CutSpec restricted_spec(const Band& inner, const Members& outer);

struct CoreGrid {
  ValueGrid grid;  // series indices are ordinals into `free`
  Members free;
  std::vector<std::size_t> lo_rank;
  std::vector<std::size_t> hi_rank;
};

CoreGrid build_core_grid(const SeriesMatrix& matrix, const CutSpec& spec);

/// Capacity = (alpha / m) * count + (gap_top - gap_bottom), or BIG.
struct SymbolicArc {
  NodeId tail;
  NodeId head;
  std::int64_t count;
  double gap_top;
  double gap_bottom;
  bool unbounded;
};

struct SymbolicNetwork {
  std::size_t node_count = 0;
  std::size_t length = 0;
  std::vector<SymbolicArc> arcs;
  std::vector<NodeId> a_offset;
  NodeId b_offset = 0;
  Members free;
};

inline constexpr NodeId kSource = 0;
inline constexpr NodeId kSink = 1;

SymbolicNetwork build_symbolic(const CoreGrid& core);

FlowNetwork<double> materialize_floating(const SymbolicNetwork& net,
                                         double alpha, double tolerance);

/// Empty when some capacity would not fit comfortably in 64 bits.
std::optional<FlowNetwork<std::int64_t>> materialize_exact(
    const SymbolicNetwork& net, const RationalAlpha& alpha,
    const DecimalScale& scale);

struct CutSolution {
  /// Free series on the maximal source side, sorted.
  Members selected;
  /// Minimum cut capacity in alpha/m-rescaled units.
  double cut_value = 0.0;
  bool exact = false;
};

/// Exact arithmetic is used when `exact_alpha` and `scale` are both given
/// and the capacities fit; otherwise floating point (unless `require_exact`).
CutSolution solve_cut(const SymbolicNetwork& net, double alpha,
                      const std::optional<RationalAlpha>& exact_alpha,
                      const std::optional<DecimalScale>& scale,
                      double tolerance, bool require_exact);

}  // namespace confband::detail

#endif  // CONFBAND_SRC_CUT_PROBLEM_HPP
