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

#include "confband/regband.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cut_problem.hpp"

namespace confband {
namespace detail {
namespace {

bool near_integer(double x) {
  if (!(std::abs(x) <= 1e12)) return false;
  return std::abs(x - std::round(x)) <= 1e-12 * std::max(1.0, std::abs(x));
}

constexpr Wide kExactLimit = Wide{1} << 60;

}  // namespace

std::optional<DecimalScale> detect_decimal_scale(const SeriesMatrix& matrix,
                                                 int max_digits) {
  double factor = 1.0;
  for (int digits = 0; digits <= max_digits; ++digits, factor *= 10.0) {
    bool ok = true;
    for (std::size_t l = 0; l < matrix.series_count() && ok; ++l) {
      for (double v : matrix.row(l)) {
        if (!near_integer(v * factor)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return DecimalScale{digits, factor};
  }
  return std::nullopt;
}

std::optional<RationalAlpha> rational_alpha(double alpha,
                                            const DecimalScale& scale,
                                            int max_digits) {
  const double scaled = alpha * scale.factor;
  std::int64_t denominator = 1;
  for (int digits = 0; digits <= max_digits; ++digits, denominator *= 10) {
    const double y = scaled * static_cast<double>(denominator);
    if (y >= 1.0 && near_integer(y)) {
      const auto numerator = static_cast<std::int64_t>(std::llround(y));
      const std::int64_t g = std::gcd(numerator, denominator);
      return RationalAlpha{numerator / g, denominator / g};
    }
  }
  return std::nullopt;
}

CutSpec full_spec(const SeriesMatrix& matrix) {
  const auto seed = matrix.seed_row();
  return CutSpec{all_series(matrix), {seed.begin(), seed.end()},
                 {seed.begin(), seed.end()}};
}

CutSpec restricted_spec(const Band& inner, const Members& outer) {
  CutSpec spec;
  std::set_difference(outer.begin(), outer.end(), inner.members.begin(),
                      inner.members.end(), std::back_inserter(spec.free));
  spec.core_lo = inner.lower;
  spec.core_hi = inner.upper;
  return spec;
}

CoreGrid build_core_grid(const SeriesMatrix& matrix, const CutSpec& spec) {
  const std::size_t m = matrix.length();
  const std::size_t free_count = spec.free.size();
  CoreGrid core;
  core.free = spec.free;
  core.grid.series_count = free_count;
  core.grid.length = m;
  core.grid.values.resize(m);
  core.grid.counts.resize(m);
  core.grid.ranks.assign(free_count * m, 0);
  core.lo_rank.resize(m);
  core.hi_rank.resize(m);

  std::vector<double> column(free_count);
  std::vector<double> sorted;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t f = 0; f < free_count; ++f) {
      column[f] = matrix.at(spec.free[f], i);
    }
    sorted = column;
    std::sort(sorted.begin(), sorted.end());

    auto& points = core.grid.values[i];
    points = sorted;
    points.push_back(spec.core_lo[i]);
    points.push_back(spec.core_hi[i]);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    auto& counts = core.grid.counts[i];
    counts.resize(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
      counts[j] = static_cast<std::size_t>(
          std::upper_bound(sorted.begin(), sorted.end(), points[j]) -
          sorted.begin());
    }
    auto rank_of = [&points](double v) {
      return static_cast<std::size_t>(
          std::lower_bound(points.begin(), points.end(), v) - points.begin());
    };
    for (std::size_t f = 0; f < free_count; ++f) {
      core.grid.ranks[f * m + i] = rank_of(column[f]);
    }
    core.lo_rank[i] = rank_of(spec.core_lo[i]);
    core.hi_rank[i] = rank_of(spec.core_hi[i]);
  }
  core.grid.seed_rank = core.lo_rank;
  return core;
}

SymbolicNetwork build_symbolic(const CoreGrid& core) {
  const ValueGrid& grid = core.grid;
  const std::size_t m = grid.length;
  const auto free_count = static_cast<std::int64_t>(grid.series_count);

  SymbolicNetwork net;
  net.length = m;
  net.free = core.free;
  net.a_offset.resize(m);
  NodeId next = 2;
  for (std::size_t i = 0; i < m; ++i) {
    net.a_offset[i] = next;
    next += static_cast<NodeId>(grid.values[i].size());
  }
  net.b_offset = next;
  net.node_count = next + grid.series_count;
  net.arcs.reserve(4 * grid.point_count() + 2 * m * grid.series_count);

  for (std::size_t i = 0; i < m; ++i) {
    const auto& p = grid.values[i];
    const auto& c = grid.counts[i];
    const std::size_t lo = core.lo_rank[i];
    const std::size_t hi = core.hi_rank[i];
    const NodeId base = net.a_offset[i];
    auto a = [base](std::size_t j) { return base + static_cast<NodeId>(j); };

    for (std::size_t j = lo; j <= hi; ++j) {
      net.arcs.push_back({kSource, a(j), 0, 0.0, 0.0, true});
    }
    for (std::size_t j = hi + 1; j < p.size(); ++j) {
      net.arcs.push_back({a(j - 1), a(j),
                          free_count - static_cast<std::int64_t>(c[j - 1]),
                          p[j - 1], p[hi], false});
    }
    for (std::size_t j = lo; j-- > 0;) {
      net.arcs.push_back({a(j + 1), a(j), static_cast<std::int64_t>(c[j]),
                          p[lo], p[j + 1], false});
    }
    net.arcs.push_back({a(p.size() - 1), kSink, 0, p.back(), p[hi], false});
    net.arcs.push_back({a(0), kSink, 0, p[lo], p.front(), false});
  }

  for (std::size_t f = 0; f < grid.series_count; ++f) {
    const NodeId b = net.b_offset + static_cast<NodeId>(f);
    for (std::size_t i = 0; i < m; ++i) {
      const NodeId a = net.a_offset[i] + static_cast<NodeId>(grid.rank(f, i));
      net.arcs.push_back({a, b, 1, 0.0, 0.0, false});
      net.arcs.push_back({b, a, 0, 0.0, 0.0, true});
    }
  }
  return net;
}

FlowNetwork<double> materialize_floating(const SymbolicNetwork& net,
                                         double alpha, double tolerance) {
  FlowNetwork<double> flow(net.node_count, kSource, kSink);
  flow.set_tolerance(tolerance);
  const double per_count = alpha / static_cast<double>(net.length);
  for (const SymbolicArc& arc : net.arcs) {
    if (arc.unbounded) {
      flow.add_unbounded_arc(arc.tail, arc.head);
    } else {
      const double gap = arc.gap_top - arc.gap_bottom;
      flow.add_arc(arc.tail, arc.head,
                   per_count * static_cast<double>(arc.count) + gap);
    }
  }
  return flow;
}

std::optional<FlowNetwork<std::int64_t>> materialize_exact(
    const SymbolicNetwork& net, const RationalAlpha& alpha,
    const DecimalScale& scale) {
  FlowNetwork<std::int64_t> flow(net.node_count, kSource, kSink);
  const Wide gap_factor =
      static_cast<Wide>(net.length) * alpha.denominator;
  Wide total = 0;
  for (const SymbolicArc& arc : net.arcs) {
    if (arc.unbounded) {
      flow.add_unbounded_arc(arc.tail, arc.head);
      continue;
    }
    const Wide gap =
        static_cast<Wide>(scale.scaled(arc.gap_top)) -
        scale.scaled(arc.gap_bottom);
    const Wide capacity =
        static_cast<Wide>(alpha.numerator) * arc.count + gap_factor * gap;
    total += capacity;
    if (capacity < 0 || total >= kExactLimit) return std::nullopt;
    flow.add_arc(arc.tail, arc.head, static_cast<std::int64_t>(capacity));
  }
  return flow;
}

namespace {

template <typename Cap>
Members selected_series(const SymbolicNetwork& net,
                        const CutResult<Cap>& cut) {
  Members selected;
  for (std::size_t f = 0; f < net.free.size(); ++f) {
    if (cut.contains(net.b_offset + static_cast<NodeId>(f))) {
      selected.push_back(net.free[f]);
    }
  }
  return selected;
}

}  // namespace

CutSolution solve_cut(const SymbolicNetwork& net, double alpha,
                      const std::optional<RationalAlpha>& exact_alpha,
                      const std::optional<DecimalScale>& scale,
                      double tolerance, bool require_exact) {
  if (exact_alpha && scale) {
    if (auto flow = materialize_exact(net, *exact_alpha, *scale)) {
      const std::int64_t value = flow->max_flow();
      const auto cut = flow->min_cut_max_side();
      const double divisor = static_cast<double>(net.length) *
                             static_cast<double>(exact_alpha->denominator) *
                             scale->factor;
      return CutSolution{selected_series(net, cut),
                         static_cast<double>(value) / divisor, true};
    }
  }
  if (require_exact) {
    throw InvalidInput("capacities do not fit exact integer arithmetic");
  }
  auto flow = materialize_floating(net, alpha, tolerance);
  const double value = flow.max_flow();
  const auto cut = flow.min_cut_max_side();
  return CutSolution{selected_series(net, cut), value, false};
}

}  // namespace detail

std::size_t ValueGrid::point_count() const {
  std::size_t total = 0;
  for (const auto& p : values) total += p.size();
  return total;
}

ValueGrid build_value_grid(const SeriesMatrix& matrix) {
  return detail::build_core_grid(matrix, detail::full_spec(matrix)).grid;
}

RegNetwork build_network(const ValueGrid& grid, const SeriesMatrix& matrix,
                         double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidInput("invalid alpha");
  }
  if (grid.series_count != matrix.series_count() ||
      grid.length != matrix.length()) {
    throw InvalidInput("value grid does not match matrix");
  }
  detail::CoreGrid core{grid, all_series(matrix), grid.seed_rank,
                        grid.seed_rank};
  const auto symbolic = detail::build_symbolic(core);
  return RegNetwork{detail::materialize_floating(symbolic, alpha, 1e-9),
                    detail::kSource,
                    detail::kSink,
                    symbolic.a_offset,
                    symbolic.b_offset,
                    alpha / static_cast<double>(matrix.length())};
}

RegBandSolution solve_regband(const SeriesMatrix& matrix, double alpha,
                              const SolveOptions& options) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidInput("invalid alpha");
  }
  const auto core =
      detail::build_core_grid(matrix, detail::full_spec(matrix));
  const auto symbolic = detail::build_symbolic(core);

  std::optional<detail::DecimalScale> scale;
  std::optional<detail::RationalAlpha> exact_alpha;
  if (options.arithmetic != Arithmetic::floating) {
    scale = detail::detect_decimal_scale(matrix);
    if (scale) exact_alpha = detail::rational_alpha(alpha, *scale);
    if (options.arithmetic == Arithmetic::exact && !exact_alpha) {
      throw InvalidInput("values and alpha are not short decimals");
    }
  }
  const auto cut = detail::solve_cut(symbolic, alpha, exact_alpha, scale,
                                     options.tolerance,
                                     options.arithmetic == Arithmetic::exact);

  Members members = cut.selected;
  if (!std::binary_search(members.begin(), members.end(), matrix.seed())) {
    members.insert(
        std::lower_bound(members.begin(), members.end(), matrix.seed()),
        matrix.seed());
  }
  RegBandSolution solution;
  solution.band = envelope(matrix, members);
  solution.alpha = alpha;
  solution.objective =
      solution.band.area - alpha * static_cast<double>(solution.band.size());
  solution.cut_value =
      cut.cut_value * static_cast<double>(matrix.length()) / alpha;
  solution.exact = cut.exact;
  return solution;
}

}  // namespace confband
