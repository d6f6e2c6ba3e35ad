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

#include "confband/chain.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <future>
#include <limits>
#include <mutex>
#include <numeric>

#include "cut_problem.hpp"

namespace confband {

std::optional<std::size_t> BandChain::largest_within(std::size_t k) const {
  std::optional<std::size_t> best;
  for (std::size_t j = 0; j < bands.size(); ++j) {
    if (bands[j].size() <= k) best = j;
  }
  return best;
}

double delta_gap(const SeriesMatrix& matrix) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> column(matrix.series_count());
  for (std::size_t i = 0; i < matrix.length(); ++i) {
    for (std::size_t l = 0; l < column.size(); ++l) column[l] = matrix.at(l, i);
    std::sort(column.begin(), column.end());
    for (std::size_t l = 1; l < column.size(); ++l) {
      const double gap = column[l] - column[l - 1];
      if (gap > 0.0) best = std::min(best, gap);
    }
  }
  if (!std::isfinite(best)) throw InvalidInput("degenerate data");
  return best;
}

namespace {

using detail::DecimalScale;
using detail::RationalAlpha;
using detail::Wide;

std::int64_t scaled_delta(const SeriesMatrix& matrix,
                          const DecimalScale& scale) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> column(matrix.series_count());
  for (std::size_t i = 0; i < matrix.length(); ++i) {
    for (std::size_t l = 0; l < column.size(); ++l) {
      column[l] = scale.scaled(matrix.at(l, i));
    }
    std::sort(column.begin(), column.end());
    for (std::size_t l = 1; l < column.size(); ++l) {
      const std::int64_t gap = column[l] - column[l - 1];
      if (gap > 0) best = std::min(best, gap);
    }
  }
  return best;
}

Wide scaled_area(const Band& band, const DecimalScale& scale) {
  Wide total = 0;
  for (std::size_t i = 0; i < band.lower.size(); ++i) {
    total += scale.scaled(band.upper[i]) - scale.scaled(band.lower[i]);
  }
  return total;
}

std::optional<RationalAlpha> reduce(Wide numerator, Wide denominator) {
  if (numerator <= 0 || denominator <= 0) return std::nullopt;
  Wide a = numerator;
  Wide b = denominator;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  numerator /= a;
  denominator /= a;
  constexpr Wide limit = std::numeric_limits<std::int64_t>::max();
  if (numerator > limit || denominator > limit) return std::nullopt;
  return RationalAlpha{static_cast<std::int64_t>(numerator),
                       static_cast<std::int64_t>(denominator)};
}

class ChainEnumerator {
 public:
  ChainEnumerator(const SeriesMatrix& matrix, const ChainOptions& options)
      : matrix_(matrix),
        options_(options),
        n_(static_cast<double>(matrix.series_count())) {
    delta_ = delta_gap(matrix);
    if (options.arithmetic != Arithmetic::floating) {
      scale_ = detail::detect_decimal_scale(matrix);
      if (scale_) scaled_delta_ = scaled_delta(matrix, *scale_);
    }
    if (options.arithmetic == Arithmetic::exact && !scale_) {
      throw InvalidInput("values are not short decimals");
    }
  }

  BandChain run() {
    const Members everything = all_series(matrix_);

    // Innermost band: alpha = delta / n^2 lies below every breakpoint.
    const double inner_alpha = delta_ / (n_ * n_);
    std::optional<RationalAlpha> inner_exact;
    if (scale_) {
      inner_exact = reduce(scaled_delta_, static_cast<Wide>(n_) *
                                              static_cast<Wide>(n_));
    }
    const Members inner_members =
        solve(nullptr, everything, inner_alpha, inner_exact);
    Band inner = envelope(matrix_, inner_members);
    Band outer = envelope(matrix_, everything);

    if (inner.size() < everything.size()) {
      found_.push_back(std::move(inner));
      found_.push_back(std::move(outer));
      split(found_.front(), found_.back(), 0);
    } else {
      found_.push_back(std::move(outer));
    }

    BandChain chain;
    chain.delta = delta_;
    chain.regband_calls = calls_.load();
    chain.gamma_rounding = rounding_.load();
    chain.bands.assign(found_.begin(), found_.end());
    std::sort(chain.bands.begin(), chain.bands.end(),
              [](const Band& a, const Band& b) { return a.size() < b.size(); });
    for (std::size_t j = 0; j + 1 < chain.bands.size(); ++j) {
      chain.breakpoints.push_back(ratio(chain.bands[j], chain.bands[j + 1]));
    }
    return chain;
  }

 private:
  // Area added per added series going from `u` to `v`.
  double ratio(const Band& u, const Band& v) const {
    const double added = static_cast<double>(v.size() - u.size());
    if (scale_) {
      const auto gain = scaled_area(v, *scale_) - scaled_area(u, *scale_);
      return static_cast<double>(gain) / added / scale_->factor;
    }
    return (v.area - u.area) / added;
  }

  Members solve(const Band* inner, const Members& outer, double alpha,
                const std::optional<RationalAlpha>& exact_alpha) {
    ++calls_;
    const bool restricted = inner != nullptr && options_.restrict_subproblems;
    const auto spec = restricted ? detail::restricted_spec(*inner, outer)
                                 : detail::full_spec(matrix_);
    const auto core = detail::build_core_grid(matrix_, spec);
    const auto symbolic = detail::build_symbolic(core);
    const auto cut = detail::solve_cut(
        symbolic, alpha, exact_alpha, scale_, options_.tolerance,
        options_.arithmetic == Arithmetic::exact);

    Members members = cut.selected;
    if (restricted) {
      Members merged;
      std::merge(members.begin(), members.end(), inner->members.begin(),
                 inner->members.end(), std::back_inserter(merged));
      members = std::move(merged);
    } else if (!std::binary_search(members.begin(), members.end(),
                                   matrix_.seed())) {
      members.insert(std::lower_bound(members.begin(), members.end(),
                                      matrix_.seed()),
                     matrix_.seed());
    }
    return members;
  }

  // Finds every band strictly between `u` and `v` (u a strict subset of v).
  void split(const Band& u, const Band& v, std::size_t depth) {
    const auto added = static_cast<Wide>(v.size() - u.size());
    const double offset = delta_ / (n_ * n_);
    const double r = (v.area - u.area) / static_cast<double>(added);
    double gamma = r - offset;
    std::optional<RationalAlpha> exact_gamma;
    if (scale_) {
      const auto n = static_cast<Wide>(n_);
      const Wide gain = scaled_area(v, *scale_) - scaled_area(u, *scale_);
      exact_gamma = reduce(gain * n * n - scaled_delta_ * added, added * n * n);
      if (exact_gamma) gamma = exact_gamma->value(*scale_);
    }
    if (!exact_gamma && !(gamma < r)) {
      gamma = r - std::ldexp(r, -40);
      rounding_ = true;
    }

    const Members w_members = solve(&u, v.members, gamma, exact_gamma);
    if (w_members == u.members) return;
    if (w_members.size() >= v.size()) {
      throw std::logic_error("split returned the outer band");
    }
    const Band* w = nullptr;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      found_.push_back(envelope(matrix_, w_members));
      w = &found_.back();
    }

    if (options_.parallel && depth < options_.parallel_depth) {
      auto left = std::async(std::launch::async,
                             [&] { split(u, *w, depth + 1); });
      split(*w, v, depth + 1);
      left.get();
    } else {
      split(u, *w, depth + 1);
      split(*w, v, depth + 1);
    }
  }

  const SeriesMatrix& matrix_;
  const ChainOptions& options_;
  const double n_;
  double delta_ = 0.0;
  std::optional<DecimalScale> scale_;
  std::int64_t scaled_delta_ = 0;

  std::mutex mutex_;
  std::deque<Band> found_;  // push_back keeps references valid
  std::atomic<std::size_t> calls_{0};
  std::atomic<bool> rounding_{false};
};

void fill_first_inclusion(BandChain& chain, std::size_t n) {
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  chain.first_inclusion.assign(n, unset);
  for (std::size_t j = 0; j < chain.bands.size(); ++j) {
    for (std::size_t l : chain.bands[j].members) {
      if (chain.first_inclusion[l] == unset) chain.first_inclusion[l] = j;
    }
  }
}

}  // namespace

BandChain enumerate_chain(const SeriesMatrix& matrix,
                          const ChainOptions& options) {
  BandChain chain;
  bool degenerate = matrix.series_count() == 1;
  if (!degenerate) {
    try {
      (void)delta_gap(matrix);
    } catch (const InvalidInput&) {
      degenerate = true;
    }
  }
  if (degenerate) {
    chain.bands.push_back(envelope(matrix, all_series(matrix)));
  } else {
    ChainEnumerator enumerator(matrix, options);
    chain = enumerator.run();
  }
  fill_first_inclusion(chain, matrix.series_count());
  return chain;
}

}  // namespace confband
