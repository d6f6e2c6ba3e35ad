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

#include "confband/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace confband {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::findsum: return "findsum";
    case Algorithm::findinf: return "findinf";
    case Algorithm::peel: return "peel";
    case Algorithm::oracle: return "oracle";
  }
  return "unknown";
}

std::string_view to_string(CandidateMode mode) {
  return mode == CandidateMode::next_band ? "next_band" : "all_remaining";
}

namespace {

void check_k(const SeriesMatrix& matrix, std::size_t k) {
  if (k < 1 || k > matrix.series_count()) {
    throw InvalidInput("k = " + std::to_string(k) + " out of range [1, " +
                       std::to_string(matrix.series_count()) + "]");
  }
}

}  // namespace

Members greedy_extend(const SeriesMatrix& matrix,
                      std::span<const std::size_t> base,
                      std::span<const std::size_t> pool, std::size_t count) {
  if (base.empty()) throw InvalidInput("empty band");
  Members chosen(base.begin(), base.end());
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

  Members candidates;
  for (std::size_t l : pool) {
    if (l >= matrix.series_count()) {
      throw InvalidInput("candidate index " + std::to_string(l) +
                         " out of range");
    }
    if (!std::binary_search(chosen.begin(), chosen.end(), l)) {
      candidates.push_back(l);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  if (count > candidates.size()) throw InvalidInput("insufficient candidates");

  const std::size_t m = matrix.length();
  std::vector<double> lower(matrix.row(chosen.front()).begin(),
                            matrix.row(chosen.front()).end());
  std::vector<double> upper = lower;
  for (std::size_t l : chosen) {
    const auto r = matrix.row(l);
    for (std::size_t i = 0; i < m; ++i) {
      lower[i] = std::min(lower[i], r[i]);
      upper[i] = std::max(upper[i], r[i]);
    }
  }

  std::vector<bool> taken(candidates.size(), false);
  for (std::size_t step = 0; step < count; ++step) {
    std::size_t best = candidates.size();
    double best_growth = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (taken[c]) continue;
      const auto r = matrix.row(candidates[c]);
      double growth = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        growth += std::max(0.0, r[i] - upper[i]) + std::max(0.0, lower[i] - r[i]);
      }
      if (growth < best_growth) {
        best_growth = growth;
        best = c;
      }
    }
    taken[best] = true;
    const auto r = matrix.row(candidates[best]);
    for (std::size_t i = 0; i < m; ++i) {
      lower[i] = std::min(lower[i], r[i]);
      upper[i] = std::max(upper[i], r[i]);
    }
    chosen.insert(
        std::lower_bound(chosen.begin(), chosen.end(), candidates[best]),
        candidates[best]);
  }
  return chosen;
}

ApproxResult find_sum(const SeriesMatrix& matrix, std::size_t k,
                      const BandChain& chain) {
  check_k(matrix, k);
  if (chain.bands.empty() ||
      chain.bands.back().size() != matrix.series_count()) {
    throw InvalidInput("chain does not belong to this matrix");
  }
  const auto j = chain.largest_within(k);
  if (!j) {
    throw InvalidInput("k below minimal band (size " +
                       std::to_string(chain.bands.front().size()) + ")");
  }
  const Band& base = chain.bands[*j];

  ApproxResult result;
  result.k = k;
  result.algorithm = Algorithm::findsum;
  result.base_band_index = *j;

  const double n = static_cast<double>(matrix.series_count());
  const bool far_below = static_cast<double>(base.size()) <=
                         static_cast<double>(k) - std::sqrt(n);
  Members pool;
  if (far_below && *j + 1 < chain.size()) {
    const Members& next = chain.bands[*j + 1].members;
    std::set_difference(next.begin(), next.end(), base.members.begin(),
                        base.members.end(), std::back_inserter(pool));
    result.candidate_mode = CandidateMode::next_band;
  } else {
    const Members everything = all_series(matrix);
    std::set_difference(everything.begin(), everything.end(),
                        base.members.begin(), base.members.end(),
                        std::back_inserter(pool));
    result.candidate_mode = CandidateMode::all_remaining;
  }

  const Members members =
      greedy_extend(matrix, base.members, pool, k - base.size());
  result.band = envelope(matrix, members);
  return result;
}

ApproxResult find_inf(const SeriesMatrix& matrix, std::size_t k) {
  check_k(matrix, k);
  const auto seed = matrix.seed_row();
  std::vector<std::pair<double, std::size_t>> ranked;
  for (std::size_t l = 0; l < matrix.series_count(); ++l) {
    if (l == matrix.seed()) continue;
    const auto r = matrix.row(l);
    double distance = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      distance = std::max(distance, std::abs(r[i] - seed[i]));
    }
    ranked.emplace_back(distance, l);
  }
  std::sort(ranked.begin(), ranked.end());

  Members members{matrix.seed()};
  double reach = 0.0;
  for (std::size_t c = 0; c + 1 < k; ++c) {
    members.push_back(ranked[c].second);
    reach = std::max(reach, ranked[c].first);
  }
  ApproxResult result;
  result.band = envelope(matrix, members);
  result.k = k;
  result.algorithm = Algorithm::findinf;
  result.selected_distance = reach;
  return result;
}

ApproxResult peel(const SeriesMatrix& matrix, std::size_t k) {
  check_k(matrix, k);
  const std::size_t m = matrix.length();
  Members members = all_series(matrix);
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr auto none = std::numeric_limits<std::size_t>::max();

  std::vector<double> saving(matrix.series_count());
  while (members.size() > k) {
    std::fill(saving.begin(), saving.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      // Two largest and two smallest values, counted with multiplicity.
      double top = -inf, second_top = -inf, bottom = inf, second_bottom = inf;
      std::size_t top_series = none, bottom_series = none;
      for (std::size_t l : members) {
        const double v = matrix.at(l, i);
        if (v > top) {
          second_top = top;
          top = v;
          top_series = l;
        } else if (v > second_top) {
          second_top = v;
        }
        if (v < bottom) {
          second_bottom = bottom;
          bottom = v;
          bottom_series = l;
        } else if (v < second_bottom) {
          second_bottom = v;
        }
      }
      saving[top_series] += top - second_top;
      saving[bottom_series] += second_bottom - bottom;
    }

    std::size_t drop = none;
    for (std::size_t l : members) {
      if (l == matrix.seed()) continue;
      if (drop == none || saving[l] > saving[drop]) drop = l;
    }
    members.erase(std::lower_bound(members.begin(), members.end(), drop));
  }

  ApproxResult result;
  result.band = envelope(matrix, members);
  result.k = k;
  result.algorithm = Algorithm::peel;
  return result;
}

std::size_t k_from_fraction(double fraction, std::size_t n) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidInput("fractional k must lie in (0, 1]");
  }
  const auto k =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
  if (k == 0) throw InvalidInput("fractional k rounds down to zero");
  return k;
}

}  // namespace confband
