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

#ifndef CONFBAND_APPROX_HPP
#define CONFBAND_APPROX_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "confband/chain.hpp"
#include "confband/series.hpp"

namespace confband {

enum class Algorithm { findsum, findinf, peel, oracle };
enum class CandidateMode { next_band, all_remaining };

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(CandidateMode mode);

struct ApproxResult {
  Band band;
  std::size_t k = 0;
  Algorithm algorithm = Algorithm::findsum;
  /// Chain band the greedy phase started from (findsum only).
  std::optional<std::size_t> base_band_index;
  std::optional<CandidateMode> candidate_mode;
  /// Largest sup-norm distance to the seed among the selected series
  /// (findinf only).
  std::optional<double> selected_distance;
};

/// Adds `count` series from `pool` to `base` one at a time, each time the
/// one whose envelope growth is smallest (ties: lowest index). Pool entries
/// already in `base` are ignored. Throws InvalidInput("insufficient
/// candidates") when the pool is too small.
Members greedy_extend(const SeriesMatrix& matrix,
                      std::span<const std::size_t> base,
                      std::span<const std::size_t> pool, std::size_t count);

/// Area approximation within sqrt(n) + 1 of optimal. The chain must come
/// from the same matrix.
ApproxResult find_sum(const SeriesMatrix& matrix, std::size_t k,
                      const BandChain& chain);

/// Width approximation within 2 of optimal: the seed plus the k - 1 series
/// closest to it in sup norm.
ApproxResult find_inf(const SeriesMatrix& matrix, std::size_t k);

/// Baseline: starting from every series, repeatedly drops the non-seed
/// series whose removal shrinks the area the most.
ApproxResult peel(const SeriesMatrix& matrix, std::size_t k);

/// floor(fraction * n) for fraction in (0, 1]. Throws InvalidInput outside
/// that range or when the result is zero.
std::size_t k_from_fraction(double fraction, std::size_t n);

}  // namespace confband

#endif  // CONFBAND_APPROX_HPP
