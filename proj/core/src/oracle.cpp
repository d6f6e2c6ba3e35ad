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

#include "confband/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace confband {

std::vector<SubsetScore> seed_subsets(const SeriesMatrix& matrix,
                                      std::size_t cap) {
  const std::size_t n = matrix.series_count();
  if (n > cap || n > 24) throw InvalidInput("instance too large for oracle");
  Members others;
  for (std::size_t l = 0; l < n; ++l) {
    if (l != matrix.seed()) others.push_back(l);
  }
  const std::size_t m = matrix.length();
  std::vector<SubsetScore> out;
  out.reserve(std::size_t{1} << others.size());
  std::vector<double> lower(m), upper(m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
    SubsetScore score;
    score.members.push_back(matrix.seed());
    for (std::size_t b = 0; b < others.size(); ++b) {
      if (mask >> b & 1) score.members.push_back(others[b]);
    }
    std::sort(score.members.begin(), score.members.end());
    const auto seed = matrix.seed_row();
    lower.assign(seed.begin(), seed.end());
    upper.assign(seed.begin(), seed.end());
    for (std::size_t l : score.members) {
      for (std::size_t i = 0; i < m; ++i) {
        lower[i] = std::min(lower[i], matrix.at(l, i));
        upper[i] = std::max(upper[i], matrix.at(l, i));
      }
    }
    for (std::size_t i = 0; i < m; ++i) {
      score.area += upper[i] - lower[i];
      score.width = std::max(score.width, upper[i] - lower[i]);
    }
    out.push_back(std::move(score));
  }
  return out;
}

double oracle_tolerance(const SeriesMatrix& matrix) {
  return 1e-9 * std::max(1.0, area_score(matrix, all_series(matrix)));
}

namespace {

template <typename Score>
Band exact_fixed_size(const SeriesMatrix& matrix, std::size_t k,
                      std::size_t cap, Score score) {
  if (k < 1 || k > matrix.series_count()) {
    throw InvalidInput("k = " + std::to_string(k) + " out of range");
  }
  const auto subsets = seed_subsets(matrix, cap);
  const double tolerance = oracle_tolerance(matrix);
  const SubsetScore* best = nullptr;
  for (const SubsetScore& s : subsets) {
    if (s.members.size() != k) continue;
    if (best == nullptr || score(s) < score(*best) - tolerance ||
        (score(s) <= score(*best) + tolerance && s.members < best->members)) {
      best = &s;
    }
  }
  return envelope(matrix, best->members);
}

}  // namespace

Band exact_sumband(const SeriesMatrix& matrix, std::size_t k,
                   std::size_t cap) {
  return exact_fixed_size(matrix, k, cap,
                          [](const SubsetScore& s) { return s.area; });
}

Band exact_infband(const SeriesMatrix& matrix, std::size_t k,
                   std::size_t cap) {
  return exact_fixed_size(matrix, k, cap,
                          [](const SubsetScore& s) { return s.width; });
}

const SubsetScore& best_regularized(const std::vector<SubsetScore>& subsets,
                                    double alpha, double tolerance) {
  const SubsetScore* best = nullptr;
  double best_q = 0.0;
  for (const SubsetScore& s : subsets) {
    const double q = s.area - alpha * static_cast<double>(s.members.size());
    if (best == nullptr || q < best_q - tolerance) {
      best = &s;
      best_q = q;
    } else if (q <= best_q + tolerance &&
               (s.members.size() > best->members.size() ||
                (s.members.size() == best->members.size() &&
                 s.members < best->members))) {
      best = &s;
      best_q = std::min(best_q, q);
    }
  }
  return *best;
}

Band exact_regband(const SeriesMatrix& matrix, double alpha,
                   std::size_t cap) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidInput("invalid alpha");
  }
  const auto subsets = seed_subsets(matrix, cap);
  return envelope(matrix, best_regularized(subsets, alpha,
                                           oracle_tolerance(matrix))
                              .members);
}

SeriesMatrix generate(const InstanceSpec& spec) {
  if (spec.n == 0 || spec.m == 0) throw InvalidInput("empty instance spec");
  if (!(spec.resolution > 0.0) || !(spec.high >= spec.low)) {
    throw InvalidInput("invalid value range");
  }
  std::mt19937_64 rng(spec.rng_seed);
  const auto steps =
      static_cast<long long>(std::floor((spec.high - spec.low) / spec.resolution));
  std::uniform_int_distribution<long long> level(0, steps);
  std::uniform_int_distribution<int> jitter(-1, 1);
  auto quantize = [&spec](double v) {
    return std::round(v / spec.resolution) * spec.resolution;
  };

  std::vector<std::vector<double>> rows(spec.n, std::vector<double>(spec.m));
  switch (spec.flavor) {
    case Flavor::uniform:
      for (auto& row : rows)
        for (double& v : row)
          v = quantize(spec.low + spec.resolution * static_cast<double>(level(rng)));
      break;
    case Flavor::random_walk:
      for (auto& row : rows) {
        double v = spec.low + spec.resolution * static_cast<double>(level(rng));
        for (double& x : row) {
          x = quantize(v);
          v += spec.resolution * jitter(rng);
        }
      }
      break;
    case Flavor::clustered: {
      std::vector<double> centre(spec.m);
      double v = spec.low + spec.resolution * static_cast<double>(level(rng));
      for (double& x : centre) {
        x = v;
        v += spec.resolution * jitter(rng);
      }
      const std::size_t outliers = std::min(spec.outliers, spec.n - 1);
      const double spread = std::max(spec.high - spec.low, 4 * spec.resolution);
      std::uniform_real_distribution<double> offset(spread / 2, spread * 2);
      std::bernoulli_distribution sign(0.5);
      for (std::size_t l = 0; l < spec.n; ++l) {
        const bool stray = l >= spec.n - outliers;
        const double shift = stray ? (sign(rng) ? 1 : -1) * offset(rng) : 0.0;
        for (std::size_t i = 0; i < spec.m; ++i) {
          rows[l][i] =
              quantize(centre[i] + shift + spec.resolution * jitter(rng));
        }
      }
      break;
    }
  }
  return SeriesMatrix::from_rows(rows, std::min(spec.seed_index, spec.n - 1));
}

}  // namespace confband
