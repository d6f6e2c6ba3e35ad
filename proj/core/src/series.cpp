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

#include "confband/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace confband {

SeriesMatrix::SeriesMatrix(std::size_t series_count, std::size_t length,
                           std::vector<double> values, std::size_t seed_index,
                           std::vector<std::string> labels)
    : n_(series_count),
      m_(length),
      values_(std::move(values)),
      seed_(seed_index),
      labels_(std::move(labels)) {
  if (n_ == 0) throw InvalidInput("matrix has no series");
  if (m_ == 0) throw InvalidInput("series have zero length");
  if (values_.size() != n_ * m_) {
    throw InvalidInput("value count does not match " + std::to_string(n_) +
                       "x" + std::to_string(m_));
  }
  if (seed_ >= n_) {
    throw InvalidInput("seed index " + std::to_string(seed_) +
                       " out of range");
  }
  if (!labels_.empty() && labels_.size() != n_) {
    throw InvalidInput("label count does not match series count");
  }
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k])) {
      throw InvalidInput("non-finite value in series " +
                         std::to_string(k / m_) + " at position " +
                         std::to_string(k % m_));
    }
  }
}

SeriesMatrix SeriesMatrix::from_rows(
    const std::vector<std::vector<double>>& rows, std::size_t seed_index,
    std::vector<std::string> labels) {
  if (rows.empty()) throw InvalidInput("matrix has no series");
  const std::size_t m = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * m);
  for (std::size_t l = 0; l < rows.size(); ++l) {
    if (rows[l].size() != m) {
      throw InvalidInput("series " + std::to_string(l) + " has length " +
                         std::to_string(rows[l].size()) + ", expected " +
                         std::to_string(m));
    }
    flat.insert(flat.end(), rows[l].begin(), rows[l].end());
  }
  return SeriesMatrix(rows.size(), m, std::move(flat), seed_index,
                      std::move(labels));
}

std::string SeriesMatrix::label(std::size_t series) const {
  if (labels_.empty()) return std::to_string(series);
  return labels_.at(series);
}

SeriesMatrix SeriesMatrix::with_seed(std::size_t seed_index) const {
  return SeriesMatrix(n_, m_, values_, seed_index, labels_);
}

bool Band::contains(std::size_t series) const {
  return std::binary_search(members.begin(), members.end(), series);
}

Band envelope(const SeriesMatrix& matrix,
              std::span<const std::size_t> members) {
  if (members.empty()) throw InvalidInput("empty band");
  Band band;
  band.members.assign(members.begin(), members.end());
  std::sort(band.members.begin(), band.members.end());
  if (std::adjacent_find(band.members.begin(), band.members.end()) !=
      band.members.end()) {
    throw InvalidInput("repeated member in band");
  }
  if (band.members.back() >= matrix.series_count()) {
    throw InvalidInput("member index " + std::to_string(band.members.back()) +
                       " out of range");
  }
  if (!band.contains(matrix.seed())) throw InvalidInput("seed not in band");

  const auto first = matrix.row(band.members.front());
  band.lower.assign(first.begin(), first.end());
  band.upper.assign(first.begin(), first.end());
  for (std::size_t l : band.members) {
    const auto r = matrix.row(l);
    for (std::size_t i = 0; i < r.size(); ++i) {
      band.lower[i] = std::min(band.lower[i], r[i]);
      band.upper[i] = std::max(band.upper[i], r[i]);
    }
  }
  for (std::size_t i = 0; i < band.lower.size(); ++i) {
    const double gap = band.upper[i] - band.lower[i];
    band.area += gap;
    band.width = std::max(band.width, gap);
  }
  return band;
}

double area_score(const SeriesMatrix& matrix,
                  std::span<const std::size_t> members) {
  return envelope(matrix, members).area;
}

double width_score(const SeriesMatrix& matrix,
                   std::span<const std::size_t> members) {
  return envelope(matrix, members).width;
}

double reg_score(const SeriesMatrix& matrix,
                 std::span<const std::size_t> members, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidInput("invalid alpha");
  }
  const Band band = envelope(matrix, members);
  return band.area - alpha * static_cast<double>(band.size());
}

Members all_series(const SeriesMatrix& matrix) {
  Members all(matrix.series_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return all;
}

SeriesMatrix derive_seed(const std::vector<std::vector<double>>& rows,
                         SeedPolicy policy, std::vector<std::string> labels) {
  if (rows.empty()) throw InvalidInput("matrix has no series");
  const std::size_t n = rows.size();
  const std::size_t m = rows.front().size();
  std::vector<double> seed(m);
  std::vector<double> column(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      if (rows[l].size() != m) {
        throw InvalidInput("series " + std::to_string(l) + " has length " +
                           std::to_string(rows[l].size()) + ", expected " +
                           std::to_string(m));
      }
      column[l] = rows[l][i];
    }
    if (policy == SeedPolicy::median) {
      const auto mid = column.begin() + static_cast<std::ptrdiff_t>((n - 1) / 2);
      std::nth_element(column.begin(), mid, column.end());
      seed[i] = *mid;
    } else {
      seed[i] = std::accumulate(column.begin(), column.end(), 0.0) /
                static_cast<double>(n);
    }
  }

  std::vector<std::vector<double>> extended = rows;
  extended.push_back(std::move(seed));
  if (labels.empty()) {
    for (std::size_t l = 0; l < n; ++l) labels.push_back(std::to_string(l));
  }
  labels.push_back(policy == SeedPolicy::median ? "median" : "mean");
  return SeriesMatrix::from_rows(extended, n, std::move(labels));
}

}  // namespace confband
