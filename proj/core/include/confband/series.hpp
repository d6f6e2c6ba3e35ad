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

#ifndef CONFBAND_SERIES_HPP
#define CONFBAND_SERIES_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace confband {

/// Raised for any input that violates a documented precondition.
/// Command-line front ends map it to a validation exit status.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sorted, duplicate-free list of series indices.
using Members = std::vector<std::size_t>;

/*
 * n time series of common length m, stored row-major, plus the index of the
 * seed series that every band must contain. Immutable after construction.
 */
class SeriesMatrix {
 public:
  SeriesMatrix(std::size_t series_count, std::size_t length,
               std::vector<double> values, std::size_t seed_index,
               std::vector<std::string> labels = {});

  static SeriesMatrix from_rows(const std::vector<std::vector<double>>& rows,
                                std::size_t seed_index,
                                std::vector<std::string> labels = {});

  std::size_t series_count() const { return n_; }
  std::size_t length() const { return m_; }
  std::size_t seed() const { return seed_; }

  double at(std::size_t series, std::size_t position) const {
    return values_[series * m_ + position];
  }
  std::span<const double> row(std::size_t series) const {
    return {values_.data() + series * m_, m_};
  }
  std::span<const double> seed_row() const { return row(seed_); }

  /// Empty when no labels were supplied.
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(std::size_t series) const;

  /// Same data with a different seed.
  SeriesMatrix with_seed(std::size_t seed_index) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<double> values_;
  std::size_t seed_;
  std::vector<std::string> labels_;
};

/*
 * A set of series together with its envelope. `lower` and `upper` hold the
 * per-position minimum and maximum over the members; `area` sums their gap
 * and `width` is the largest gap.
 */
struct Band {
  Members members;
  std::vector<double> lower;
  std::vector<double> upper;
  double area = 0.0;
  double width = 0.0;

  std::size_t size() const { return members.size(); }
  bool contains(std::size_t series) const;
};

/// Members may be given in any order; the returned band lists them sorted.
/// Throws InvalidInput on an empty set, an out-of-range or repeated index,
/// or when the seed is missing.
Band envelope(const SeriesMatrix& matrix, std::span<const std::size_t> members);

double area_score(const SeriesMatrix& matrix,
                  std::span<const std::size_t> members);
double width_score(const SeriesMatrix& matrix,
                   std::span<const std::size_t> members);

/// area - alpha * |members|
double reg_score(const SeriesMatrix& matrix,
                 std::span<const std::size_t> members, double alpha);

/// Every series index, 0..n-1.
Members all_series(const SeriesMatrix& matrix);

enum class SeedPolicy { median, mean };

/// Appends the point-wise lower median (rank floor((n-1)/2)) or mean of
/// `rows` as a new series and makes it the seed. Callers asking for k
/// original series should request k + 1 from the result.
SeriesMatrix derive_seed(const std::vector<std::vector<double>>& rows,
                         SeedPolicy policy,
                         std::vector<std::string> labels = {});

}  // namespace confband

#endif  // CONFBAND_SERIES_HPP
