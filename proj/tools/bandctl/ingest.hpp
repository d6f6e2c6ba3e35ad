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

#ifndef BANDCTL_INGEST_HPP
#define BANDCTL_INGEST_HPP

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "confband/series.hpp"

namespace bandctl {

struct CsvOptions {
  bool header = false;
  /// First column holds a series label.
  bool labels = false;
};

struct RawTable {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
};

/// Comma-separated numbers, one series per line. Errors are
/// confband::InvalidInput naming the 1-based row and column.
RawTable read_csv(std::istream& in, const CsvOptions& options);
RawTable read_csv_file(const std::string& path, const CsvOptions& options);

struct SeedChoice {
  enum class Kind { index, median, mean, row_label };
  Kind kind = Kind::median;
  std::size_t index = 0;
  std::string label;

  /// Accepts "index:<i>", "median", "mean" or "row-label:<name>".
  static SeedChoice parse(const std::string& text);
  std::string describe() const;
  bool derived() const { return kind == Kind::median || kind == Kind::mean; }
};

struct Dataset {
  std::string name;
  confband::SeriesMatrix matrix;
  SeedChoice seed;
  /// Series in the input, before any derived seed was appended.
  std::size_t input_count = 0;
};

Dataset make_dataset(std::string name, RawTable table, const SeedChoice& seed);
Dataset ingest_csv(const std::string& path, const CsvOptions& options,
                   const SeedChoice& seed);

/// Resolves a --k argument against the input series count. Integers are
/// taken as is; values containing '.' are fractions in (0, 1] floored
/// against the count. A derived seed adds one.
std::size_t resolve_k(const std::string& text, const Dataset& dataset);

}  // namespace bandctl

#endif  // BANDCTL_INGEST_HPP
