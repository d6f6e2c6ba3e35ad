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

#include "bandctl/ingest.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <utility>

#include "confband/approx.hpp"

namespace bandctl {

using confband::InvalidInput;

namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

std::string unquote(std::string_view text) {
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') {
    text = text.substr(1, text.size() - 2);
  }
  return std::string(text);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string where(std::size_t row, std::size_t column) {
  return "row " + std::to_string(row) + ", column " + std::to_string(column);
}

double parse_cell(std::string_view cell, std::size_t row, std::size_t column) {
  if (cell.empty()) throw InvalidInput(where(row, column) + ": empty cell");
  std::string_view digits = cell;
  if (digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [end, error] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (error != std::errc{} || end != digits.data() + digits.size()) {
    throw InvalidInput(where(row, column) + ": non-numeric value '" +
                       std::string(cell) + "'");
  }
  if (!std::isfinite(value)) {
    throw InvalidInput(where(row, column) + ": non-finite value");
  }
  return value;
}

std::size_t parse_index(std::string_view text, const std::string& what) {
  std::size_t value = 0;
  const auto [end, error] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || error != std::errc{} || end != text.data() + text.size()) {
    throw InvalidInput("invalid " + what + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

RawTable read_csv(std::istream& in, const CsvOptions& options) {
  RawTable table;
  std::string line;
  std::size_t row = 0;
  std::size_t width = 0;
  std::size_t width_row = 0;
  bool skipped_header = !options.header;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    const auto cells = split(line);
    std::size_t first = 0;
    if (options.labels) {
      if (cells.size() < 2) {
        throw InvalidInput("row " + std::to_string(row) +
                           ": label without values");
      }
      table.labels.push_back(unquote(cells[0]));
      first = 1;
    }
    std::vector<double> values;
    values.reserve(cells.size() - first);
    for (std::size_t c = first; c < cells.size(); ++c) {
      values.push_back(parse_cell(cells[c], row, c + 1));
    }
    if (table.rows.empty()) {
      width = values.size();
      width_row = row;
    } else if (values.size() != width) {
      throw InvalidInput("row " + std::to_string(row) + " has " +
                         std::to_string(values.size()) + " values, row " +
                         std::to_string(width_row) + " has " +
                         std::to_string(width));
    }
    table.rows.push_back(std::move(values));
  }
  if (table.rows.empty()) throw InvalidInput("empty file");
  return table;
}

RawTable read_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return read_csv(in, options);
  } catch (const InvalidInput& error) {
    throw InvalidInput(path + ": " + error.what());
  }
}

SeedChoice SeedChoice::parse(const std::string& text) {
  SeedChoice choice;
  if (text == "median") {
    choice.kind = Kind::median;
  } else if (text == "mean") {
    choice.kind = Kind::mean;
  } else if (text.rfind("index:", 0) == 0) {
    choice.kind = Kind::index;
    choice.index = parse_index(std::string_view(text).substr(6), "seed index");
  } else if (text.rfind("row-label:", 0) == 0 && text.size() > 10) {
    choice.kind = Kind::row_label;
    choice.label = text.substr(10);
  } else {
    throw InvalidInput("invalid seed policy '" + text +
                       "' (expected index:<i>, median, mean or "
                       "row-label:<name>)");
  }
  return choice;
}

std::string SeedChoice::describe() const {
  switch (kind) {
    case Kind::index: return "index:" + std::to_string(index);
    case Kind::median: return "median";
    case Kind::mean: return "mean";
    case Kind::row_label: return "row-label:" + label;
  }
  return {};
}

Dataset make_dataset(std::string name, RawTable table, const SeedChoice& seed) {
  const std::size_t count = table.rows.size();
  switch (seed.kind) {
    case SeedChoice::Kind::median:
    case SeedChoice::Kind::mean: {
      const auto policy = seed.kind == SeedChoice::Kind::median
                              ? confband::SeedPolicy::median
                              : confband::SeedPolicy::mean;
      return {std::move(name),
              confband::derive_seed(table.rows, policy, std::move(table.labels)),
              seed, count};
    }
    case SeedChoice::Kind::index:
      if (seed.index >= count) {
        throw InvalidInput("seed index " + std::to_string(seed.index) +
                           " out of range for " + std::to_string(count) +
                           " series");
      }
      return {std::move(name),
              confband::SeriesMatrix::from_rows(table.rows, seed.index,
                                                std::move(table.labels)),
              seed, count};
    case SeedChoice::Kind::row_label: {
      if (table.labels.empty()) {
        throw InvalidInput("seed row-label:" + seed.label +
                           " requires a label column (--labels)");
      }
      std::size_t found = count;
      for (std::size_t i = 0; i < count; ++i) {
        if (table.labels[i] != seed.label) continue;
        if (found != count) {
          throw InvalidInput("seed label '" + seed.label + "' is not unique");
        }
        found = i;
      }
      if (found == count) {
        throw InvalidInput("no series labelled '" + seed.label + "'");
      }
      return {std::move(name),
              confband::SeriesMatrix::from_rows(table.rows, found,
                                                std::move(table.labels)),
              seed, count};
    }
  }
  throw std::logic_error("unknown seed policy");
}

Dataset ingest_csv(const std::string& path, const CsvOptions& options,
                   const SeedChoice& seed) {
  return make_dataset(std::filesystem::path(path).stem().string(),
                      read_csv_file(path, options), seed);
}

std::size_t resolve_k(const std::string& text, const Dataset& dataset) {
  const std::size_t count = dataset.input_count;
  std::size_t k = 0;
  if (text.find('.') != std::string::npos) {
    double fraction = 0.0;
    const auto [end, error] =
        std::from_chars(text.data(), text.data() + text.size(), fraction);
    if (error != std::errc{} || end != text.data() + text.size()) {
      throw InvalidInput("invalid k '" + text + "'");
    }
    k = confband::k_from_fraction(fraction, count);
  } else {
    k = parse_index(text, "k");
    if (k < 1 || k > count) {
      throw InvalidInput("k = " + std::to_string(k) + " out of range [1, " +
                         std::to_string(count) + "]");
    }
  }
  return dataset.seed.derived() ? k + 1 : k;
}

}  // namespace bandctl
