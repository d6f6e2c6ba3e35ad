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

#ifndef BANDCTL_BENCH_HPP
#define BANDCTL_BENCH_HPP

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bandctl/ingest.hpp"
#include "confband/chain.hpp"

namespace bandctl {

struct AlgorithmScore {
  std::string algorithm;
  /// Empty when the algorithm does not apply to this k.
  std::optional<double> area;
  std::optional<double> width;
  double seconds = 0.0;
};

struct KReport {
  std::string fraction;
  std::size_t k = 0;
  std::vector<AlgorithmScore> scores;  // findsum, peel, findinf
};

struct RunReport {
  std::string dataset;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t chain_length = 0;
  /// Size of the smallest chain band with more than one series.
  std::size_t first_band_size = 0;
  double chain_seconds = 0.0;
  std::vector<KReport> ks;
};

inline const std::vector<std::string> kBenchFractions = {"0.9", "0.95"};

RunReport run_benchmark(const Dataset& dataset,
                        const confband::ChainOptions& options);

/// Reports come back in input order.
std::vector<RunReport> run_benchmarks(const std::vector<Dataset>& datasets,
                                      const confband::ChainOptions& options,
                                      bool concurrent);

void write_report_csv(std::ostream& out, const std::vector<RunReport>& reports);
void write_report_table(std::ostream& out,
                        const std::vector<RunReport>& reports);

}  // namespace bandctl

#endif  // BANDCTL_BENCH_HPP
