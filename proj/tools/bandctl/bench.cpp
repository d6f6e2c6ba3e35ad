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

#include "bandctl/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <future>

#include "bandctl/report.hpp"
#include "confband/approx.hpp"

namespace bandctl {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

AlgorithmScore score(const std::string& name, const Dataset& dataset,
                     const std::function<confband::ApproxResult()>& run) {
  AlgorithmScore out;
  out.algorithm = name;
  const auto start = Clock::now();
  try {
    const auto result = run();
    out.seconds = seconds_since(start);
    const Normalized normalized = normalize(dataset.matrix, result.band);
    out.area = normalized.area;
    out.width = normalized.width;
  } catch (const confband::InvalidInput&) {
    // k below the innermost chain band: FindSum has no answer.
    out.seconds = seconds_since(start);
  }
  return out;
}

std::string fixed(std::optional<double> value, int digits) {
  if (!value) return "-";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, *value);
  return buffer;
}

std::string csv_value(std::optional<double> value) {
  return value ? format_double(*value) : "";
}

std::string percent_label(const std::string& fraction) {
  return "p" + fraction.substr(fraction.find('.') + 1) +
         (fraction.size() == 3 ? "0" : "");
}

}  // namespace

RunReport run_benchmark(const Dataset& dataset,
                        const confband::ChainOptions& options) {
  const auto& matrix = dataset.matrix;
  RunReport report;
  report.dataset = dataset.name;
  report.n = dataset.input_count;
  report.m = matrix.length();

  const auto start = Clock::now();
  const auto chain = confband::enumerate_chain(matrix, options);
  report.chain_seconds = seconds_since(start);
  report.chain_length = chain.size();
  report.first_band_size = chain.bands.back().size();
  for (const auto& band : chain.bands) {
    if (band.size() > 1) {
      report.first_band_size = band.size();
      break;
    }
  }

  for (const std::string& fraction : kBenchFractions) {
    KReport entry;
    entry.fraction = fraction;
    entry.k = resolve_k(fraction, dataset);
    const std::size_t k = entry.k;
    entry.scores.push_back(score("findsum", dataset, [&] {
      return confband::find_sum(matrix, k, chain);
    }));
    entry.scores.push_back(score("peel", dataset, [&] {
      return confband::peel(matrix, k);
    }));
    entry.scores.push_back(score("findinf", dataset, [&] {
      return confband::find_inf(matrix, k);
    }));
    report.ks.push_back(std::move(entry));
  }
  return report;
}

std::vector<RunReport> run_benchmarks(const std::vector<Dataset>& datasets,
                                      const confband::ChainOptions& options,
                                      bool concurrent) {
  std::vector<RunReport> reports;
  if (!concurrent) {
    for (const auto& dataset : datasets) {
      reports.push_back(run_benchmark(dataset, options));
    }
    return reports;
  }
  std::vector<std::future<RunReport>> pending;
  for (const auto& dataset : datasets) {
    pending.push_back(std::async(std::launch::async, [&dataset, &options] {
      return run_benchmark(dataset, options);
    }));
  }
  for (auto& future : pending) reports.push_back(future.get());
  return reports;
}

void write_report_csv(std::ostream& out, const std::vector<RunReport>& reports) {
  out << "dataset,n,m,chain_length,first_band_size,chain_seconds";
  for (const auto& fraction : kBenchFractions) {
    const std::string tag = percent_label(fraction);
    out << ",k_" << tag;
    for (const char* algorithm : {"findsum", "peel", "findinf"}) {
      out << ',' << algorithm << "_area_" << tag << ',' << algorithm
          << "_width_" << tag << ',' << algorithm << "_seconds_" << tag;
    }
  }
  out << '\n';
  for (const auto& report : reports) {
    out << report.dataset << ',' << report.n << ',' << report.m << ','
        << report.chain_length << ',' << report.first_band_size << ','
        << format_double(report.chain_seconds);
    for (const auto& entry : report.ks) {
      out << ',' << entry.k;
      for (const auto& s : entry.scores) {
        out << ',' << csv_value(s.area) << ',' << csv_value(s.width) << ','
            << format_double(s.seconds);
      }
    }
    out << '\n';
  }
}

void write_report_table(std::ostream& out,
                        const std::vector<RunReport>& reports) {
  std::vector<std::string> header = {"dataset", "n", "m", "|chain|", "|B1|",
                                     "chain s"};
  for (const auto& fraction : kBenchFractions) {
    const std::string tag = "@" + fraction;
    for (const char* column : {"k", "sum s1", "peel s1", "inf s1", "sum sinf",
                               "peel sinf", "inf sinf"}) {
      header.push_back(column + tag);
    }
  }
  std::vector<std::vector<std::string>> rows = {header};
  for (const auto& report : reports) {
    std::vector<std::string> row = {
        report.dataset, std::to_string(report.n), std::to_string(report.m),
        std::to_string(report.chain_length),
        std::to_string(report.first_band_size),
        fixed(report.chain_seconds, 3)};
    for (const auto& entry : report.ks) {
      row.push_back(std::to_string(entry.k));
      for (const auto& s : entry.scores) row.push_back(fixed(s.area, 2));
      for (const auto& s : entry.scores) row.push_back(fixed(s.width, 2));
    }
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << "  ";
      // Left-align names, right-align numbers.
      const std::string pad(widths[c] - row[c].size(), ' ');
      out << (c == 0 ? row[c] + pad : pad + row[c]);
    }
    out << '\n';
  }
}

}  // namespace bandctl
