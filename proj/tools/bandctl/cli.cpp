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

#include "bandctl/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "bandctl/bench.hpp"
#include "bandctl/ingest.hpp"
#include "bandctl/report.hpp"
#include "confband/approx.hpp"
#include "confband/oracle.hpp"
#include "confband/regband.hpp"

namespace bandctl {

using confband::InvalidInput;

namespace {

struct Settings {
  CsvOptions csv;
  std::string seed = "median";
  std::string out_path;
  std::string envelope_path;
  std::uint64_t rng_seed = 0;
  confband::Arithmetic arithmetic = confband::Arithmetic::automatic;

  std::string input;
  std::vector<std::string> inputs;
  std::string k;
  double alpha = 0.0;
  bool best_of = false;
  bool parallel = false;
  bool unrestricted = false;
  std::size_t oracle_cap = confband::kDefaultOracleCap;
  std::vector<std::size_t> synthetic;
  std::size_t outliers = 0;
  bool concurrent = false;
};

void emit(const Settings& settings, const std::string& text, std::ostream& out) {
  if (settings.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(settings.out_path, std::ios::binary);
  if (!file) throw InvalidInput("cannot write '" + settings.out_path + "'");
  file << text;
}

void emit_envelopes(const Settings& settings,
                    const std::vector<const confband::Band*>& bands) {
  if (settings.envelope_path.empty()) return;
  std::ofstream file(settings.envelope_path, std::ios::binary);
  if (!file) throw InvalidInput("cannot write '" + settings.envelope_path + "'");
  write_envelope_csv(file, bands);
}

Dataset load(const Settings& settings) {
  return ingest_csv(settings.input, settings.csv,
                    SeedChoice::parse(settings.seed));
}

confband::ChainOptions chain_options(const Settings& settings) {
  confband::ChainOptions options;
  options.arithmetic = settings.arithmetic;
  options.restrict_subproblems = !settings.unrestricted;
  options.parallel = settings.parallel;
  return options;
}

Json header(const std::string& command, const std::string& algorithm,
            const Dataset& dataset) {
  Json doc;
  doc["command"] = command;
  doc["algorithm"] = algorithm;
  doc["dataset"] = dataset_json(dataset);
  return doc;
}

void add_k(Json& doc, const Settings& settings, std::size_t k,
           const Dataset& dataset) {
  doc["k"] = k;
  doc["k_requested"] = settings.k;
  doc["k_adjusted"] = dataset.seed.derived();
}

void add_band(Json& doc, const Dataset& dataset, const confband::Band& band) {
  const Json fields = band_json(dataset, band);
  for (const auto& [key, value] : fields.items()) doc[key] = value;
}

void run_enum(const Settings& settings, std::ostream& out) {
  const Dataset dataset = load(settings);
  const auto chain = confband::enumerate_chain(dataset.matrix,
                                               chain_options(settings));
  emit(settings, dump(chain_json(dataset, chain)), out);
  std::vector<const confband::Band*> bands;
  for (const auto& band : chain.bands) bands.push_back(&band);
  emit_envelopes(settings, bands);
}

void run_regband(const Settings& settings, std::ostream& out) {
  if (!(settings.alpha > 0.0)) throw InvalidInput("alpha must be positive");
  const Dataset dataset = load(settings);
  confband::SolveOptions options;
  options.arithmetic = settings.arithmetic;
  const auto solution =
      confband::solve_regband(dataset.matrix, settings.alpha, options);
  Json doc = header("regband", "regband", dataset);
  doc["alpha"] = settings.alpha;
  doc["objective"] = solution.objective;
  add_band(doc, dataset, solution.band);
  emit(settings, dump(doc), out);
  emit_envelopes(settings, {&solution.band});
}

void run_approx(const std::string& command, const Settings& settings,
                std::ostream& out) {
  const Dataset dataset = load(settings);
  const auto& matrix = dataset.matrix;
  const std::size_t k = resolve_k(settings.k, dataset);

  confband::ApproxResult result;
  Json extra;
  if (command == "sum") {
    const auto chain = confband::enumerate_chain(matrix, chain_options(settings));
    result = confband::find_sum(matrix, k, chain);
    extra["base_band"] = *result.base_band_index;
    extra["candidates"] = confband::to_string(*result.candidate_mode);
    if (settings.best_of) {
      const auto peeled = confband::peel(matrix, k);
      extra["best_of"] = {{"findsum", result.band.area},
                          {"peel", peeled.band.area}};
      // Ties keep FindSum.
      if (peeled.band.area < result.band.area) {
        result = peeled;
        extra.erase("base_band");
        extra.erase("candidates");
      }
    }
  } else if (command == "inf") {
    result = confband::find_inf(matrix, k);
    extra["selected_distance"] = *result.selected_distance;
  } else if (command == "peel") {
    result = confband::peel(matrix, k);
  } else {
    result.band = confband::exact_sumband(matrix, k, settings.oracle_cap);
    result.algorithm = confband::Algorithm::oracle;
  }

  Json doc = header(command, std::string(confband::to_string(result.algorithm)),
                    dataset);
  add_k(doc, settings, k, dataset);
  add_band(doc, dataset, result.band);
  for (auto& [key, value] : extra.items()) doc[key] = value;
  emit(settings, dump(doc), out);
  emit_envelopes(settings, {&result.band});
}

void run_bench(const Settings& settings, std::ostream& out) {
  if (!settings.envelope_path.empty()) {
    throw InvalidInput("--envelope-csv does not apply to bench");
  }
  if (settings.inputs.empty() && settings.synthetic.empty()) {
    throw InvalidInput("bench needs at least one input file or --synthetic");
  }
  const SeedChoice seed = SeedChoice::parse(settings.seed);
  std::vector<Dataset> datasets;
  for (const auto& path : settings.inputs) {
    datasets.push_back(ingest_csv(path, settings.csv, seed));
  }
  if (!settings.synthetic.empty()) {
    confband::InstanceSpec spec;
    spec.n = settings.synthetic[0];
    spec.m = settings.synthetic[1];
    spec.flavor = confband::Flavor::clustered;
    spec.outliers = std::min(settings.outliers, spec.n);
    spec.rng_seed = settings.rng_seed;
    const auto matrix = confband::generate(spec);
    RawTable table;
    for (std::size_t i = 0; i < matrix.series_count(); ++i) {
      const auto row = matrix.row(i);
      table.rows.emplace_back(row.begin(), row.end());
    }
    datasets.push_back(make_dataset("synthetic-" + std::to_string(spec.n) +
                                        "x" + std::to_string(spec.m),
                                    std::move(table), seed));
  }
  const auto reports =
      run_benchmarks(datasets, chain_options(settings), settings.concurrent);
  write_report_table(out, reports);
  if (!settings.out_path.empty()) {
    std::ofstream file(settings.out_path, std::ios::binary);
    if (!file) throw InvalidInput("cannot write '" + settings.out_path + "'");
    write_report_csv(file, reports);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Settings settings;
  CLI::App app{"Confidence bands for collections of time series", "bandctl"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_flag("--header", settings.csv.header, "Skip the first CSV line");
  app.add_flag("--labels", settings.csv.labels,
               "First CSV column holds series labels");
  app.add_option("--seed", settings.seed,
                 "Seed series: index:<i>, median, mean or row-label:<name>")
      ->capture_default_str();
  app.add_option("--out", settings.out_path,
                 "Write the JSON document (CSV report for bench) here");
  app.add_option("--envelope-csv", settings.envelope_path,
                 "Write band envelopes as CSV");
  app.add_option("--rng-seed", settings.rng_seed,
                 "Seed for synthetic data")
      ->capture_default_str();
  const std::map<std::string, confband::Arithmetic> arithmetic = {
      {"auto", confband::Arithmetic::automatic},
      {"floating", confband::Arithmetic::floating},
      {"exact", confband::Arithmetic::exact}};
  app.add_option("--arithmetic", settings.arithmetic,
                 "Min-cut arithmetic: auto, floating or exact")
      ->transform(CLI::CheckedTransformer(arithmetic, CLI::ignore_case));

  auto* enum_cmd = app.add_subcommand("enum", "Enumerate the chain of bands");
  enum_cmd->add_option("input", settings.input, "CSV file")->required();
  enum_cmd->add_flag("--parallel", settings.parallel,
                     "Solve independent splits concurrently");
  enum_cmd->add_flag("--unrestricted", settings.unrestricted,
                     "Solve every split on the full instance");

  auto* reg_cmd = app.add_subcommand("regband", "Solve one regularized band");
  reg_cmd->add_option("input", settings.input, "CSV file")->required();
  reg_cmd->add_option("--alpha", settings.alpha, "Penalty per series")
      ->required();

  std::map<std::string, CLI::App*> approx_cmds;
  const std::vector<std::pair<std::string, std::string>> approx = {
      {"sum", "Area band of size k (FindSum)"},
      {"inf", "Width band of size k (FindInf)"},
      {"peel", "Area band of size k (Peel baseline)"},
      {"oracle", "Exact area band of size k by enumeration"}};
  for (const auto& [name, help] : approx) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("input", settings.input, "CSV file")->required();
    cmd->add_option("--k", settings.k,
                    "Band size, or a fraction in (0, 1] of the series")
        ->required();
    approx_cmds[name] = cmd;
  }
  approx_cmds["sum"]->add_flag("--best-of", settings.best_of,
                               "Also run Peel and keep the smaller area");
  approx_cmds["oracle"]
      ->add_option("--cap", settings.oracle_cap, "Largest n to enumerate")
      ->check(CLI::Range(1, 20))
      ->capture_default_str();

  auto* bench_cmd = app.add_subcommand("bench", "Benchmark report over datasets");
  bench_cmd->add_option("inputs", settings.inputs, "CSV files");
  bench_cmd->add_option("--synthetic", settings.synthetic,
                        "Add a clustered synthetic instance with N series of "
                        "length M")
      ->expected(2)
      ->type_name("N M");
  bench_cmd->add_option("--outliers", settings.outliers,
                        "Outlier series in the synthetic instance");
  bench_cmd->add_flag("--concurrent", settings.concurrent,
                      "Process datasets concurrently");
  bench_cmd->add_flag("--parallel", settings.parallel,
                      "Solve independent splits concurrently");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (!settings.synthetic.empty() &&
        (settings.synthetic[0] < 1 || settings.synthetic[1] < 1)) {
      throw InvalidInput("--synthetic needs positive N and M");
    }
    if (*enum_cmd) {
      run_enum(settings, out);
    } else if (*reg_cmd) {
      run_regband(settings, out);
    } else if (*bench_cmd) {
      run_bench(settings, out);
    } else {
      for (const auto& [name, cmd] : approx_cmds) {
        if (*cmd) run_approx(name, settings, out);
      }
    }
  } catch (const InvalidInput& error) {
    err << "bandctl: " << error.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& error) {
    err << "bandctl: internal error: " << error.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace bandctl
