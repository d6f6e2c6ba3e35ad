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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "bandctl/bench.hpp"
#include "bandctl/cli.hpp"
#include "bandctl/ingest.hpp"
#include "bandctl/report.hpp"
#include "confband/oracle.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace bandctl;
using confband::InvalidInput;
using confband::Members;
namespace fs = std::filesystem;

namespace {

const fs::path kData = fs::path(CONFBAND_TEST_SOURCE_DIR) / "data";
const fs::path kGolden = fs::path(CONFBAND_TEST_SOURCE_DIR) / "golden";

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

RawTable parse(const std::string& text, CsvOptions options = {}) {
  std::istringstream in(text);
  return read_csv(in, options);
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("bandctl-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path file(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

void write_matrix_csv(const fs::path& path, const confband::SeriesMatrix& matrix) {
  std::ofstream out(path);
  for (std::size_t i = 0; i < matrix.series_count(); ++i) {
    for (std::size_t t = 0; t < matrix.length(); ++t) {
      out << (t ? "," : "") << format_double(matrix.at(i, t));
    }
    out << '\n';
  }
}

Members member_indices(const Json& doc) {
  Members out;
  for (const auto& member : doc["members"]) out.push_back(member["index"]);
  return out;
}

}  // namespace

TEST_CASE("csv ingest of the constant example") {
  const auto table = parse("0\n-1\n2\n2\n");
  REQUIRE(table.rows.size() == 4);
  CHECK(table.rows[1] == std::vector<double>{-1.0});
  CHECK(table.labels.empty());

  const auto indexed = make_dataset("e1", table, SeedChoice::parse("index:0"));
  CHECK(indexed.matrix.series_count() == 4);
  CHECK(indexed.matrix.seed() == 0);

  const auto median = make_dataset("e1", table, SeedChoice::parse("median"));
  CHECK(median.matrix.series_count() == 5);
  CHECK(median.matrix.seed() == 4);
  CHECK(median.matrix.at(4, 0) == 0.0);
  CHECK(median.input_count == 4);
  CHECK(median.matrix.label(4) == "median");
}

TEST_CASE("csv ingest errors carry coordinates") {
  CHECK_THROWS_WITH_AS(parse("1,2,3\n1,2,3,4\n"),
                       "row 2 has 4 values, row 1 has 3", InvalidInput);
  CHECK_THROWS_WITH_AS(parse("1,x\n"), "row 1, column 2: non-numeric value 'x'",
                       InvalidInput);
  CHECK_THROWS_WITH_AS(parse("1,,2\n"), "row 1, column 2: empty cell",
                       InvalidInput);
  CHECK_THROWS_WITH_AS(parse("\n\n"), "empty file", InvalidInput);
  CHECK_THROWS_WITH_AS(parse("h1,h2\n", {true, false}), "empty file",
                       InvalidInput);
  CHECK_THROWS_AS(read_csv_file("/nonexistent/file.csv", {}), InvalidInput);
}

TEST_CASE("header, labels and seed policies") {
  const auto table = parse("name,t0,t1\r\na, 1,2\r\n\"b\",3,+4\r\nc,5,6\r\n",
                           {true, true});
  CHECK(table.labels == std::vector<std::string>{"a", "b", "c"});
  CHECK(table.rows[1] == std::vector<double>{3.0, 4.0});

  const auto by_label = make_dataset("x", table, SeedChoice::parse("row-label:b"));
  CHECK(by_label.matrix.seed() == 1);
  CHECK(by_label.matrix.label(2) == "c");
  CHECK_THROWS_AS(make_dataset("x", table, SeedChoice::parse("row-label:z")),
                  InvalidInput);
  CHECK_THROWS_AS(make_dataset("x", table, SeedChoice::parse("index:3")),
                  InvalidInput);
  CHECK_THROWS_WITH_AS(
      make_dataset("x", parse("1\n2\n"), SeedChoice::parse("row-label:a")),
      "seed row-label:a requires a label column (--labels)", InvalidInput);

  const auto mean = make_dataset("x", table, SeedChoice::parse("mean"));
  CHECK(mean.matrix.at(3, 0) == 3.0);
  CHECK(mean.matrix.at(3, 1) == 4.0);

  CHECK_THROWS_AS(SeedChoice::parse("first"), InvalidInput);
  CHECK_THROWS_AS(SeedChoice::parse("index:-1"), InvalidInput);
  CHECK(SeedChoice::parse("index:7").index == 7);
}

TEST_CASE("k resolution") {
  const auto table = parse("0\n1\n2\n3\n4\n5\n6\n7\n8\n9\n");
  const auto indexed = make_dataset("x", table, SeedChoice::parse("index:0"));
  const auto median = make_dataset("x", table, SeedChoice::parse("median"));
  CHECK(resolve_k("3", indexed) == 3);
  CHECK(resolve_k("0.9", indexed) == 9);
  CHECK(resolve_k("0.95", indexed) == 9);
  CHECK(resolve_k("1.0", indexed) == 10);
  CHECK(resolve_k("3", median) == 4);
  CHECK(resolve_k("0.9", median) == 10);
  CHECK_THROWS_AS(resolve_k("0", indexed), InvalidInput);
  CHECK_THROWS_AS(resolve_k("11", indexed), InvalidInput);
  CHECK_THROWS_AS(resolve_k("1.5", indexed), InvalidInput);
  CHECK_THROWS_AS(resolve_k("0.05", indexed), InvalidInput);
  CHECK_THROWS_AS(resolve_k("abc", indexed), InvalidInput);
}

TEST_CASE("golden documents are byte stable") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"e1_enum", {"enum", "e1.csv"}},
      {"e1_sum", {"sum", "e1.csv", "--k", "3"}},
      {"e1_inf", {"inf", "e1.csv", "--k", "2"}},
      {"e1_peel", {"peel", "e1.csv", "--k", "3"}},
      {"e1_oracle", {"oracle", "e1.csv", "--k", "3"}},
      {"e2_enum", {"enum", "e2.csv"}},
      {"e2_sum", {"sum", "e2.csv", "--k", "1"}},
      {"e2_inf", {"inf", "e2.csv", "--k", "2"}},
      {"e2_peel", {"peel", "e2.csv", "--k", "1"}},
      {"e2_oracle", {"oracle", "e2.csv", "--k", "2"}},
  };
  for (const auto& [golden, base] : cases) {
    CAPTURE(golden);
    std::vector<std::string> args = base;
    args[1] = (kData / args[1]).string();
    args.insert(args.end(), {"--seed", "index:0"});
    const auto first = run(args);
    REQUIRE(first.code == 0);
    CHECK(first.out == slurp(kGolden / (golden + ".json")));
    CHECK(run(args).out == first.out);
  }
}

TEST_CASE("documents carry the traced results") {
  const std::string e1 = (kData / "e1.csv").string();
  const auto sum = Json::parse(run({"sum", e1, "--k", "3", "--seed", "index:0"}).out);
  CHECK(member_indices(sum) == Members{0, 1, 2});
  CHECK(sum["area"] == 3.0);

  const auto inf = Json::parse(run({"inf", e1, "--k", "2", "--seed", "index:0"}).out);
  CHECK(member_indices(inf) == Members{0, 1});
  CHECK(inf["width"] == 1.0);
  CHECK(inf["normalized"]["width"].get<double>() == doctest::Approx(100.0 / 3.0));

  const auto chain = Json::parse(
      run({"enum", (kData / "e2.csv").string(), "--seed", "index:0"}).out);
  CHECK(chain["bands"].size() == 2);
  CHECK(chain["breakpoints"] == Json::array({3.0}));
  CHECK(chain["delta"] == 1.0);

  const auto median = Json::parse(run({"sum", e1, "--k", "3"}).out);
  CHECK(median["k"] == 4);
  CHECK(median["k_adjusted"] == true);
  CHECK(median["dataset"]["n"] == 5);
}

TEST_CASE("regband and best-of documents") {
  const std::string e1 = (kData / "e1.csv").string();
  const auto all = Json::parse(
      run({"regband", e1, "--alpha", "1", "--seed", "index:0"}).out);
  CHECK(member_indices(all) == Members{0, 1, 2, 3});
  CHECK(all["objective"] == -1.0);
  const auto seed_only = Json::parse(
      run({"regband", e1, "--alpha", "0.5", "--seed", "index:0"}).out);
  CHECK(member_indices(seed_only) == Members{0});

  const auto best = Json::parse(
      run({"sum", e1, "--k", "3", "--best-of", "--seed", "index:0"}).out);
  CHECK(best["algorithm"] == "peel");
  CHECK(best["area"] == 2.0);
  CHECK(best["best_of"]["findsum"] == 3.0);
}

TEST_CASE("exit codes and contradictory flags") {
  const std::string e1 = (kData / "e1.csv").string();
  CHECK(run({}).code == kExitInvalid);
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"sum", e1}).code == kExitInvalid);
  CHECK(run({"sum", e1, "--k", "1.5"}).code == kExitInvalid);
  CHECK(run({"regband", e1, "--alpha", "-1"}).code == kExitInvalid);
  CHECK(run({"regband", e1, "--alpha", "0"}).code == kExitInvalid);
  CHECK(run({"peel", e1, "--k", "2", "--seed", "row-label:x"}).code ==
        kExitInvalid);
  CHECK(run({"bench", e1, "--envelope-csv", "x.csv"}).code == kExitInvalid);
  CHECK(run({"bench"}).code == kExitInvalid);
  CHECK(run({"oracle", e1, "--k", "2", "--cap", "21"}).code == kExitInvalid);
  CHECK(run({"enum", "/nonexistent.csv"}).code == kExitInvalid);
  const auto below = run({"sum", e1, "--k", "1", "--seed", "index:2"});
  CHECK(below.code == kExitInvalid);
  CHECK(below.err.find("k below minimal band") != std::string::npos);
}

TEST_CASE("band documents round-trip through rescoring") {
  std::mt19937_64 rng(71);
  TempDir dir;
  for (int trial = 0; trial < 30; ++trial) {
    confband::InstanceSpec spec;
    spec.n = 3 + rng() % 10;
    spec.m = 1 + rng() % 6;
    spec.resolution = 0.01;
    spec.flavor = confband::Flavor::random_walk;
    spec.rng_seed = rng();
    const auto matrix = confband::generate(spec);
    const auto path = dir.file("rt.csv");
    write_matrix_csv(path, matrix);
    const auto table = read_csv_file(path.string(), {});
    const auto reread = make_dataset("rt", table, SeedChoice::parse("median"));

    for (const char* command : {"sum", "inf", "peel"}) {
      const auto result = run({command, path.string(), "--k", "0.9"});
      REQUIRE(result.code == 0);
      const auto doc = Json::parse(result.out);
      const Members members = member_indices(doc);
      CHECK(std::abs(confband::area_score(reread.matrix, members) -
                     doc["area"].get<double>()) <= 1e-9);
      CHECK(std::abs(confband::width_score(reread.matrix, members) -
                     doc["width"].get<double>()) <= 1e-9);
    }
  }
}

TEST_CASE("chain envelope csv curves are nested") {
  std::mt19937_64 rng(73);
  TempDir dir;
  for (int trial = 0; trial < 15; ++trial) {
    confband::InstanceSpec spec;
    spec.n = 10 + rng() % 30;
    spec.m = 2 + rng() % 10;
    spec.flavor = confband::Flavor::clustered;
    spec.outliers = 1 + rng() % 5;
    spec.rng_seed = rng();
    const auto input = dir.file("nest.csv");
    const auto envelopes = dir.file("nest_env.csv");
    write_matrix_csv(input, confband::generate(spec));
    REQUIRE(run({"enum", input.string(), "--envelope-csv", envelopes.string()})
                .code == 0);

    const auto table = parse(slurp(envelopes), {true, false});
    REQUIRE(table.rows.size() == spec.m);
    const std::size_t bands = (table.rows[0].size() - 1) / 2;
    CHECK(bands >= 1);
    for (const auto& row : table.rows) {
      for (std::size_t j = 1; j < bands; ++j) {
        CHECK(row[j] >= row[j + 1]);                  // lower_j >= lower_j+1
        CHECK(row[bands + j] <= row[bands + j + 1]);  // upper_j <= upper_j+1
      }
    }
  }
}

TEST_CASE("oracle and sum agree on chain band sizes") {
  std::mt19937_64 rng(79);
  TempDir dir;
  for (int trial = 0; trial < 25; ++trial) {
    const auto matrix = confband::testing::random_small(rng, 2, 9, 4);
    const auto path = dir.file("agree.csv");
    write_matrix_csv(path, matrix);
    const std::string seed = "index:" + std::to_string(matrix.seed());
    const auto chain = Json::parse(run({"enum", path.string(), "--seed", seed}).out);
    for (const auto& band : chain["bands"]) {
      const std::string k = std::to_string(band["size"].get<std::size_t>());
      const auto sum = Json::parse(run({"sum", path.string(), "--k", k, "--seed", seed}).out);
      const auto oracle =
          Json::parse(run({"oracle", path.string(), "--k", k, "--seed", seed}).out);
      CHECK(sum["area"].get<double>() ==
            doctest::Approx(oracle["area"].get<double>()));
    }
  }
}

TEST_CASE("benchmark reports") {
  const std::string e1 = (kData / "e1.csv").string();
  const std::string e2 = (kData / "e2.csv").string();
  TempDir dir;
  const auto csv = dir.file("report.csv");
  const auto result = run({"bench", e1, e2, "--seed", "index:0", "--out",
                           csv.string()});
  REQUIRE(result.code == 0);
  const auto report = parse(slurp(csv), {true, true});
  CHECK(report.labels == std::vector<std::string>{"e1", "e2"});
  // Table: header plus one row per dataset.
  CHECK(std::count(result.out.begin(), result.out.end(), '\n') == 3);

  // With k = n every algorithm returns the whole envelope.
  for (const char* command : {"sum", "peel", "inf", "oracle"}) {
    const auto full = Json::parse(
        run({command, e1, "--k", "1.0", "--seed", "index:0"}).out);
    CHECK(full["normalized"]["area"] == 100.0);
    CHECK(full["normalized"]["width"] == 100.0);
  }

  confband::InstanceSpec spec;
  spec.n = 200;
  spec.m = 50;
  spec.flavor = confband::Flavor::clustered;
  spec.outliers = 10;
  spec.rng_seed = 5;
  const auto matrix = confband::generate(spec);
  RawTable table;
  for (std::size_t i = 0; i < matrix.series_count(); ++i) {
    const auto row = matrix.row(i);
    table.rows.emplace_back(row.begin(), row.end());
  }
  const auto datasets = std::vector<Dataset>{
      make_dataset("synthetic", table, SeedChoice::parse("median")),
      make_dataset("e1", read_csv_file(e1, {}), SeedChoice::parse("index:0"))};
  const auto reports = run_benchmarks(datasets, {}, true);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].dataset == "synthetic");
  CHECK(reports[0].chain_length < 201);
  CHECK(reports[0].ks[0].k == 181);
  CHECK(reports[0].ks[1].k == 191);
  CHECK(reports[1].dataset == "e1");
  for (const auto& entry : reports[0].ks) {
    for (const auto& score : entry.scores) {
      REQUIRE(score.area);
      CHECK(*score.area >= 0.0);
      CHECK(*score.area <= 100.0);
    }
  }
  const auto cli = run({"bench", "--synthetic", "200", "50", "--rng-seed", "5",
                        "--outliers", "10"});
  CHECK(cli.code == 0);
  CHECK(cli.out.find("synthetic-200x50") != std::string::npos);
}

TEST_CASE("normalization with a zero denominator") {
  const auto flat = confband::SeriesMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}, 0);
  const auto band = confband::envelope(flat, Members{0});
  const auto normalized = normalize(flat, band);
  CHECK(normalized.area == 100.0);
  CHECK(normalized.width == 100.0);
}
