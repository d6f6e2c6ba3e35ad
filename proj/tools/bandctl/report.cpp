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

#include "bandctl/report.hpp"

#include <array>
#include <charconv>

namespace bandctl {

using confband::Band;

Normalized normalize(const confband::SeriesMatrix& matrix, const Band& band) {
  const auto all = confband::all_series(matrix);
  const double area = confband::area_score(matrix, all);
  const double width = confband::width_score(matrix, all);
  Normalized out;
  if (area > 0.0) out.area = 100.0 * band.area / area;
  if (width > 0.0) out.width = 100.0 * band.width / width;
  return out;
}

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return std::string(buffer.data(), result.ptr);
}

Json dataset_json(const Dataset& dataset) {
  const auto& matrix = dataset.matrix;
  Json seed;
  seed["policy"] = dataset.seed.describe();
  seed["index"] = matrix.seed();
  seed["label"] = matrix.label(matrix.seed());
  seed["derived"] = dataset.seed.derived();
  Json out;
  out["name"] = dataset.name;
  out["n"] = matrix.series_count();
  out["m"] = matrix.length();
  out["seed"] = std::move(seed);
  return out;
}

Json band_json(const Dataset& dataset, const Band& band) {
  Json members = Json::array();
  for (std::size_t i : band.members) {
    members.push_back({{"index", i}, {"label", dataset.matrix.label(i)}});
  }
  const Normalized normalized = normalize(dataset.matrix, band);
  Json out;
  out["size"] = band.size();
  out["members"] = std::move(members);
  out["lower"] = band.lower;
  out["upper"] = band.upper;
  out["area"] = band.area;
  out["width"] = band.width;
  out["normalized"] = {{"area", normalized.area}, {"width", normalized.width}};
  return out;
}

Json chain_json(const Dataset& dataset, const confband::BandChain& chain) {
  Json bands = Json::array();
  for (const Band& band : chain.bands) bands.push_back(band_json(dataset, band));
  Json out;
  out["command"] = "enum";
  out["dataset"] = dataset_json(dataset);
  out["bands"] = std::move(bands);
  out["breakpoints"] = chain.breakpoints;
  out["first_inclusion"] = chain.first_inclusion;
  out["delta"] = chain.delta ? Json(*chain.delta) : Json(nullptr);
  out["regband_calls"] = chain.regband_calls;
  return out;
}

std::string dump(const Json& document) { return document.dump(2) + "\n"; }

void write_envelope_csv(std::ostream& out, const std::vector<const Band*>& bands) {
  out << "position";
  for (std::size_t j = 1; j <= bands.size(); ++j) out << ",lower_" << j;
  for (std::size_t j = 1; j <= bands.size(); ++j) out << ",upper_" << j;
  out << '\n';
  const std::size_t length = bands.empty() ? 0 : bands.front()->lower.size();
  for (std::size_t i = 0; i < length; ++i) {
    out << i;
    for (const Band* band : bands) out << ',' << format_double(band->lower[i]);
    for (const Band* band : bands) out << ',' << format_double(band->upper[i]);
    out << '\n';
  }
}

}  // namespace bandctl
