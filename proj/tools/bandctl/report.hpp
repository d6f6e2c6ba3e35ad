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

#ifndef BANDCTL_REPORT_HPP
#define BANDCTL_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "bandctl/ingest.hpp"
#include "confband/approx.hpp"
#include "confband/chain.hpp"
#include "json.hpp"

namespace bandctl {

using Json = nlohmann::ordered_json;

/// Band scores as a percentage of the scores of all series. A zero
/// denominator yields 100.
struct Normalized {
  double area = 100.0;
  double width = 100.0;
};

Normalized normalize(const confband::SeriesMatrix& matrix,
                     const confband::Band& band);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

Json dataset_json(const Dataset& dataset);
/// members (index and label), lower, upper, area, width, normalized.
Json band_json(const Dataset& dataset, const confband::Band& band);
Json chain_json(const Dataset& dataset, const confband::BandChain& chain);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& document);

/// Columns position, lower_1..lower_L, upper_1..upper_L in the given order.
void write_envelope_csv(std::ostream& out,
                        const std::vector<const confband::Band*>& bands);

}  // namespace bandctl

#endif  // BANDCTL_REPORT_HPP
