// Copyright 2026 The Auction RL Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AUCTION_REPORT_H_
#define AUCTION_REPORT_H_

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "auction/harness.h"
#include "json.hpp"

namespace auction {

// "1:4 2:0" with 1-based agents; Pass is 0.
std::string MovesToString(std::span<const Move> moves);

// Integer cents stay integers; a half cent becomes x.5.
nlohmann::json CentsJson(HalfCents amount);

void WriteEpisodesCsv(std::span<const EpisodeRecord> records, bool sequential,
                      std::ostream& out);
void WriteHeatmapCsv(const Heatmap& heat, std::ostream& out);

nlohmann::json EquilibriumJson(const EquilibriumReport& report);
nlohmann::json VerdictJson(const Verdict& v);
nlohmann::json SummaryJson(const RunResult& run);
nlohmann::json AggregateJson(const Experiment& e, const AggregateReport& agg);

}  // namespace auction

#endif  // AUCTION_REPORT_H_
