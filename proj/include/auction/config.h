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

#ifndef AUCTION_CONFIG_H_
#define AUCTION_CONFIG_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>

#include "auction/learners.h"
#include "auction/mechanisms.h"
#include "json.hpp"

namespace auction {

// A scenario document plus the optional experiment settings that may ride
// along with it. Monetary values are integer cents.
struct ConfigFile {
  Scenario scenario;
  std::optional<std::array<LearnerConfig, kNumAgents>> learners;
  std::optional<std::int64_t> episodes;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> last_n;
  std::optional<std::int64_t> convergence_window;
};

// Throw Error(kSchema) naming the offending key; the scenario is validated.
Scenario ScenarioFromJson(const nlohmann::json& doc);
ConfigFile ConfigFromJson(const nlohmann::json& doc);
LearnerConfig LearnerFromJson(const nlohmann::json& doc);

nlohmann::json ToJson(const Scenario& s);
nlohmann::json ToJson(const LearnerConfig& c);

// kMissingFile, kMalformedDocument, kSchema or a validation code.
ConfigFile LoadConfigFile(const std::filesystem::path& path);
Scenario ParseScenario(const std::filesystem::path& path);

}  // namespace auction

#endif  // AUCTION_CONFIG_H_
