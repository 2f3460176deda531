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

#ifndef AUCTION_HARNESS_H_
#define AUCTION_HARNESS_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "auction/equilibrium.h"
#include "auction/learners.h"
#include "auction/mechanisms.h"

namespace auction {

struct Experiment {
  Scenario scenario;
  std::array<LearnerConfig, kNumAgents> learners;
  std::int64_t episodes = 3000;
  std::uint64_t seed = 0;
  std::int64_t last_n = 100;
  std::int64_t convergence_window = 200;
};

void ValidateExperiment(const Experiment& e);

// Three independent generators derived from one master seed.
struct Streams {
  std::array<Rng, kNumAgents> explore;
  Rng tie;

  static Streams FromSeed(std::uint64_t seed);
};

struct EpisodeRecord {
  std::int64_t episode = 0;
  // Every move in order; simultaneous episodes list agent A then agent B.
  std::vector<Move> actions;
  // Highest bid per agent (Pass if it never bid).
  JointAction bids{};
  std::array<Cents, kNumAgents> rewards{};
  std::array<double, kNumAgents> epsilon{};
  TieCoin coin = TieCoin::kFirst;

  bool operator==(const EpisodeRecord&) const = default;
};

// Joint final-bid counts keyed by (bid_a, bid_b) levels.
using Heatmap = std::map<std::pair<int, int>, std::int64_t>;

struct GreedyBehavior {
  ObservedBehavior behavior;
  // Moves the greedy agents make from the opening state.
  std::vector<Move> path;
  JointAction bids{};
  // Exact expected payoffs of the greedy play.
  std::array<HalfCents, kNumAgents> payoffs{};
};

struct EquilibriumReport {
  std::optional<EquilibriumSet> normal_form;  // simultaneous
  std::optional<SpeSolution> spe;             // sequential
};

EquilibriumReport SolveScenario(const Scenario& s);

struct RunResult {
  Experiment experiment;
  std::vector<EpisodeRecord> records;
  Heatmap heatmap;
  GreedyBehavior greedy;
  std::optional<std::int64_t> converged_at;
  Verdict verdict;
  EquilibriumReport equilibrium;
  std::array<QTable, kNumAgents> tables{QTable(QTable::Kind::kIndependent),
                                        QTable(QTable::Kind::kIndependent)};
};

// One auction with learning updates for both agents.
EpisodeRecord RunEpisode(const Scenario& s, std::array<Learner, kNumAgents>& agents,
                         std::int64_t episode, Streams& streams);

RunResult Train(const Experiment& e);

// Greedy play of two learners and the behavior maps it induces.
GreedyBehavior ExtractGreedy(const Scenario& s,
                             const std::array<Learner, kNumAgents>& agents);

// Start of the constant tail of joint bids, if it spans at least `window`
// episodes.
std::optional<std::int64_t> DetectConvergence(
    std::span<const EpisodeRecord> records, std::int64_t window);

Heatmap HeatmapLastN(std::span<const EpisodeRecord> records, std::int64_t n);

struct SeedSummary {
  std::uint64_t seed = 0;
  std::vector<Move> greedy_path;
  JointAction greedy_bids{};
  std::array<HalfCents, kNumAgents> greedy_payoffs{};
  std::optional<std::int64_t> converged_at;
  Verdict verdict;
  // Mean reward over the last_n episodes.
  std::array<double, kNumAgents> mean_reward{};
};

SeedSummary Summarize(const RunResult& run);

struct AggregateReport {
  std::vector<SeedSummary> runs;
  // Most frequent greedy path (ties: smallest path).
  std::vector<Move> modal_greedy_path;
  JointAction modal_greedy_bids{};
  std::int64_t modal_count = 0;
  std::int64_t consistent = 0;
  std::int64_t total = 0;
  std::array<double, kNumAgents> mean_final_reward{};
};

// Runs every seed (in parallel when hardware allows) and merges in seed order.
AggregateReport MultiSeed(const Experiment& e,
                          std::span<const std::uint64_t> seeds);

}  // namespace auction

#endif  // AUCTION_HARNESS_H_
