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

#ifndef AUCTION_LEARNERS_H_
#define AUCTION_LEARNERS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <vector>

#include "auction/mechanisms.h"

namespace auction {

using Rng = std::mt19937_64;

enum class Algorithm { kQLearning, kFriendQ, kFoeQ };

enum class TieBreak { kLowestBid, kHighestBid, kUniformRandom };

bool IsJoint(Algorithm algorithm);
std::string ToString(Algorithm algorithm);
std::string ToString(TieBreak tie_break);

struct LearnerConfig {
  Algorithm algorithm = Algorithm::kQLearning;
  double alpha = 0.3;
  double gamma = 0.95;
  double epsilon_start = 1.0;
  double epsilon_min = 0.01;
  // Share of the run over which epsilon ramps down linearly.
  double decay_fraction = 0.8;
  // Used while training; greedy reports always break ties toward the lowest
  // bid.
  TieBreak tie_break = TieBreak::kUniformRandom;

  bool operator==(const LearnerConfig&) const = default;
};

void ValidateLearnerConfig(const LearnerConfig& config);

struct EpsilonSchedule {
  double start = 1.0;
  double min = 0.01;
  std::int64_t decay_episodes = 1;

  static EpsilonSchedule For(const LearnerConfig& config,
                             std::int64_t total_episodes);
};

// Linear from `start` at episode 0 to `min` at `decay_episodes`, flat after.
double EpsilonAt(const EpsilonSchedule& schedule, std::int64_t episode);

// Action-value estimates in cents. Unvisited entries read as 0.
class QTable {
 public:
  enum class Kind { kIndependent, kJoint };

  struct Key {
    ObsKey obs;
    Bid own;
    std::optional<Bid> opp;  // joint tables only

    auto operator<=>(const Key&) const = default;
  };

  explicit QTable(Kind kind) : kind_(kind) {}

  Kind kind() const { return kind_; }

  double Get(const ObsKey& obs, Bid own) const;
  double Get(const ObsKey& obs, Bid own, Bid opp) const;
  void Set(const ObsKey& obs, Bid own, double value);
  void Set(const ObsKey& obs, Bid own, Bid opp, double value);

  const std::map<Key, double>& entries() const { return values_; }

  bool operator==(const QTable&) const = default;

 private:
  void RequireKind(Kind kind) const;

  Kind kind_;
  std::map<Key, double> values_;
};

// Q <- (1 - alpha) Q + alpha (reward + gamma * bootstrap).
void QUpdate(QTable& table, const ObsKey& obs, Bid action, double reward,
             double bootstrap, double alpha, double gamma);

// The same rule on the (obs, own, opp) cell. Only simultaneous mechanisms
// reveal the opponent's action, so `s` must be one.
void JointQUpdate(QTable& table, const Scenario& s, const ObsKey& obs, Bid own,
                  Bid opp, double reward, double bootstrap, double alpha,
                  double gamma);

struct JointValueResult {
  double value = 0.0;
  // Own actions attaining `value`, ascending.
  std::vector<Bid> actions;
};

// Friend: max over joint actions, recommending the own component of every
// maximizing pair. Foe: pure maximin over own actions.
JointValueResult JointValue(const QTable& table, const ObsKey& obs,
                            std::span<const Bid> own_actions,
                            std::span<const Bid> opp_actions,
                            Algorithm algorithm);

// Greedy candidates for `algorithm` (argmax set for independent tables),
// ascending, and the value they attain.
JointValueResult GreedyCandidates(const QTable& table, const ObsKey& obs,
                                  std::span<const Bid> legal,
                                  Algorithm algorithm);

// `rng` is required for kUniformRandom.
Bid BreakTie(std::span<const Bid> candidates, TieBreak tie_break, Rng* rng);

Bid SelectAction(const QTable& table, const ObsKey& obs,
                 std::span<const Bid> legal, Algorithm algorithm,
                 double epsilon, TieBreak tie_break, Rng& rng);

Policy GreedyPolicy(const QTable& table,
                    const std::map<ObsKey, std::vector<Bid>>& legal_per_obs,
                    Algorithm algorithm, TieBreak tie_break,
                    Rng* rng = nullptr);

// obs,own_action,opp_action,value_cents with opp_action blank for
// independent tables.
void WriteTableCsv(const QTable& table, std::ostream& out);

// One tabular agent bound to a scenario.
class Learner {
 public:
  Learner(const Scenario& s, const LearnerConfig& config,
          std::int64_t total_episodes);

  const LearnerConfig& config() const { return config_; }
  const EpsilonSchedule& schedule() const { return schedule_; }
  const QTable& table() const { return table_; }

  Bid Act(const ObsKey& obs, std::span<const Bid> legal, double epsilon,
          Rng& rng) const;
  // Epsilon-zero action with ties toward the lowest bid.
  Bid Greedy(const ObsKey& obs, std::span<const Bid> legal) const;
  // Bootstrap value of an observation.
  double Value(const ObsKey& obs, std::span<const Bid> legal) const;

  void Learn(const ObsKey& obs, Bid own, std::optional<Bid> opp, double reward,
             double bootstrap);

 private:
  Scenario scenario_;
  std::vector<Bid> grid_;
  LearnerConfig config_;
  EpsilonSchedule schedule_;
  QTable table_;
};

}  // namespace auction

#endif  // AUCTION_LEARNERS_H_
