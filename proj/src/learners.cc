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

#include "auction/learners.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "auction/error.h"

namespace auction {
namespace {

std::vector<Bid> ArgmaxSet(std::span<const Bid> actions,
                           const std::vector<double>& values) {
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<Bid> out;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (values[i] == best) out.push_back(actions[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void CheckFinite(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidLearnerConfig, "non-finite Q value");
  }
}

}  // namespace

bool IsJoint(Algorithm algorithm) { return algorithm != Algorithm::kQLearning; }

std::string ToString(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kQLearning:
      return "q_learning";
    case Algorithm::kFriendQ:
      return "friend_q";
    case Algorithm::kFoeQ:
      return "foe_q";
  }
  return "?";
}

std::string ToString(TieBreak tie_break) {
  switch (tie_break) {
    case TieBreak::kLowestBid:
      return "lowest_bid";
    case TieBreak::kHighestBid:
      return "highest_bid";
    case TieBreak::kUniformRandom:
      return "uniform_random";
  }
  return "?";
}

void ValidateLearnerConfig(const LearnerConfig& c) {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidLearnerConfig, what);
  };
  if (!(c.alpha > 0.0 && c.alpha <= 1.0)) fail("alpha must be in (0, 1]");
  if (!(c.gamma >= 0.0 && c.gamma <= 1.0)) fail("gamma must be in [0, 1]");
  if (!(c.epsilon_start >= 0.0 && c.epsilon_start <= 1.0)) {
    fail("epsilon_start must be in [0, 1]");
  }
  if (!(c.epsilon_min >= 0.0 && c.epsilon_min <= c.epsilon_start)) {
    fail("epsilon_min must be in [0, epsilon_start]");
  }
  if (!(c.decay_fraction > 0.0 && c.decay_fraction <= 1.0)) {
    fail("decay_fraction must be in (0, 1]");
  }
}

EpsilonSchedule EpsilonSchedule::For(const LearnerConfig& config,
                                     std::int64_t total_episodes) {
  EpsilonSchedule s;
  s.start = config.epsilon_start;
  s.min = config.epsilon_min;
  s.decay_episodes = std::max<std::int64_t>(
      1, std::llround(config.decay_fraction *
                      static_cast<double>(total_episodes)));
  return s;
}

double EpsilonAt(const EpsilonSchedule& schedule, std::int64_t episode) {
  if (episode <= 0) return schedule.start;
  if (episode >= schedule.decay_episodes) return schedule.min;
  const double t = static_cast<double>(episode) /
                   static_cast<double>(schedule.decay_episodes);
  const double eps = schedule.start + (schedule.min - schedule.start) * t;
  return std::clamp(eps, schedule.min, schedule.start);
}

void QTable::RequireKind(Kind kind) const {
  if (kind_ != kind) {
    throw Error(ErrorCode::kWrongTableKind,
                kind_ == Kind::kJoint ? "joint table addressed without an "
                                        "opponent action"
                                      : "independent table addressed with an "
                                        "opponent action");
  }
}

double QTable::Get(const ObsKey& obs, Bid own) const {
  RequireKind(Kind::kIndependent);
  auto it = values_.find(Key{obs, own, std::nullopt});
  return it == values_.end() ? 0.0 : it->second;
}

double QTable::Get(const ObsKey& obs, Bid own, Bid opp) const {
  RequireKind(Kind::kJoint);
  auto it = values_.find(Key{obs, own, opp});
  return it == values_.end() ? 0.0 : it->second;
}

void QTable::Set(const ObsKey& obs, Bid own, double value) {
  RequireKind(Kind::kIndependent);
  CheckFinite(value);
  values_[Key{obs, own, std::nullopt}] = value;
}

void QTable::Set(const ObsKey& obs, Bid own, Bid opp, double value) {
  RequireKind(Kind::kJoint);
  CheckFinite(value);
  values_[Key{obs, own, opp}] = value;
}

void QUpdate(QTable& table, const ObsKey& obs, Bid action, double reward,
             double bootstrap, double alpha, double gamma) {
  const double old = table.Get(obs, action);
  table.Set(obs, action,
            (1.0 - alpha) * old + alpha * (reward + gamma * bootstrap));
}

void JointQUpdate(QTable& table, const Scenario& s, const ObsKey& obs, Bid own,
                  Bid opp, double reward, double bootstrap, double alpha,
                  double gamma) {
  if (!IsSimultaneous(s)) {
    throw Error(ErrorCode::kJointLearnerNeedsSimultaneous,
                "joint learner requires simultaneous mechanism");
  }
  const double old = table.Get(obs, own, opp);
  table.Set(obs, own, opp,
            (1.0 - alpha) * old + alpha * (reward + gamma * bootstrap));
}

JointValueResult JointValue(const QTable& table, const ObsKey& obs,
                            std::span<const Bid> own_actions,
                            std::span<const Bid> opp_actions,
                            Algorithm algorithm) {
  if (table.kind() != QTable::Kind::kJoint) {
    throw Error(ErrorCode::kWrongTableKind, "joint_value needs a joint table");
  }
  if (own_actions.empty() || opp_actions.empty()) {
    throw Error(ErrorCode::kEmptyActionSet, "joint_value on empty action set");
  }
  std::vector<double> per_own;
  per_own.reserve(own_actions.size());
  for (Bid own : own_actions) {
    double v = algorithm == Algorithm::kFoeQ
                   ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
    for (Bid opp : opp_actions) {
      const double q = table.Get(obs, own, opp);
      v = algorithm == Algorithm::kFoeQ ? std::min(v, q) : std::max(v, q);
    }
    per_own.push_back(v);
  }
  JointValueResult result;
  result.actions = ArgmaxSet(own_actions, per_own);
  result.value = *std::max_element(per_own.begin(), per_own.end());
  return result;
}

JointValueResult GreedyCandidates(const QTable& table, const ObsKey& obs,
                                  std::span<const Bid> legal,
                                  Algorithm algorithm) {
  if (legal.empty()) {
    throw Error(ErrorCode::kEmptyActionSet, "no legal actions");
  }
  if (IsJoint(algorithm)) return JointValue(table, obs, legal, legal, algorithm);
  std::vector<double> values;
  values.reserve(legal.size());
  for (Bid a : legal) values.push_back(table.Get(obs, a));
  JointValueResult result;
  result.actions = ArgmaxSet(legal, values);
  result.value = *std::max_element(values.begin(), values.end());
  return result;
}

Bid BreakTie(std::span<const Bid> candidates, TieBreak tie_break, Rng* rng) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyActionSet, "no candidates to choose from");
  }
  switch (tie_break) {
    case TieBreak::kLowestBid:
      return *std::min_element(candidates.begin(), candidates.end());
    case TieBreak::kHighestBid:
      return *std::max_element(candidates.begin(), candidates.end());
    case TieBreak::kUniformRandom: {
      if (candidates.size() == 1) return candidates.front();
      if (rng == nullptr) {
        throw Error(ErrorCode::kInvalidLearnerConfig,
                    "uniform_random tie break needs a generator");
      }
      std::uniform_int_distribution<std::size_t> pick(0,
                                                      candidates.size() - 1);
      return candidates[pick(*rng)];
    }
  }
  return candidates.front();
}

Bid SelectAction(const QTable& table, const ObsKey& obs,
                 std::span<const Bid> legal, Algorithm algorithm,
                 double epsilon, TieBreak tie_break, Rng& rng) {
  if (legal.empty()) {
    throw Error(ErrorCode::kEmptyActionSet, "no legal actions");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (unit(rng) < epsilon) {
    std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
    return legal[pick(rng)];
  }
  const JointValueResult best = GreedyCandidates(table, obs, legal, algorithm);
  return BreakTie(best.actions, tie_break, &rng);
}

Policy GreedyPolicy(const QTable& table,
                    const std::map<ObsKey, std::vector<Bid>>& legal_per_obs,
                    Algorithm algorithm, TieBreak tie_break, Rng* rng) {
  Policy policy;
  for (const auto& [obs, legal] : legal_per_obs) {
    const JointValueResult best =
        GreedyCandidates(table, obs, legal, algorithm);
    policy.emplace(obs, BreakTie(best.actions, tie_break, rng));
  }
  return policy;
}

void WriteTableCsv(const QTable& table, std::ostream& out) {
  out << "obs,own_action,opp_action,value_cents\n";
  for (const auto& [key, value] : table.entries()) {
    out << key.obs.ToString() << ',' << key.own.level << ',';
    if (key.opp) out << key.opp->level;
    out << ',' << FormatDouble(value) << '\n';
  }
}

Learner::Learner(const Scenario& s, const LearnerConfig& config,
                 std::int64_t total_episodes)
    : scenario_(s),
      grid_(BidGrid(s)),
      config_(config),
      schedule_(EpsilonSchedule::For(config, total_episodes)),
      table_(IsJoint(config.algorithm) ? QTable::Kind::kJoint
                                       : QTable::Kind::kIndependent) {
  ValidateLearnerConfig(config);
  if (IsJoint(config.algorithm) && !IsSimultaneous(s)) {
    throw Error(ErrorCode::kJointLearnerNeedsSimultaneous,
                "joint learner requires simultaneous mechanism");
  }
}

Bid Learner::Act(const ObsKey& obs, std::span<const Bid> legal, double epsilon,
                 Rng& rng) const {
  return SelectAction(table_, obs, legal, config_.algorithm, epsilon,
                      config_.tie_break, rng);
}

Bid Learner::Greedy(const ObsKey& obs, std::span<const Bid> legal) const {
  const JointValueResult best =
      GreedyCandidates(table_, obs, legal, config_.algorithm);
  return BreakTie(best.actions, TieBreak::kLowestBid, nullptr);
}

double Learner::Value(const ObsKey& obs, std::span<const Bid> legal) const {
  return GreedyCandidates(table_, obs, legal, config_.algorithm).value;
}

void Learner::Learn(const ObsKey& obs, Bid own, std::optional<Bid> opp,
                    double reward, double bootstrap) {
  if (IsJoint(config_.algorithm)) {
    if (!opp) {
      throw Error(ErrorCode::kWrongTableKind,
                  "joint learner update needs the opponent action");
    }
    JointQUpdate(table_, scenario_, obs, own, *opp, reward, bootstrap,
                 config_.alpha, config_.gamma);
  } else {
    QUpdate(table_, obs, own, reward, bootstrap, config_.alpha, config_.gamma);
  }
}

}  // namespace auction
