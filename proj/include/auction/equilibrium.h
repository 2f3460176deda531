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

#ifndef AUCTION_EQUILIBRIUM_H_
#define AUCTION_EQUILIBRIUM_H_

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "auction/mechanisms.h"
#include "auction/money.h"

namespace auction {

using JointAction = std::array<Bid, kNumAgents>;

// Two-player game over a shared action list. Payoffs are stored row-major
// with agent A choosing the row.
class NormalFormGame {
 public:
  NormalFormGame(std::vector<Bid> actions, std::vector<HalfCents> payoff_a,
                 std::vector<HalfCents> payoff_b);

  const std::vector<Bid>& actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }

  HalfCents Payoff(int agent, std::size_t row, std::size_t col) const;
  HalfCents Payoff(int agent, const JointAction& joint) const;
  std::size_t IndexOf(Bid bid) const;

 private:
  std::vector<Bid> actions_;
  std::array<std::vector<HalfCents>, kNumAgents> payoffs_;
};

// Expected-payoff bimatrix of a simultaneous scenario.
NormalFormGame BuildBimatrix(const Scenario& s);

// Joint actions with no strictly improving unilateral deviation, ordered by
// (A's bid, B's bid).
std::vector<JointAction> PureNash(const NormalFormGame& g);

std::vector<Bid> BestResponses(const NormalFormGame& g, int agent,
                               Bid opponent_action);

struct MaximinResult {
  HalfCents value;
  std::vector<Bid> actions;
};

// Pure-strategy maximin.
MaximinResult Maximin(const NormalFormGame& g, int agent);

// Actions at least as good as (strict: better than) every alternative
// against every opponent action.
std::vector<Bid> DominantActions(const NormalFormGame& g, int agent,
                                 bool strict);

struct EquilibriumSet {
  std::vector<JointAction> pure_nash;
  std::array<MaximinResult, kNumAgents> maximin;
  std::array<std::vector<Bid>, kNumAgents> weakly_dominant;
  std::array<std::vector<Bid>, kNumAgents> strictly_dominant;
};

EquilibriumSet SolveNormalForm(const NormalFormGame& g);

// Subgame-perfect solution of a sequential scenario. Decision nodes are
// identified by the move history leading to them.
struct SpeSolution {
  std::map<std::vector<Move>, Bid> strategy;
  // Nodes where more than one action is optimal for the mover, with the full
  // optimal set. The strategy picks the lowest.
  std::map<std::vector<Move>, std::vector<Bid>> ties;
  std::vector<Move> path;
  std::array<Cents, kNumAgents> path_payoffs{};
};

SpeSolution BackwardInduction(const Scenario& s);

// Converged greedy behavior of both agents.
struct ObservedBehavior {
  std::array<Policy, kNumAgents> policies;

  static ObservedBehavior Joint(const JointAction& joint);
};

struct PlayResult {
  std::vector<Move> history;
  Outcome outcome;
};

// Both agents follow their policies from `from` to the end of a sequential
// auction.
PlayResult FollowPolicies(const Scenario& s, const ObservedBehavior& behavior,
                          const SeqState& from);

struct Verdict {
  bool consistent = false;
  // "pure Nash", "on-path best responses", "cooperative, not Nash", or a
  // description of the profitable deviation.
  std::string reason;

  bool operator==(const Verdict&) const = default;
};

// Simultaneous: membership of the greedy joint action in the pure Nash set.
// Sequential: every on-path action is a best response given that play
// continues per the observed policies.
Verdict IsEquilibriumConsistent(const Scenario& s,
                                const ObservedBehavior& observed);

}  // namespace auction

#endif  // AUCTION_EQUILIBRIUM_H_
