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

#ifndef AUCTION_MECHANISMS_H_
#define AUCTION_MECHANISMS_H_

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "auction/money.h"

namespace auction {

inline constexpr int kNumAgents = 2;
inline constexpr int kMaxCeiling = 1000;

// A whole-dollar bid level. Level 0 is Pass ("stop bidding").
struct Bid {
  int level = 0;

  static constexpr Bid Pass() { return Bid{0}; }
  static constexpr Bid At(int dollars) { return Bid{dollars}; }

  constexpr bool is_pass() const { return level == 0; }
  constexpr Cents price() const { return Cents::FromDollars(level); }

  constexpr auto operator<=>(const Bid&) const = default;
};

std::string ToString(Bid bid);

enum class Mechanism {
  kOpenSequential,
  kSealedFirstPrice,
  kMultiPeriodOpen,
  kVickreyMinPrice,
};

enum class Good { kDivisible, kIndivisible };

enum class FeeKind { kNoFee, kLoserAlways, kLoserIfEntered };

struct FeePolicy {
  FeeKind kind = FeeKind::kLoserAlways;
  Cents fee{100};

  bool operator==(const FeePolicy&) const = default;
};

// One two-bidder auction game.
struct Scenario {
  Mechanism mechanism = Mechanism::kSealedFirstPrice;
  // Turns per agent; only meaningful for kMultiPeriodOpen.
  int periods = 1;
  int ceiling = 5;
  int increment = 1;
  std::vector<Cents> valuations{Cents(350), Cents(350)};
  Good good = Good::kIndivisible;
  FeePolicy fee_policy;
  // Paid by both bidders on an indivisible Vickrey tie.
  std::optional<Cents> vickrey_tie_fee;
  std::optional<std::uint64_t> seed_hint;

  bool operator==(const Scenario&) const = default;
};

bool IsSimultaneous(Mechanism mechanism);
inline bool IsSimultaneous(const Scenario& s) {
  return IsSimultaneous(s.mechanism);
}

// Turns each agent may take in a sequential mechanism.
int TurnsPerAgent(const Scenario& s);

// Returns `s` unchanged when every scenario invariant holds; throws Error
// with a category-specific code otherwise.
Scenario ValidateScenario(Scenario s);

// {Pass, 1, ..., ceiling}.
std::vector<Bid> BidGrid(const Scenario& s);

enum class Allocation { kNoSale, kWinnerTakesAll, kSplitHalfHalf, kVickreyReset };

enum class TieCoin : std::uint8_t { kFirst = 0, kSecond = 1 };

struct Outcome {
  Allocation allocation = Allocation::kNoSale;
  // Sole winner under kWinnerTakesAll, otherwise -1.
  int winner = -1;
  // Share of the good in halves: 0, 1 or 2.
  std::array<int, kNumAgents> halves{};
  std::array<Cents, kNumAgents> prices_paid{};
  std::array<Cents, kNumAgents> fees_paid{};
  std::array<Cents, kNumAgents> payoffs{};

  bool operator==(const Outcome&) const = default;
};

// Resolves a pair of final bids. For the simultaneous mechanisms this is the
// whole auction; for the sequential ones the final bids are each agent's
// highest bid and the higher one wins at its own level.
Outcome Allocate(const Scenario& s, Bid bid_a, Bid bid_b, TieCoin coin);

// Exact mean of Allocate over both coin values.
std::array<HalfCents, kNumAgents> ExpectedPayoffs(const Scenario& s, Bid bid_a,
                                                  Bid bid_b);

struct Move {
  int agent = 0;
  Bid bid;

  constexpr auto operator<=>(const Move&) const = default;
};

// Position inside a sequential auction. Simultaneous mechanisms only ever use
// the initial state (the opening move of both agents).
struct SeqState {
  Cents current_price;
  int to_move = 0;
  std::array<int, kNumAgents> turns_used{};
  // A Pass withdraws the agent for the rest of the auction.
  std::array<bool, kNumAgents> withdrawn{};
  // Whether the agent has ever placed a positive bid.
  std::array<bool, kNumAgents> entered{};
  // Agent holding the standing bid, if any.
  std::optional<int> standing;
  std::vector<Move> history;
  bool terminal = false;

  bool operator==(const SeqState&) const = default;
};

SeqState InitialState(const Scenario& s);

std::vector<Bid> LegalActions(const Scenario& s, const SeqState& st);

struct StepResult {
  SeqState state;
  std::optional<Outcome> outcome;  // set iff state.terminal
};

StepResult SeqStep(const Scenario& s, const SeqState& st, Bid action);

// What an agent conditions on when it acts.
struct ObsKey {
  enum class Kind : std::uint8_t { kStart, kSeenBid, kPeriod };

  Kind kind = Kind::kStart;
  int price_level = 0;
  int own_turns = 0;
  bool standing = false;

  static constexpr ObsKey Start() { return ObsKey{}; }
  static constexpr ObsKey SeenBid(int level) {
    return ObsKey{Kind::kSeenBid, level, 0, false};
  }
  static constexpr ObsKey Period(int price_level, int own_turns,
                                 bool opponent_standing) {
    return ObsKey{Kind::kPeriod, price_level, own_turns, opponent_standing};
  }

  constexpr auto operator<=>(const ObsKey&) const = default;

  // "start", "seen:4", "p3:t1:s1".
  std::string ToString() const;
};

ObsKey Observation(const Scenario& s, const SeqState& st, int agent);

struct DecisionNode {
  SeqState state;
  int agent = 0;
  ObsKey obs;
};

// Every reachable non-terminal state of a sequential scenario, in depth-first
// order with actions ascending.
std::vector<DecisionNode> EnumerateDecisionNodes(const Scenario& s);

// Deterministic action per observation for one agent.
using Policy = std::map<ObsKey, Bid>;

// Policy lookup; observations the policy never saw map to Pass.
Bid PolicyAction(const Policy& policy, const ObsKey& obs);

// Highest bid each agent placed, Pass if it never bid.
std::array<Bid, kNumAgents> FinalBids(const std::vector<Move>& history);

std::string ToString(Mechanism m);
std::string ToString(Good g);
std::string ToString(FeeKind k);
std::string ToString(Allocation a);

}  // namespace auction

#endif  // AUCTION_MECHANISMS_H_
