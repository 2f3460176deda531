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

#include "auction/mechanisms.h"

#include <algorithm>
#include <functional>
#include <string>

#include "auction/error.h"

namespace auction {
namespace {

int Opponent(int agent) { return 1 - agent; }

void CheckBidOnGrid(const Scenario& s, Bid bid) {
  if (bid.level < 0 || bid.level > s.ceiling) {
    throw Error(ErrorCode::kIllegalAction,
                "bid level " + std::to_string(bid.level) +
                    " outside the grid 0.." + std::to_string(s.ceiling));
  }
}

Cents LoserFee(const Scenario& s, bool loser_entered) {
  switch (s.fee_policy.kind) {
    case FeeKind::kNoFee:
      return Cents(0);
    case FeeKind::kLoserAlways:
      return s.fee_policy.fee;
    case FeeKind::kLoserIfEntered:
      return loser_entered ? s.fee_policy.fee : Cents(0);
  }
  return Cents(0);
}

Outcome WinnerTakesAll(const Scenario& s, int winner, Cents price,
                       bool loser_entered) {
  const int loser = Opponent(winner);
  Outcome out;
  out.allocation = Allocation::kWinnerTakesAll;
  out.winner = winner;
  out.halves[winner] = 2;
  out.prices_paid[winner] = price;
  out.fees_paid[loser] = LoserFee(s, loser_entered);
  out.payoffs[winner] = s.valuations[winner] - price;
  out.payoffs[loser] = -out.fees_paid[loser];
  return out;
}

// Equal positive bids on a divisible good: each takes half and pays half of
// its own bid.
Outcome SplitHalfHalf(const Scenario& s, Bid bid) {
  Outcome out;
  out.allocation = Allocation::kSplitHalfHalf;
  for (int i = 0; i < kNumAgents; ++i) {
    out.halves[i] = 1;
    out.prices_paid[i] = bid.price().Half();
    out.payoffs[i] = s.valuations[i].Half() - out.prices_paid[i];
  }
  return out;
}

Outcome VickreyReset(const Scenario& s) {
  Outcome out;
  out.allocation = Allocation::kVickreyReset;
  for (int i = 0; i < kNumAgents; ++i) {
    out.fees_paid[i] = *s.vickrey_tie_fee;
    out.payoffs[i] = -out.fees_paid[i];
  }
  return out;
}

}  // namespace

std::string ToString(Bid bid) {
  return bid.is_pass() ? "Pass" : "Bid " + std::to_string(bid.level);
}

bool IsSimultaneous(Mechanism mechanism) {
  return mechanism == Mechanism::kSealedFirstPrice ||
         mechanism == Mechanism::kVickreyMinPrice;
}

int TurnsPerAgent(const Scenario& s) {
  return s.mechanism == Mechanism::kMultiPeriodOpen ? s.periods : 1;
}

Scenario ValidateScenario(Scenario s) {
  if (s.ceiling < 1 || s.ceiling > kMaxCeiling) {
    throw Error(ErrorCode::kCeilingOutOfRange,
                "ceiling out of range: " + std::to_string(s.ceiling));
  }
  if (s.increment < 1 || s.increment > s.ceiling) {
    throw Error(ErrorCode::kIncrementOutOfRange,
                "increment out of range: " + std::to_string(s.increment));
  }
  if (s.periods < 1 ||
      (s.mechanism != Mechanism::kMultiPeriodOpen && s.periods != 1)) {
    throw Error(ErrorCode::kPeriodsOutOfRange,
                "periods out of range: " + std::to_string(s.periods));
  }
  if (s.valuations.size() != kNumAgents) {
    throw Error(ErrorCode::kAgentCount,
                "exactly 2 agents required, got " +
                    std::to_string(s.valuations.size()));
  }
  for (Cents v : s.valuations) {
    if (v.value <= 0) {
      throw Error(ErrorCode::kNonPositiveValuation,
                  "valuation must be positive: " + std::to_string(v.value));
    }
    if (!v.IsEven()) {
      throw Error(ErrorCode::kOddCents,
                  "odd cents in valuation: " + std::to_string(v.value));
    }
  }
  std::vector<Cents> fees{s.fee_policy.fee};
  if (s.vickrey_tie_fee) fees.push_back(*s.vickrey_tie_fee);
  for (Cents fee : fees) {
    if (fee.value < 0) {
      throw Error(ErrorCode::kNegativeFee,
                  "negative fee: " + std::to_string(fee.value));
    }
    if (!fee.IsEven()) {
      throw Error(ErrorCode::kOddCents,
                  "odd cents in fee: " + std::to_string(fee.value));
    }
  }
  const bool vickrey = s.mechanism == Mechanism::kVickreyMinPrice;
  if (vickrey && !s.vickrey_tie_fee) {
    throw Error(ErrorCode::kMissingTieFee,
                "vickrey_min_price requires vickrey_tie_fee");
  }
  if (!vickrey && s.vickrey_tie_fee) {
    throw Error(ErrorCode::kUnexpectedTieFee,
                "vickrey_tie_fee is only valid for vickrey_min_price");
  }
  return s;
}

std::vector<Bid> BidGrid(const Scenario& s) {
  std::vector<Bid> grid;
  grid.reserve(s.ceiling + 1);
  for (int level = 0; level <= s.ceiling; ++level) grid.push_back(Bid{level});
  return grid;
}

Outcome Allocate(const Scenario& s, Bid bid_a, Bid bid_b, TieCoin coin) {
  CheckBidOnGrid(s, bid_a);
  CheckBidOnGrid(s, bid_b);
  const std::array<Bid, kNumAgents> bids{bid_a, bid_b};
  if (bid_a.is_pass() && bid_b.is_pass()) return Outcome{};

  const bool vickrey = s.mechanism == Mechanism::kVickreyMinPrice;
  int winner;
  if (bid_a == bid_b) {
    if (s.good == Good::kDivisible) return SplitHalfHalf(s, bid_a);
    if (vickrey) return VickreyReset(s);
    winner = static_cast<int>(coin);
  } else {
    winner = bid_a > bid_b ? 0 : 1;
  }
  const int loser = Opponent(winner);
  // The min-price rule: the winner pays the other bid (0 against a Pass).
  const Cents price = vickrey ? bids[loser].price() : bids[winner].price();
  return WinnerTakesAll(s, winner, price, !bids[loser].is_pass());
}

std::array<HalfCents, kNumAgents> ExpectedPayoffs(const Scenario& s,
                                                  Bid bid_a, Bid bid_b) {
  const Outcome first = Allocate(s, bid_a, bid_b, TieCoin::kFirst);
  const Outcome second = Allocate(s, bid_a, bid_b, TieCoin::kSecond);
  return {HalfCents::Mean(first.payoffs[0], second.payoffs[0]),
          HalfCents::Mean(first.payoffs[1], second.payoffs[1])};
}

SeqState InitialState(const Scenario&) { return SeqState{}; }

std::vector<Bid> LegalActions(const Scenario& s, const SeqState& st) {
  if (st.terminal) {
    throw Error(ErrorCode::kTerminalState,
                "legal actions requested at a terminal state");
  }
  std::vector<Bid> legal{Bid::Pass()};
  int lowest = 1;
  if (!IsSimultaneous(s) && st.standing) {
    lowest = static_cast<int>(st.current_price.value / 100) + s.increment;
  }
  for (int level = lowest; level <= s.ceiling; ++level) {
    legal.push_back(Bid{level});
  }
  return legal;
}

StepResult SeqStep(const Scenario& s, const SeqState& st, Bid action) {
  if (IsSimultaneous(s)) {
    throw Error(ErrorCode::kWrongMechanism,
                "seq_step requires a sequential mechanism");
  }
  if (st.terminal) {
    throw Error(ErrorCode::kTerminalState, "step after terminal");
  }
  const std::vector<Bid> legal = LegalActions(s, st);
  if (std::find(legal.begin(), legal.end(), action) == legal.end()) {
    throw Error(ErrorCode::kIllegalAction,
                ToString(action) + " is not legal at price " +
                    std::to_string(st.current_price.value / 100));
  }

  const int mover = st.to_move;
  const int opponent = Opponent(mover);
  const int turns = TurnsPerAgent(s);
  StepResult result{st, std::nullopt};
  SeqState& next = result.state;
  next.turns_used[mover] += 1;
  next.history.push_back(Move{mover, action});

  auto close = [&](std::optional<int> winner) {
    next.terminal = true;
    if (!winner) {
      result.outcome = Outcome{};
    } else {
      result.outcome = WinnerTakesAll(s, *winner, next.current_price,
                                      next.entered[Opponent(*winner)]);
    }
  };

  if (action.is_pass()) {
    if (st.standing) {
      close(st.standing);
    } else if (st.withdrawn[opponent]) {
      close(std::nullopt);
    } else {
      next.withdrawn[mover] = true;
      next.to_move = opponent;
    }
    return result;
  }

  next.current_price = action.price();
  next.standing = mover;
  next.entered[mover] = true;
  const bool exhausted =
      next.turns_used[0] >= turns && next.turns_used[1] >= turns;
  if (st.withdrawn[opponent] || exhausted) {
    close(mover);
  } else {
    next.to_move = opponent;
  }
  return result;
}

std::string ObsKey::ToString() const {
  switch (kind) {
    case Kind::kStart:
      return "start";
    case Kind::kSeenBid:
      return "seen:" + std::to_string(price_level);
    case Kind::kPeriod:
      return "p" + std::to_string(price_level) + ":t" +
             std::to_string(own_turns) + ":s" + (standing ? "1" : "0");
  }
  return "?";
}

ObsKey Observation(const Scenario& s, const SeqState& st, int agent) {
  switch (s.mechanism) {
    case Mechanism::kSealedFirstPrice:
    case Mechanism::kVickreyMinPrice:
      return ObsKey::Start();
    case Mechanism::kOpenSequential:
      if (agent == 0 || st.history.empty()) return ObsKey::Start();
      return ObsKey::SeenBid(st.history.front().bid.level);
    case Mechanism::kMultiPeriodOpen:
      return ObsKey::Period(
          static_cast<int>(st.current_price.value / 100), st.turns_used[agent],
          st.standing.has_value() && *st.standing != agent);
  }
  return ObsKey::Start();
}

std::vector<DecisionNode> EnumerateDecisionNodes(const Scenario& s) {
  std::vector<DecisionNode> nodes;
  if (IsSimultaneous(s)) {
    const SeqState root = InitialState(s);
    for (int agent = 0; agent < kNumAgents; ++agent) {
      nodes.push_back({root, agent, Observation(s, root, agent)});
    }
    return nodes;
  }
  std::function<void(const SeqState&)> walk = [&](const SeqState& st) {
    nodes.push_back({st, st.to_move, Observation(s, st, st.to_move)});
    for (Bid a : LegalActions(s, st)) {
      StepResult r = SeqStep(s, st, a);
      if (!r.state.terminal) walk(r.state);
    }
  };
  walk(InitialState(s));
  return nodes;
}

Bid PolicyAction(const Policy& policy, const ObsKey& obs) {
  auto it = policy.find(obs);
  return it == policy.end() ? Bid::Pass() : it->second;
}

std::array<Bid, kNumAgents> FinalBids(const std::vector<Move>& history) {
  std::array<Bid, kNumAgents> out{};
  for (const Move& m : history) out[m.agent] = std::max(out[m.agent], m.bid);
  return out;
}

std::string ToString(Mechanism m) {
  switch (m) {
    case Mechanism::kOpenSequential:
      return "open_sequential";
    case Mechanism::kSealedFirstPrice:
      return "sealed_first_price";
    case Mechanism::kMultiPeriodOpen:
      return "multi_period_open";
    case Mechanism::kVickreyMinPrice:
      return "vickrey_min_price";
  }
  return "?";
}

std::string ToString(Good g) {
  return g == Good::kDivisible ? "divisible" : "indivisible";
}

std::string ToString(FeeKind k) {
  switch (k) {
    case FeeKind::kNoFee:
      return "no_fee";
    case FeeKind::kLoserAlways:
      return "loser_always";
    case FeeKind::kLoserIfEntered:
      return "loser_if_entered";
  }
  return "?";
}

std::string ToString(Allocation a) {
  switch (a) {
    case Allocation::kNoSale:
      return "no_sale";
    case Allocation::kWinnerTakesAll:
      return "winner_takes_all";
    case Allocation::kSplitHalfHalf:
      return "split_half_half";
    case Allocation::kVickreyReset:
      return "vickrey_reset";
  }
  return "?";
}

}  // namespace auction
