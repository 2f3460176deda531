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

#include <algorithm>

#include "auction/error.h"
#include "auction/mechanisms.h"
#include "doctest.h"
#include "test_support.h"

namespace auction {
namespace {

using testing::MultiPeriod;
using testing::Open;
using testing::Sealed;
using testing::SimultaneousFamily;
using testing::Vickrey;

ErrorCode CodeOf(const Scenario& s) {
  try {
    ValidateScenario(s);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("scenario unexpectedly valid");
  return ErrorCode::kIo;
}

std::vector<int> Levels(const std::vector<Bid>& bids) {
  std::vector<int> out;
  for (Bid b : bids) out.push_back(b.level);
  return out;
}

SeqState Play(const Scenario& s, std::initializer_list<int> levels,
              std::optional<Outcome>* outcome = nullptr) {
  SeqState st = InitialState(s);
  for (int level : levels) {
    StepResult r = SeqStep(s, st, Bid{level});
    st = r.state;
    if (outcome) *outcome = r.outcome;
  }
  return st;
}

TEST_CASE("validate accepts the reference scenario") {
  const Scenario s = Sealed(Good::kIndivisible);
  CHECK(ValidateScenario(s) == s);
}

TEST_CASE("validate rejects each broken invariant with its own category") {
  Scenario s = Sealed(Good::kIndivisible);
  s.ceiling = 0;
  CHECK(CodeOf(s) == ErrorCode::kCeilingOutOfRange);
  CHECK(ErrorCodeName(CodeOf(s)) == "ceiling out of range");

  s = Sealed(Good::kIndivisible);
  s.valuations = {Cents(333), Cents(350)};
  CHECK(CodeOf(s) == ErrorCode::kOddCents);
  CHECK(ErrorCodeName(CodeOf(s)) == "odd cents");

  s = Sealed(Good::kIndivisible);
  s.mechanism = Mechanism::kVickreyMinPrice;
  CHECK(CodeOf(s) == ErrorCode::kMissingTieFee);

  s = Sealed(Good::kIndivisible);
  s.vickrey_tie_fee = Cents(150);
  CHECK(CodeOf(s) == ErrorCode::kUnexpectedTieFee);

  s = Sealed(Good::kIndivisible);
  s.valuations = {Cents(350)};
  CHECK(CodeOf(s) == ErrorCode::kAgentCount);
  s.valuations = {Cents(350), Cents(350), Cents(350)};
  CHECK(CodeOf(s) == ErrorCode::kAgentCount);

  s = Sealed(Good::kIndivisible);
  s.valuations = {Cents(0), Cents(350)};
  CHECK(CodeOf(s) == ErrorCode::kNonPositiveValuation);

  s = Sealed(Good::kIndivisible);
  s.fee_policy.fee = Cents(-100);
  CHECK(CodeOf(s) == ErrorCode::kNegativeFee);
  s.fee_policy.fee = Cents(101);
  CHECK(CodeOf(s) == ErrorCode::kOddCents);

  s = Sealed(Good::kIndivisible);
  s.increment = 0;
  CHECK(CodeOf(s) == ErrorCode::kIncrementOutOfRange);

  s = Sealed(Good::kIndivisible);
  s.periods = 2;
  CHECK(CodeOf(s) == ErrorCode::kPeriodsOutOfRange);
  s = MultiPeriod(0);
  CHECK(CodeOf(s) == ErrorCode::kPeriodsOutOfRange);

  s = Sealed(Good::kIndivisible);
  s.ceiling = kMaxCeiling + 1;
  CHECK(CodeOf(s) == ErrorCode::kCeilingOutOfRange);
}

TEST_CASE("validation categories are distinct") {
  const std::vector<ErrorCode> codes{
      ErrorCode::kCeilingOutOfRange, ErrorCode::kOddCents,
      ErrorCode::kMissingTieFee,     ErrorCode::kAgentCount,
      ErrorCode::kNegativeFee,       ErrorCode::kNonPositiveValuation};
  for (std::size_t i = 0; i < codes.size(); ++i) {
    CHECK(IsValidationError(codes[i]));
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      CHECK(ErrorCodeName(codes[i]) != ErrorCodeName(codes[j]));
    }
  }
}

TEST_CASE("legal actions") {
  CHECK(Levels(LegalActions(Sealed(Good::kIndivisible), {})) ==
        std::vector<int>{0, 1, 2, 3, 4, 5});
  const Scenario open = Open();
  CHECK(Levels(LegalActions(open, Play(open, {4}))) == std::vector<int>{0, 5});
  CHECK(Levels(LegalActions(open, Play(open, {5}))) == std::vector<int>{0});

  SeqState done = Play(open, {4, 0});
  CHECK(done.terminal);
  CHECK_THROWS_AS(LegalActions(open, done), Error);
}

TEST_CASE("legal actions respect the increment") {
  Scenario s = Open(6);
  s.increment = 2;
  CHECK(Levels(LegalActions(s, Play(s, {2}))) == std::vector<int>{0, 4, 5, 6});
}

TEST_CASE("allocate examples") {
  const Outcome v44 = Allocate(Vickrey(Good::kDivisible), Bid{4}, Bid{4},
                               TieCoin::kFirst);
  CHECK(v44.allocation == Allocation::kSplitHalfHalf);
  CHECK(v44.payoffs[0] == Cents(-25));
  CHECK(v44.payoffs[1] == Cents(-25));

  const Outcome v54 = Allocate(Vickrey(Good::kIndivisible), Bid{5}, Bid{4},
                               TieCoin::kFirst);
  CHECK(v54.winner == 0);
  CHECK(v54.prices_paid[0] == Cents(400));
  CHECK(v54.payoffs[0] == Cents(-50));
  CHECK(v54.payoffs[1] == Cents(-100));

  for (const Scenario& s : SimultaneousFamily(5)) {
    const Outcome none = Allocate(s, Bid::Pass(), Bid::Pass(), TieCoin::kSecond);
    CHECK(none.allocation == Allocation::kNoSale);
    CHECK(none.payoffs[0] == Cents(0));
    CHECK(none.payoffs[1] == Cents(0));
  }
}

TEST_CASE("vickrey winner against a pass pays nothing") {
  const Outcome o = Allocate(Vickrey(Good::kIndivisible), Bid::Pass(), Bid{3},
                             TieCoin::kFirst);
  CHECK(o.winner == 1);
  CHECK(o.prices_paid[1] == Cents(0));
  CHECK(o.payoffs[1] == Cents(350));
  CHECK(o.payoffs[0] == Cents(-100));
}

TEST_CASE("indivisible vickrey tie resets with the tie fee") {
  const Outcome o = Allocate(Vickrey(Good::kIndivisible), Bid{5}, Bid{5},
                             TieCoin::kFirst);
  CHECK(o.allocation == Allocation::kVickreyReset);
  CHECK(o.payoffs[0] == Cents(-150));
  CHECK(o.payoffs[1] == Cents(-150));
  CHECK(o.halves[0] + o.halves[1] == 0);
}

TEST_CASE("indivisible sealed tie follows the coin") {
  const Scenario s = Sealed(Good::kIndivisible);
  CHECK(Allocate(s, Bid{4}, Bid{4}, TieCoin::kFirst).winner == 0);
  CHECK(Allocate(s, Bid{4}, Bid{4}, TieCoin::kSecond).winner == 1);
}

TEST_CASE("fee policies") {
  Scenario s = Sealed(Good::kIndivisible);
  s.fee_policy = {FeeKind::kLoserIfEntered, Cents(100)};
  CHECK(Allocate(s, Bid{4}, Bid::Pass(), TieCoin::kFirst).payoffs[1] ==
        Cents(0));
  CHECK(Allocate(s, Bid{4}, Bid{2}, TieCoin::kFirst).payoffs[1] ==
        Cents(-100));
  s.fee_policy = {FeeKind::kLoserAlways, Cents(100)};
  CHECK(Allocate(s, Bid{4}, Bid::Pass(), TieCoin::kFirst).payoffs[1] ==
        Cents(-100));
}

TEST_CASE("allocate rejects off-grid bids") {
  const Scenario s = Sealed(Good::kIndivisible);
  CHECK_THROWS_AS(Allocate(s, Bid{6}, Bid{1}, TieCoin::kFirst), Error);
  CHECK_THROWS_AS(Allocate(s, Bid{1}, Bid{-1}, TieCoin::kFirst), Error);
}

TEST_CASE("expected payoff examples") {
  const Scenario s = Sealed(Good::kIndivisible);
  CHECK(ExpectedPayoffs(s, Bid{4}, Bid{4})[0] == HalfCents(-150));
  CHECK(ExpectedPayoffs(s, Bid{4}, Bid{4})[1] == HalfCents(-150));
  CHECK(ExpectedPayoffs(s, Bid{4}, Bid{3})[0] ==
        HalfCents::From(Cents(-50)));
  CHECK(ExpectedPayoffs(s, Bid{4}, Bid{3})[1] ==
        HalfCents::From(Cents(-100)));
  const Scenario d = Sealed(Good::kDivisible);
  CHECK(ExpectedPayoffs(d, Bid{2}, Bid{2})[0] == HalfCents::From(Cents(75)));
  CHECK(ExpectedPayoffs(d, Bid{2}, Bid{2})[1] == HalfCents::From(Cents(75)));
}

TEST_CASE("sequential step examples") {
  const Scenario open = Open();
  std::optional<Outcome> out;
  SeqState st = Play(open, {4, 0}, &out);
  REQUIRE(out);
  CHECK(st.terminal);
  CHECK(out->payoffs[0] == Cents(-50));
  CHECK(out->payoffs[1] == Cents(-100));

  st = Play(open, {0, 1}, &out);
  REQUIRE(out);
  CHECK(out->winner == 1);
  CHECK(out->payoffs[1] == Cents(250));

  st = Play(open, {0, 0}, &out);
  REQUIRE(out);
  CHECK(out->allocation == Allocation::kNoSale);

  st = Play(open, {3, 4}, &out);
  REQUIRE(out);
  CHECK(out->winner == 1);
  CHECK(out->payoffs[1] == Cents(-50));
  CHECK(out->payoffs[0] == Cents(-100));

  const Scenario two = MultiPeriod(2);
  st = Play(two, {4, 0}, &out);
  CHECK(st.terminal);
  CHECK(st.history.size() == 2);
}

TEST_CASE("multi-period play runs until both agents exhaust their turns") {
  const Scenario two = MultiPeriod(2);
  std::optional<Outcome> out;
  SeqState st = Play(two, {1, 2, 3}, &out);
  CHECK_FALSE(st.terminal);
  st = Play(two, {1, 2, 3, 4}, &out);
  CHECK(st.terminal);
  REQUIRE(out);
  CHECK(out->winner == 1);
  CHECK(out->prices_paid[1] == Cents(400));
  // A Pass against a standing bid concedes.
  st = Play(two, {1, 2, 0}, &out);
  CHECK(st.terminal);
  CHECK(out->winner == 1);
  CHECK(out->prices_paid[1] == Cents(200));
}

TEST_CASE("step errors") {
  const Scenario open = Open();
  const SeqState after4 = Play(open, {4});
  CHECK_THROWS_AS(SeqStep(open, after4, Bid{3}), Error);
  const SeqState done = Play(open, {4, 0});
  try {
    SeqStep(open, done, Bid::Pass());
    FAIL("expected a terminal-state error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kTerminalState);
  }
  CHECK_THROWS_AS(SeqStep(Sealed(Good::kDivisible), {}, Bid{1}), Error);
}

TEST_CASE("observations") {
  const Scenario sealed = Sealed(Good::kIndivisible);
  CHECK(Observation(sealed, {}, 0) == ObsKey::Start());
  const Scenario open = Open();
  CHECK(Observation(open, Play(open, {4}), 1) == ObsKey::SeenBid(4));
  CHECK(ObsKey::SeenBid(4).ToString() == "seen:4");

  const Scenario two = MultiPeriod(2);
  // Agent 1 opened at 1, agent 2 raised to 3: agent 1 has used one turn and
  // faces a standing bid.
  const SeqState st = Play(two, {1, 3});
  CHECK(Observation(two, st, 0) == ObsKey::Period(3, 1, true));
  CHECK(ObsKey::Period(3, 1, true).ToString() == "p3:t1:s1");
  CHECK(ObsKey::Start() < ObsKey::SeenBid(0));
}

TEST_CASE("sequential histories obey price and turn limits") {
  for (int periods = 1; periods <= 3; ++periods) {
    const Scenario s = MultiPeriod(periods, 4);
    for (const DecisionNode& node : EnumerateDecisionNodes(s)) {
      for (Bid a : LegalActions(s, node.state)) {
        const StepResult r = SeqStep(s, node.state, a);
        CHECK(r.state.current_price >= node.state.current_price);
        CHECK(r.state.turns_used[0] <= periods);
        CHECK(r.state.turns_used[1] <= periods);
        CHECK(r.state.terminal == r.outcome.has_value());
      }
    }
  }
  const Scenario open = Open();
  for (const DecisionNode& node : EnumerateDecisionNodes(open)) {
    CHECK(node.state.history.size() < 2);
  }
}

TEST_CASE("open sequential matches one-period multi-period play") {
  Scenario one = MultiPeriod(1);
  one.good = Good::kIndivisible;
  const Scenario open = Open();
  for (int a = 0; a <= 5; ++a) {
    for (int b = 0; b <= 5; ++b) {
      const StepResult ra = SeqStep(open, InitialState(open), Bid{a});
      const StepResult rb = SeqStep(one, InitialState(one), Bid{a});
      CHECK(ra.state.terminal == rb.state.terminal);
      if (ra.state.terminal) continue;
      const auto legal = LegalActions(open, ra.state);
      if (std::find(legal.begin(), legal.end(), Bid{b}) == legal.end()) continue;
      CHECK(SeqStep(open, ra.state, Bid{b}).outcome ==
            SeqStep(one, rb.state, Bid{b}).outcome);
    }
  }
}

TEST_CASE("first-price monotonicity") {
  for (const Scenario& s : SimultaneousFamily()) {
    if (s.mechanism != Mechanism::kSealedFirstPrice) continue;
    for (int opp = 0; opp <= s.ceiling; ++opp) {
      for (int own = opp + 1; own <= s.ceiling; ++own) {
        for (int k = 1; own + k <= s.ceiling; ++k) {
          const Outcome lo = Allocate(s, Bid{own}, Bid{opp}, TieCoin::kFirst);
          const Outcome hi =
              Allocate(s, Bid{own + k}, Bid{opp}, TieCoin::kFirst);
          REQUIRE(lo.winner == 0);
          CHECK(lo.payoffs[0] - hi.payoffs[0] == Cents(100 * k));
        }
      }
    }
  }
}

TEST_CASE("vickrey own-bid independence") {
  for (const Scenario& s : SimultaneousFamily()) {
    if (s.mechanism != Mechanism::kVickreyMinPrice) continue;
    for (int opp = 0; opp < s.ceiling; ++opp) {
      const Cents ref =
          Allocate(s, Bid{opp + 1}, Bid{opp}, TieCoin::kFirst).payoffs[0];
      for (int own = opp + 2; own <= s.ceiling; ++own) {
        CHECK(Allocate(s, Bid{own}, Bid{opp}, TieCoin::kFirst).payoffs[0] ==
              ref);
      }
    }
  }
}

TEST_CASE("allocation conservation, payoff identity and fee reduction") {
  for (const Scenario& s : SimultaneousFamily()) {
    for (int a = 0; a <= s.ceiling; ++a) {
      for (int b = 0; b <= s.ceiling; ++b) {
        for (TieCoin coin : {TieCoin::kFirst, TieCoin::kSecond}) {
          const Outcome o = Allocate(s, Bid{a}, Bid{b}, coin);
          const int halves = o.halves[0] + o.halves[1];
          switch (o.allocation) {
            case Allocation::kWinnerTakesAll:
              CHECK(halves == 2);
              CHECK((o.halves[0] == 0) != (o.halves[1] == 0));
              break;
            case Allocation::kSplitHalfHalf:
              CHECK(o.halves[0] == 1);
              CHECK(o.halves[1] == 1);
              break;
            default:
              CHECK(halves == 0);
          }
          for (int i = 0; i < kNumAgents; ++i) {
            const Cents value(s.valuations[i].value * o.halves[i] / 2);
            CHECK(o.payoffs[i] == value - o.prices_paid[i] - o.fees_paid[i]);
            const bool loser = o.allocation == Allocation::kWinnerTakesAll &&
                               o.winner != i;
            if (loser && s.fee_policy.kind == FeeKind::kNoFee) {
              CHECK(o.payoffs[i] == Cents(0));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("expected payoffs are the exact mean over both coins") {
  for (const Scenario& s : SimultaneousFamily()) {
    for (int a = 0; a <= s.ceiling; ++a) {
      for (int b = 0; b <= s.ceiling; ++b) {
        const Outcome first = Allocate(s, Bid{a}, Bid{b}, TieCoin::kFirst);
        const Outcome second = Allocate(s, Bid{a}, Bid{b}, TieCoin::kSecond);
        const auto expected = ExpectedPayoffs(s, Bid{a}, Bid{b});
        for (int i = 0; i < kNumAgents; ++i) {
          CHECK(expected[i].value ==
                first.payoffs[i].value + second.payoffs[i].value);
          if (first == second) {
            CHECK(expected[i] == HalfCents::From(first.payoffs[i]));
          }
        }
      }
    }
  }
}

TEST_CASE("swapping agents swaps payoffs") {
  for (const Scenario& s : SimultaneousFamily()) {
    Scenario swapped = s;
    std::swap(swapped.valuations[0], swapped.valuations[1]);
    for (int a = 0; a <= s.ceiling; ++a) {
      for (int b = 0; b <= s.ceiling; ++b) {
        const auto p = ExpectedPayoffs(s, Bid{a}, Bid{b});
        const auto q = ExpectedPayoffs(swapped, Bid{b}, Bid{a});
        CHECK(p[0] == q[1]);
        CHECK(p[1] == q[0]);
      }
    }
  }
}

TEST_CASE("final bids and policy lookup") {
  const std::vector<Move> history{{0, Bid{1}}, {1, Bid{3}}, {0, Bid{4}},
                                  {1, Bid::Pass()}};
  const auto bids = FinalBids(history);
  CHECK(bids[0] == Bid{4});
  CHECK(bids[1] == Bid{3});
  Policy p{{ObsKey::Start(), Bid{2}}};
  CHECK(PolicyAction(p, ObsKey::Start()) == Bid{2});
  CHECK(PolicyAction(p, ObsKey::SeenBid(1)) == Bid::Pass());
}

TEST_CASE("money formatting") {
  CHECK(FormatCents(HalfCents(-150)) == "-75");
  CHECK(FormatCents(HalfCents(-1)) == "-0.5");
  CHECK(FormatCents(HalfCents(5)) == "2.5");
  CHECK(FormatCents(HalfCents(-7)) == "-3.5");
  CHECK(FormatDouble(0.505) == "0.505");
  CHECK(FormatDouble(1.0) == "1");
  CHECK(FormatDouble(-7.5) == "-7.5");
}

}  // namespace
}  // namespace auction
