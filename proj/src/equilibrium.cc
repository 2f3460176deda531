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

#include "auction/equilibrium.h"

#include <algorithm>
#include <functional>
#include <string>

#include "auction/error.h"

namespace auction {
namespace {

// Continuation payoff of `agent` when it plays `action` at `st` and both
// agents then follow `behavior`.
Cents DeviationPayoff(const Scenario& s, const ObservedBehavior& behavior,
                      const SeqState& st, Bid action, int agent) {
  StepResult r = SeqStep(s, st, action);
  if (r.state.terminal) return r.outcome->payoffs[agent];
  return FollowPolicies(s, behavior, r.state).outcome.payoffs[agent];
}

std::string DescribeJoint(const JointAction& joint) {
  return "(" + std::to_string(joint[0].level) + "," +
         std::to_string(joint[1].level) + ")";
}

}  // namespace

NormalFormGame::NormalFormGame(std::vector<Bid> actions,
                               std::vector<HalfCents> payoff_a,
                               std::vector<HalfCents> payoff_b)
    : actions_(std::move(actions)),
      payoffs_{std::move(payoff_a), std::move(payoff_b)} {
  const std::size_t cells = actions_.size() * actions_.size();
  if (actions_.empty() || payoffs_[0].size() != cells ||
      payoffs_[1].size() != cells) {
    throw Error(ErrorCode::kSchema, "bimatrix shape does not match actions");
  }
}

HalfCents NormalFormGame::Payoff(int agent, std::size_t row,
                                 std::size_t col) const {
  return payoffs_[agent][row * actions_.size() + col];
}

HalfCents NormalFormGame::Payoff(int agent, const JointAction& joint) const {
  return Payoff(agent, IndexOf(joint[0]), IndexOf(joint[1]));
}

std::size_t NormalFormGame::IndexOf(Bid bid) const {
  auto it = std::find(actions_.begin(), actions_.end(), bid);
  if (it == actions_.end()) {
    throw Error(ErrorCode::kIllegalAction, ToString(bid) + " not in game");
  }
  return static_cast<std::size_t>(it - actions_.begin());
}

NormalFormGame BuildBimatrix(const Scenario& s) {
  if (!IsSimultaneous(s)) {
    throw Error(ErrorCode::kWrongMechanism,
                "bimatrix requires a simultaneous mechanism");
  }
  std::vector<Bid> grid = BidGrid(s);
  std::vector<HalfCents> a, b;
  a.reserve(grid.size() * grid.size());
  b.reserve(grid.size() * grid.size());
  for (Bid row : grid) {
    for (Bid col : grid) {
      const auto payoffs = ExpectedPayoffs(s, row, col);
      a.push_back(payoffs[0]);
      b.push_back(payoffs[1]);
    }
  }
  return NormalFormGame(std::move(grid), std::move(a), std::move(b));
}

std::vector<Bid> BestResponses(const NormalFormGame& g, int agent,
                               Bid opponent_action) {
  const std::size_t opp = g.IndexOf(opponent_action);
  auto payoff = [&](std::size_t own) {
    return agent == 0 ? g.Payoff(0, own, opp) : g.Payoff(1, opp, own);
  };
  HalfCents best = payoff(0);
  for (std::size_t i = 1; i < g.size(); ++i) best = std::max(best, payoff(i));
  std::vector<Bid> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (payoff(i) == best) out.push_back(g.actions()[i]);
  }
  return out;
}

std::vector<JointAction> PureNash(const NormalFormGame& g) {
  const std::size_t n = g.size();
  // Column-wise best payoff for A and row-wise best payoff for B.
  std::vector<HalfCents> best_a(n), best_b(n);
  for (std::size_t col = 0; col < n; ++col) {
    best_a[col] = g.Payoff(0, 0, col);
    for (std::size_t row = 1; row < n; ++row) {
      best_a[col] = std::max(best_a[col], g.Payoff(0, row, col));
    }
  }
  for (std::size_t row = 0; row < n; ++row) {
    best_b[row] = g.Payoff(1, row, 0);
    for (std::size_t col = 1; col < n; ++col) {
      best_b[row] = std::max(best_b[row], g.Payoff(1, row, col));
    }
  }
  std::vector<JointAction> out;
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      if (g.Payoff(0, row, col) == best_a[col] &&
          g.Payoff(1, row, col) == best_b[row]) {
        out.push_back({g.actions()[row], g.actions()[col]});
      }
    }
  }
  return out;
}

MaximinResult Maximin(const NormalFormGame& g, int agent) {
  const std::size_t n = g.size();
  std::vector<HalfCents> worst(n);
  for (std::size_t own = 0; own < n; ++own) {
    for (std::size_t opp = 0; opp < n; ++opp) {
      const HalfCents p =
          agent == 0 ? g.Payoff(0, own, opp) : g.Payoff(1, opp, own);
      worst[own] = opp == 0 ? p : std::min(worst[own], p);
    }
  }
  MaximinResult result;
  result.value = *std::max_element(worst.begin(), worst.end());
  for (std::size_t own = 0; own < n; ++own) {
    if (worst[own] == result.value) result.actions.push_back(g.actions()[own]);
  }
  return result;
}

std::vector<Bid> DominantActions(const NormalFormGame& g, int agent,
                                 bool strict) {
  const std::size_t n = g.size();
  auto payoff = [&](std::size_t own, std::size_t opp) {
    return agent == 0 ? g.Payoff(0, own, opp) : g.Payoff(1, opp, own);
  };
  std::vector<Bid> out;
  for (std::size_t cand = 0; cand < n; ++cand) {
    bool dominant = true;
    for (std::size_t other = 0; other < n && dominant; ++other) {
      if (other == cand) continue;
      for (std::size_t opp = 0; opp < n; ++opp) {
        const HalfCents mine = payoff(cand, opp);
        const HalfCents theirs = payoff(other, opp);
        if (strict ? mine <= theirs : mine < theirs) {
          dominant = false;
          break;
        }
      }
    }
    if (dominant) out.push_back(g.actions()[cand]);
  }
  return out;
}

EquilibriumSet SolveNormalForm(const NormalFormGame& g) {
  EquilibriumSet set;
  set.pure_nash = PureNash(g);
  for (int agent = 0; agent < kNumAgents; ++agent) {
    set.maximin[agent] = Maximin(g, agent);
    set.weakly_dominant[agent] = DominantActions(g, agent, false);
    set.strictly_dominant[agent] = DominantActions(g, agent, true);
  }
  return set;
}

SpeSolution BackwardInduction(const Scenario& s) {
  if (IsSimultaneous(s)) {
    throw Error(ErrorCode::kWrongMechanism,
                "backward induction requires a sequential mechanism");
  }
  SpeSolution solution;
  std::function<std::array<Cents, kNumAgents>(const SeqState&)> solve =
      [&](const SeqState& st) {
        const int mover = st.to_move;
        std::optional<std::array<Cents, kNumAgents>> best;
        std::vector<Bid> best_actions;
        for (Bid a : LegalActions(s, st)) {
          StepResult r = SeqStep(s, st, a);
          const std::array<Cents, kNumAgents> value =
              r.state.terminal ? r.outcome->payoffs : solve(r.state);
          if (!best || value[mover] > (*best)[mover]) {
            best = value;
            best_actions = {a};
          } else if (value[mover] == (*best)[mover]) {
            best_actions.push_back(a);
          }
        }
        // Legal actions ascend, so the first optimum is the lowest bid.
        solution.strategy[st.history] = best_actions.front();
        if (best_actions.size() > 1) solution.ties[st.history] = best_actions;
        return *best;
      };
  solve(InitialState(s));

  SeqState st = InitialState(s);
  while (true) {
    const Bid a = solution.strategy.at(st.history);
    StepResult r = SeqStep(s, st, a);
    if (r.state.terminal) {
      solution.path = r.state.history;
      solution.path_payoffs = r.outcome->payoffs;
      break;
    }
    st = std::move(r.state);
  }
  return solution;
}

ObservedBehavior ObservedBehavior::Joint(const JointAction& joint) {
  ObservedBehavior b;
  for (int agent = 0; agent < kNumAgents; ++agent) {
    b.policies[agent][ObsKey::Start()] = joint[agent];
  }
  return b;
}

PlayResult FollowPolicies(const Scenario& s, const ObservedBehavior& behavior,
                          const SeqState& from) {
  if (IsSimultaneous(s)) {
    throw Error(ErrorCode::kWrongMechanism,
                "policy rollout requires a sequential mechanism");
  }
  SeqState st = from;
  while (true) {
    const int mover = st.to_move;
    Bid a = PolicyAction(behavior.policies[mover], Observation(s, st, mover));
    const std::vector<Bid> legal = LegalActions(s, st);
    // A stale entry from an off-path table cannot bid below the price.
    if (std::find(legal.begin(), legal.end(), a) == legal.end()) {
      a = Bid::Pass();
    }
    StepResult r = SeqStep(s, st, a);
    if (r.state.terminal) return {r.state.history, *r.outcome};
    st = std::move(r.state);
  }
}

Verdict IsEquilibriumConsistent(const Scenario& s,
                                const ObservedBehavior& observed) {
  if (IsSimultaneous(s)) {
    const JointAction joint{
        PolicyAction(observed.policies[0], ObsKey::Start()),
        PolicyAction(observed.policies[1], ObsKey::Start())};
    const NormalFormGame g = BuildBimatrix(s);
    const std::vector<JointAction> nash = PureNash(g);
    if (std::find(nash.begin(), nash.end(), joint) != nash.end()) {
      return {true, "pure Nash"};
    }
    // Both agents do strictly better than in any pure equilibrium.
    bool cooperative = true;
    for (const JointAction& eq : nash) {
      for (int agent = 0; agent < kNumAgents; ++agent) {
        if (g.Payoff(agent, joint) <= g.Payoff(agent, eq)) cooperative = false;
      }
    }
    if (cooperative) return {false, "cooperative, not Nash"};
    for (int agent = 0; agent < kNumAgents; ++agent) {
      const std::vector<Bid> br = BestResponses(g, agent, joint[1 - agent]);
      if (std::find(br.begin(), br.end(), joint[agent]) == br.end()) {
        JointAction dev = joint;
        dev[agent] = br.front();
        return {false, "not Nash: agent " + std::to_string(agent + 1) +
                           " improves by deviating " + DescribeJoint(joint) +
                           " -> " + DescribeJoint(dev) + " (" +
                           FormatCents(g.Payoff(agent, dev)) + " > " +
                           FormatCents(g.Payoff(agent, joint)) + ")"};
      }
    }
    return {false, "not Nash"};
  }

  SeqState st = InitialState(s);
  while (!st.terminal) {
    const int mover = st.to_move;
    const ObsKey obs = Observation(s, st, mover);
    const std::vector<Bid> legal = LegalActions(s, st);
    Bid chosen = PolicyAction(observed.policies[mover], obs);
    if (std::find(legal.begin(), legal.end(), chosen) == legal.end()) {
      chosen = Bid::Pass();
    }
    const Cents on_path = DeviationPayoff(s, observed, st, chosen, mover);
    for (Bid alt : legal) {
      const Cents dev = DeviationPayoff(s, observed, st, alt, mover);
      if (dev > on_path) {
        return {false, "agent " + std::to_string(mover + 1) + " at " +
                           obs.ToString() + " improves with " + ToString(alt) +
                           " instead of " + ToString(chosen) + " (" +
                           std::to_string(dev.value) + " > " +
                           std::to_string(on_path.value) + ")"};
      }
    }
    st = SeqStep(s, st, chosen).state;
  }
  return {true, "on-path best responses"};
}

}  // namespace auction
