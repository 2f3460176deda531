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

#include "auction/harness.h"

#include <algorithm>
#include <future>
#include <thread>

#include "auction/error.h"

namespace auction {
namespace {

constexpr std::uint32_t kExploreStreamA = 1;
constexpr std::uint32_t kExploreStreamB = 2;
constexpr std::uint32_t kTieStream = 3;

Rng MakeStream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return Rng(seq);
}

double Reward(Cents c) { return static_cast<double>(c.value); }

EpisodeRecord RunSimultaneous(const Scenario& s,
                              std::array<Learner, kNumAgents>& agents,
                              std::int64_t episode, Streams& streams) {
  const std::vector<Bid> grid = BidGrid(s);
  const ObsKey obs = ObsKey::Start();
  EpisodeRecord rec;
  rec.episode = episode;
  for (int i = 0; i < kNumAgents; ++i) {
    rec.epsilon[i] = EpsilonAt(agents[i].schedule(), episode);
    rec.bids[i] = agents[i].Act(obs, grid, rec.epsilon[i], streams.explore[i]);
    rec.actions.push_back(Move{i, rec.bids[i]});
  }
  rec.coin = std::uniform_int_distribution<int>(0, 1)(streams.tie) == 0
                 ? TieCoin::kFirst
                 : TieCoin::kSecond;
  const Outcome out = Allocate(s, rec.bids[0], rec.bids[1], rec.coin);
  rec.rewards = out.payoffs;
  for (int i = 0; i < kNumAgents; ++i) {
    agents[i].Learn(obs, rec.bids[i], rec.bids[1 - i], Reward(rec.rewards[i]),
                    0.0);
  }
  return rec;
}

EpisodeRecord RunSequential(const Scenario& s,
                            std::array<Learner, kNumAgents>& agents,
                            std::int64_t episode, Streams& streams) {
  EpisodeRecord rec;
  rec.episode = episode;
  for (int i = 0; i < kNumAgents; ++i) {
    rec.epsilon[i] = EpsilonAt(agents[i].schedule(), episode);
  }
  // Drawn every episode so the tie stream stays aligned across mechanisms.
  rec.coin = std::uniform_int_distribution<int>(0, 1)(streams.tie) == 0
                 ? TieCoin::kFirst
                 : TieCoin::kSecond;

  struct Pending {
    ObsKey obs;
    Bid action;
  };
  std::array<std::optional<Pending>, kNumAgents> pending;
  SeqState st = InitialState(s);
  std::optional<Outcome> outcome;
  while (!outcome) {
    const int mover = st.to_move;
    const ObsKey obs = Observation(s, st, mover);
    const std::vector<Bid> legal = LegalActions(s, st);
    if (pending[mover]) {
      // No reward between an agent's own decisions; bootstrap from here.
      agents[mover].Learn(pending[mover]->obs, pending[mover]->action,
                          std::nullopt, 0.0, agents[mover].Value(obs, legal));
    }
    const Bid a = agents[mover].Act(obs, legal, rec.epsilon[mover],
                                    streams.explore[mover]);
    pending[mover] = Pending{obs, a};
    StepResult r = SeqStep(s, st, a);
    st = std::move(r.state);
    outcome = std::move(r.outcome);
  }
  rec.actions = st.history;
  rec.bids = FinalBids(st.history);
  rec.rewards = outcome->payoffs;
  for (int i = 0; i < kNumAgents; ++i) {
    if (pending[i]) {
      agents[i].Learn(pending[i]->obs, pending[i]->action, std::nullopt,
                      Reward(rec.rewards[i]), 0.0);
    }
  }
  return rec;
}

}  // namespace

void ValidateExperiment(const Experiment& e) {
  ValidateScenario(e.scenario);
  for (const LearnerConfig& c : e.learners) ValidateLearnerConfig(c);
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidExperiment, what);
  };
  if (e.episodes < 1) fail("episodes must be positive");
  if (e.last_n < 1 || e.last_n > e.episodes) {
    fail("last_n must be in [1, episodes]");
  }
  if (e.convergence_window < 1 || e.convergence_window > e.episodes) {
    fail("convergence_window must be in [1, episodes]");
  }
  for (const LearnerConfig& c : e.learners) {
    if (IsJoint(c.algorithm) && !IsSimultaneous(e.scenario)) {
      throw Error(ErrorCode::kJointLearnerNeedsSimultaneous,
                  "joint learner requires simultaneous mechanism");
    }
  }
}

Streams Streams::FromSeed(std::uint64_t seed) {
  return Streams{{MakeStream(seed, kExploreStreamA),
                  MakeStream(seed, kExploreStreamB)},
                 MakeStream(seed, kTieStream)};
}

EquilibriumReport SolveScenario(const Scenario& s) {
  EquilibriumReport report;
  if (IsSimultaneous(s)) {
    report.normal_form = SolveNormalForm(BuildBimatrix(s));
  } else {
    report.spe = BackwardInduction(s);
  }
  return report;
}

EpisodeRecord RunEpisode(const Scenario& s,
                         std::array<Learner, kNumAgents>& agents,
                         std::int64_t episode, Streams& streams) {
  for (const Learner& l : agents) {
    if (IsJoint(l.config().algorithm) && !IsSimultaneous(s)) {
      throw Error(ErrorCode::kJointLearnerNeedsSimultaneous,
                  "joint learner requires simultaneous mechanism");
    }
  }
  return IsSimultaneous(s) ? RunSimultaneous(s, agents, episode, streams)
                           : RunSequential(s, agents, episode, streams);
}

GreedyBehavior ExtractGreedy(const Scenario& s,
                             const std::array<Learner, kNumAgents>& agents) {
  GreedyBehavior g;
  for (const DecisionNode& node : EnumerateDecisionNodes(s)) {
    Policy& policy = g.behavior.policies[node.agent];
    if (policy.contains(node.obs)) continue;
    policy.emplace(node.obs, agents[node.agent].Greedy(
                                 node.obs, LegalActions(s, node.state)));
  }
  if (IsSimultaneous(s)) {
    for (int i = 0; i < kNumAgents; ++i) {
      g.bids[i] = PolicyAction(g.behavior.policies[i], ObsKey::Start());
      g.path.push_back(Move{i, g.bids[i]});
    }
    g.payoffs = ExpectedPayoffs(s, g.bids[0], g.bids[1]);
  } else {
    const PlayResult play = FollowPolicies(s, g.behavior, InitialState(s));
    g.path = play.history;
    g.bids = FinalBids(play.history);
    for (int i = 0; i < kNumAgents; ++i) {
      g.payoffs[i] = HalfCents::From(play.outcome.payoffs[i]);
    }
  }
  return g;
}

RunResult Train(const Experiment& e) {
  ValidateExperiment(e);
  RunResult result;
  result.experiment = e;
  std::array<Learner, kNumAgents> agents{
      Learner(e.scenario, e.learners[0], e.episodes),
      Learner(e.scenario, e.learners[1], e.episodes)};
  Streams streams = Streams::FromSeed(e.seed);
  result.records.reserve(static_cast<std::size_t>(e.episodes));
  for (std::int64_t ep = 0; ep < e.episodes; ++ep) {
    result.records.push_back(RunEpisode(e.scenario, agents, ep, streams));
  }
  result.heatmap = HeatmapLastN(result.records, e.last_n);
  result.converged_at =
      DetectConvergence(result.records, e.convergence_window);
  result.greedy = ExtractGreedy(e.scenario, agents);
  result.verdict = IsEquilibriumConsistent(e.scenario, result.greedy.behavior);
  result.equilibrium = SolveScenario(e.scenario);
  result.tables = {agents[0].table(), agents[1].table()};
  return result;
}

std::optional<std::int64_t> DetectConvergence(
    std::span<const EpisodeRecord> records, std::int64_t window) {
  if (records.empty()) return std::nullopt;
  std::size_t start = records.size() - 1;
  while (start > 0 && records[start - 1].bids == records.back().bids) --start;
  const auto run = static_cast<std::int64_t>(records.size() - start);
  if (run < window) return std::nullopt;
  return records[start].episode;
}

Heatmap HeatmapLastN(std::span<const EpisodeRecord> records, std::int64_t n) {
  if (n < 0 || static_cast<std::size_t>(n) > records.size()) {
    throw Error(ErrorCode::kInvalidExperiment,
                "heatmap window exceeds the record count");
  }
  Heatmap heat;
  for (const EpisodeRecord& r : records.last(static_cast<std::size_t>(n))) {
    ++heat[{r.bids[0].level, r.bids[1].level}];
  }
  return heat;
}

SeedSummary Summarize(const RunResult& run) {
  SeedSummary s;
  s.seed = run.experiment.seed;
  s.greedy_path = run.greedy.path;
  s.greedy_bids = run.greedy.bids;
  s.greedy_payoffs = run.greedy.payoffs;
  s.converged_at = run.converged_at;
  s.verdict = run.verdict;
  const auto tail = std::span<const EpisodeRecord>(run.records)
                        .last(static_cast<std::size_t>(run.experiment.last_n));
  for (int i = 0; i < kNumAgents; ++i) {
    double sum = 0.0;
    for (const EpisodeRecord& r : tail) sum += Reward(r.rewards[i]);
    s.mean_reward[i] = sum / static_cast<double>(tail.size());
  }
  return s;
}

AggregateReport MultiSeed(const Experiment& e,
                          std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) {
    throw Error(ErrorCode::kInvalidExperiment, "at least one seed required");
  }
  ValidateExperiment(e);
  auto run_one = [&e](std::uint64_t seed) {
    Experiment local = e;
    local.seed = seed;
    return Summarize(Train(local));
  };

  AggregateReport report;
  report.runs.resize(seeds.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::thread::hardware_concurrency());
  for (std::size_t base = 0; base < seeds.size(); base += workers) {
    const std::size_t end = std::min(seeds.size(), base + workers);
    if (workers == 1) {
      report.runs[base] = run_one(seeds[base]);
      continue;
    }
    std::vector<std::future<SeedSummary>> batch;
    for (std::size_t i = base; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, run_one, seeds[i]));
    }
    for (std::size_t i = base; i < end; ++i) {
      report.runs[i] = batch[i - base].get();
    }
  }

  std::map<std::vector<Move>, std::int64_t> counts;
  for (const SeedSummary& s : report.runs) {
    ++counts[s.greedy_path];
    if (s.verdict.consistent) ++report.consistent;
    for (int i = 0; i < kNumAgents; ++i) {
      report.mean_final_reward[i] += s.mean_reward[i];
    }
  }
  report.total = static_cast<std::int64_t>(report.runs.size());
  for (int i = 0; i < kNumAgents; ++i) {
    report.mean_final_reward[i] /= static_cast<double>(report.total);
  }
  for (const auto& [path, count] : counts) {
    if (count > report.modal_count) {
      report.modal_count = count;
      report.modal_greedy_path = path;
    }
  }
  report.modal_greedy_bids = FinalBids(report.modal_greedy_path);
  return report;
}

}  // namespace auction
