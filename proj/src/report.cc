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

#include "auction/report.h"

#include "auction/config.h"

namespace auction {
namespace {

using nlohmann::json;

json BidsJson(std::span<const Bid> bids) {
  json out = json::array();
  for (Bid b : bids) out.push_back(b.level);
  return out;
}

json MovesJson(std::span<const Move> moves) {
  json out = json::array();
  for (const Move& m : moves) out.push_back({m.agent + 1, m.bid.level});
  return out;
}

json ExperimentJson(const Experiment& e) {
  json doc;
  doc["scenario"] = ToJson(e.scenario);
  doc["learners"] = {ToJson(e.learners[0]), ToJson(e.learners[1])};
  doc["episodes"] = e.episodes;
  doc["last_n"] = e.last_n;
  doc["convergence_window"] = e.convergence_window;
  return doc;
}

json OptionalEpisode(const std::optional<std::int64_t>& ep) {
  return ep ? json(*ep) : json(nullptr);
}

}  // namespace

std::string MovesToString(std::span<const Move> moves) {
  std::string out;
  for (const Move& m : moves) {
    if (!out.empty()) out += ' ';
    out += std::to_string(m.agent + 1) + ':' + std::to_string(m.bid.level);
  }
  return out;
}

json CentsJson(HalfCents amount) {
  if (amount.value % 2 == 0) return json(amount.value / 2);
  return json(static_cast<double>(amount.value) / 2.0);
}

void WriteEpisodesCsv(std::span<const EpisodeRecord> records, bool sequential,
                      std::ostream& out) {
  out << "episode,bid_a,bid_b,reward_a_cents,reward_b_cents,epsilon_a,"
         "epsilon_b";
  if (sequential) out << ",actions";
  out << '\n';
  for (const EpisodeRecord& r : records) {
    out << r.episode << ',' << r.bids[0].level << ',' << r.bids[1].level << ','
        << r.rewards[0].value << ',' << r.rewards[1].value << ','
        << FormatDouble(r.epsilon[0]) << ',' << FormatDouble(r.epsilon[1]);
    if (sequential) out << ",\"" << MovesToString(r.actions) << '"';
    out << '\n';
  }
}

void WriteHeatmapCsv(const Heatmap& heat, std::ostream& out) {
  std::int64_t total = 0;
  for (const auto& [cell, count] : heat) total += count;
  out << "bid_a,bid_b,count,frequency\n";
  for (const auto& [cell, count] : heat) {
    out << cell.first << ',' << cell.second << ',' << count << ','
        << FormatDouble(static_cast<double>(count) /
                        static_cast<double>(total))
        << '\n';
  }
}

json EquilibriumJson(const EquilibriumReport& report) {
  json doc = json::object();
  if (report.normal_form) {
    const EquilibriumSet& set = *report.normal_form;
    json nash = json::array();
    for (const JointAction& j : set.pure_nash) nash.push_back(BidsJson(j));
    doc["pure_nash"] = nash;
    json maximin = json::array();
    for (int i = 0; i < kNumAgents; ++i) {
      maximin.push_back({{"agent", i + 1},
                         {"value_cents", CentsJson(set.maximin[i].value)},
                         {"actions", BidsJson(set.maximin[i].actions)}});
    }
    doc["maximin"] = maximin;
    doc["weakly_dominant"] = {BidsJson(set.weakly_dominant[0]),
                              BidsJson(set.weakly_dominant[1])};
    doc["strictly_dominant"] = {BidsJson(set.strictly_dominant[0]),
                                BidsJson(set.strictly_dominant[1])};
  }
  if (report.spe) {
    const SpeSolution& spe = *report.spe;
    doc["spe_path"] = MovesJson(spe.path);
    doc["spe_payoffs"] = {spe.path_payoffs[0].value,
                          spe.path_payoffs[1].value};
    json ties = json::array();
    for (const auto& [history, actions] : spe.ties) {
      ties.push_back({{"history", MovesJson(history)},
                      {"actions", BidsJson(actions)}});
    }
    doc["indifferent"] = ties;
  }
  return doc;
}

json VerdictJson(const Verdict& v) {
  return {{"consistent", v.consistent}, {"reason", v.reason}};
}

json SummaryJson(const RunResult& run) {
  json doc = ExperimentJson(run.experiment);
  doc["seed"] = run.experiment.seed;
  doc["greedy"] = BidsJson(run.greedy.bids);
  if (!IsSimultaneous(run.experiment.scenario)) {
    doc["greedy_path"] = MovesJson(run.greedy.path);
  }
  doc["greedy_payoffs_cents"] = {CentsJson(run.greedy.payoffs[0]),
                                 CentsJson(run.greedy.payoffs[1])};
  doc["converged_at"] = OptionalEpisode(run.converged_at);
  doc["verdict"] = VerdictJson(run.verdict);
  doc["equilibrium"] = EquilibriumJson(run.equilibrium);
  return doc;
}

json AggregateJson(const Experiment& e, const AggregateReport& agg) {
  json doc = ExperimentJson(e);
  json runs = json::array();
  for (const SeedSummary& s : agg.runs) {
    json r;
    r["seed"] = s.seed;
    r["greedy"] = BidsJson(s.greedy_bids);
    r["greedy_path"] = MovesJson(s.greedy_path);
    r["greedy_payoffs_cents"] = {CentsJson(s.greedy_payoffs[0]),
                                 CentsJson(s.greedy_payoffs[1])};
    r["converged_at"] = OptionalEpisode(s.converged_at);
    r["verdict"] = VerdictJson(s.verdict);
    r["mean_reward_cents"] = {s.mean_reward[0], s.mean_reward[1]};
    runs.push_back(r);
  }
  doc["runs"] = runs;
  doc["modal_greedy"] = BidsJson(agg.modal_greedy_bids);
  doc["modal_greedy_path"] = MovesJson(agg.modal_greedy_path);
  doc["modal_count"] = agg.modal_count;
  doc["consistent"] = agg.consistent;
  doc["total"] = agg.total;
  doc["consistency_rate"] =
      std::to_string(agg.consistent) + "/" + std::to_string(agg.total);
  doc["mean_final_reward_cents"] = {agg.mean_final_reward[0],
                                    agg.mean_final_reward[1]};
  doc["equilibrium"] = EquilibriumJson(SolveScenario(e.scenario));
  return doc;
}

}  // namespace auction
