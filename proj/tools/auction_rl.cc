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

// auction_rl: train bidders, solve scenarios, verify and sweep from the shell.

#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "auction/config.h"
#include "auction/error.h"
#include "auction/harness.h"
#include "auction/report.h"
#include "json.hpp"

namespace {

using auction::Error;
using auction::ErrorCode;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInconsistent = 3;
constexpr int kExitRuntime = 4;

struct Invocation {
  std::string command;
  std::string scenario_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> episodes;
  std::vector<std::uint64_t> seeds;
  std::optional<std::int64_t> last_n;
};

// Defaults, then the config file, then flags.
auction::Experiment BuildExperiment(const Invocation& inv,
                                    const auction::ConfigFile& cfg) {
  auction::Experiment e;
  e.scenario = cfg.scenario;
  if (cfg.learners) e.learners = *cfg.learners;
  if (cfg.episodes) e.episodes = *cfg.episodes;
  if (cfg.scenario.seed_hint) e.seed = *cfg.scenario.seed_hint;
  if (cfg.seed) e.seed = *cfg.seed;
  if (cfg.last_n) e.last_n = *cfg.last_n;
  if (cfg.convergence_window) e.convergence_window = *cfg.convergence_window;
  if (inv.episodes) e.episodes = *inv.episodes;
  if (inv.seed) e.seed = *inv.seed;
  if (inv.last_n) e.last_n = *inv.last_n;
  // Short runs keep the defaults usable.
  if (!inv.last_n && !cfg.last_n) e.last_n = std::min(e.last_n, e.episodes);
  if (!cfg.convergence_window) {
    e.convergence_window = std::min(e.convergence_window, e.episodes);
  }
  auction::ValidateExperiment(e);
  return e;
}

json InvocationJson(const Invocation& inv) {
  json doc;
  doc["command"] = inv.command;
  doc["scenario"] = inv.scenario_path;
  doc["out"] = inv.out_dir.empty() ? json(nullptr) : json(inv.out_dir);
  doc["seed"] = inv.seed ? json(*inv.seed) : json(nullptr);
  doc["episodes"] = inv.episodes ? json(*inv.episodes) : json(nullptr);
  doc["last_n"] = inv.last_n ? json(*inv.last_n) : json(nullptr);
  if (inv.command == "sweep") doc["seeds"] = inv.seeds;
  return doc;
}

std::filesystem::path PrepareOut(const std::string& dir) {
  std::filesystem::path out(dir);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create output directory " + dir +
                                    ": " + ec.message());
  }
  return out;
}

template <typename Writer>
void WriteFile(const std::filesystem::path& path, Writer&& write) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write(f);
  f.flush();
  if (!f) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

void WriteJson(const std::filesystem::path& path, const json& doc) {
  WriteFile(path, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

int CmdRun(const Invocation& inv) {
  const auction::ConfigFile cfg = auction::LoadConfigFile(inv.scenario_path);
  const auction::Experiment e = BuildExperiment(inv, cfg);
  const std::filesystem::path out = PrepareOut(inv.out_dir);
  const auction::RunResult run = auction::Train(e);
  const bool sequential = !auction::IsSimultaneous(e.scenario);
  WriteFile(out / "episodes.csv", [&](std::ostream& f) {
    auction::WriteEpisodesCsv(run.records, sequential, f);
  });
  WriteFile(out / "heatmap.csv",
            [&](std::ostream& f) { auction::WriteHeatmapCsv(run.heatmap, f); });
  json summary = auction::SummaryJson(run);
  summary["invocation"] = InvocationJson(inv);
  WriteJson(out / "summary.json", summary);
  std::cerr << "run: greedy " << summary["greedy"].dump() << ", "
            << run.verdict.reason << '\n';
  return kExitOk;
}

int CmdSolve(const Invocation& inv) {
  const auction::Scenario s = auction::ParseScenario(inv.scenario_path);
  const json doc = auction::EquilibriumJson(auction::SolveScenario(s));
  if (inv.out_dir.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    WriteJson(PrepareOut(inv.out_dir) / "equilibrium.json", doc);
  }
  return kExitOk;
}

int CmdVerify(const Invocation& inv) {
  const auction::ConfigFile cfg = auction::LoadConfigFile(inv.scenario_path);
  const auction::Experiment e = BuildExperiment(inv, cfg);
  const auction::RunResult run = auction::Train(e);
  json doc = auction::VerdictJson(run.verdict);
  doc["greedy"] = auction::SummaryJson(run)["greedy"];
  std::cout << doc.dump() << '\n';
  if (!inv.out_dir.empty()) {
    json summary = auction::SummaryJson(run);
    summary["invocation"] = InvocationJson(inv);
    WriteJson(PrepareOut(inv.out_dir) / "summary.json", summary);
  }
  return run.verdict.consistent ? kExitOk : kExitInconsistent;
}

int CmdSweep(const Invocation& inv) {
  if (inv.seeds.empty()) {
    throw Error(ErrorCode::kInvalidExperiment, "--seeds needs at least one seed");
  }
  const auction::ConfigFile cfg = auction::LoadConfigFile(inv.scenario_path);
  const auction::Experiment e = BuildExperiment(inv, cfg);
  const std::filesystem::path out = PrepareOut(inv.out_dir);
  const auction::AggregateReport agg = auction::MultiSeed(e, inv.seeds);
  json doc = auction::AggregateJson(e, agg);
  doc["invocation"] = InvocationJson(inv);
  WriteJson(out / "sweep.json", doc);
  std::cerr << "sweep: " << doc["consistency_rate"].get<std::string>()
            << " consistent\n";
  return kExitOk;
}

bool IsConfigError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingFile:
    case ErrorCode::kMalformedDocument:
    case ErrorCode::kSchema:
    case ErrorCode::kInvalidLearnerConfig:
    case ErrorCode::kInvalidExperiment:
    case ErrorCode::kJointLearnerNeedsSimultaneous:
      return true;
    default:
      return auction::IsValidationError(code);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Train Q-learning bidders in repeated auctions"};
  app.require_subcommand(1);
  Invocation inv;

  auto add_common = [&](CLI::App* cmd, bool needs_out) {
    cmd->add_option("--scenario", inv.scenario_path, "Scenario JSON file")
        ->required();
    auto* out = cmd->add_option("--out", inv.out_dir, "Output directory");
    if (needs_out) out->required();
  };
  auto add_training = [&](CLI::App* cmd) {
    cmd->add_option("--seed", inv.seed, "Master seed");
    cmd->add_option("--episodes", inv.episodes, "Training episodes");
    cmd->add_option("--last-n", inv.last_n, "Episodes in the heatmap window");
  };

  CLI::App* run = app.add_subcommand("run", "Train and write episode logs");
  add_common(run, true);
  add_training(run);
  CLI::App* solve = app.add_subcommand("solve", "Solve the scenario exactly");
  add_common(solve, false);
  CLI::App* verify =
      app.add_subcommand("verify", "Train and check the equilibrium verdict");
  add_common(verify, false);
  add_training(verify);
  CLI::App* sweep = app.add_subcommand("sweep", "Train over many seeds");
  add_common(sweep, true);
  add_training(sweep);
  sweep->add_option("--seeds", inv.seeds, "Comma-separated seeds")
      ->delimiter(',')
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) {
      inv.command = "run";
      return CmdRun(inv);
    }
    if (*solve) {
      inv.command = "solve";
      return CmdSolve(inv);
    }
    if (*verify) {
      inv.command = "verify";
      return CmdVerify(inv);
    }
    inv.command = "sweep";
    return CmdSweep(inv);
  } catch (const Error& e) {
    std::cerr << "error [" << auction::ErrorCodeName(e.code()) << "]: "
              << e.what() << '\n';
    return IsConfigError(e.code()) ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error [runtime]: " << e.what() << '\n';
    return kExitRuntime;
  }
}
