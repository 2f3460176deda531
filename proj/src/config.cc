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

#include "auction/config.h"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "auction/error.h"

namespace auction {
namespace {

using nlohmann::json;

[[noreturn]] void SchemaError(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::kSchema, key + ": " + what);
}

void RejectUnknownKeys(const json& doc, const std::set<std::string>& allowed,
                       const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.contains(key)) {
      SchemaError(where + key, "unknown key");
    }
  }
}

const json& Require(const json& doc, const std::string& key) {
  if (!doc.contains(key)) SchemaError(key, "missing required key");
  return doc.at(key);
}

std::int64_t AsInteger(const json& v, const std::string& key) {
  if (!v.is_number_integer()) SchemaError(key, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t AsUnsigned(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    SchemaError(key, "expected a non-negative integer");
  }
  return static_cast<std::uint64_t>(v.get<std::int64_t>());
}

int AsInt(const json& v, const std::string& key) {
  const std::int64_t x = AsInteger(v, key);
  if (x < INT32_MIN || x > INT32_MAX) SchemaError(key, "out of range");
  return static_cast<int>(x);
}

double AsDouble(const json& v, const std::string& key) {
  if (!v.is_number()) SchemaError(key, "expected a number");
  return v.get<double>();
}

std::string AsString(const json& v, const std::string& key) {
  if (!v.is_string()) SchemaError(key, "expected a string");
  return v.get<std::string>();
}

template <typename Enum>
Enum FromName(const json& v, const std::string& key,
              std::initializer_list<Enum> values) {
  const std::string name = AsString(v, key);
  for (Enum e : values) {
    if (ToString(e) == name) return e;
  }
  SchemaError(key, "unknown value '" + name + "'");
}

const std::set<std::string> kScenarioKeys{
    "mechanism", "ceiling",         "increment", "valuations",
    "good",      "fee_policy",      "periods",   "vickrey_tie_fee",
    "seed_hint", "description"};

const std::set<std::string> kExperimentKeys{"learners", "episodes", "seed",
                                            "last_n", "convergence_window"};

const std::set<std::string> kLearnerKeys{
    "algorithm",   "alpha",          "gamma",    "epsilon_start",
    "epsilon_min", "decay_fraction", "tie_break"};

}  // namespace

Scenario ScenarioFromJson(const json& doc) {
  if (!doc.is_object()) SchemaError("scenario", "expected a JSON object");
  std::set<std::string> allowed = kScenarioKeys;
  allowed.insert(kExperimentKeys.begin(), kExperimentKeys.end());
  RejectUnknownKeys(doc, allowed, "");

  Scenario s;
  s.mechanism = FromName(Require(doc, "mechanism"), "mechanism",
                         {Mechanism::kOpenSequential,
                          Mechanism::kSealedFirstPrice,
                          Mechanism::kMultiPeriodOpen,
                          Mechanism::kVickreyMinPrice});
  s.ceiling = AsInt(Require(doc, "ceiling"), "ceiling");
  if (doc.contains("increment")) {
    s.increment = AsInt(doc.at("increment"), "increment");
  }
  if (doc.contains("periods")) s.periods = AsInt(doc.at("periods"), "periods");

  const json& vals = Require(doc, "valuations");
  if (!vals.is_array()) SchemaError("valuations", "expected an array");
  s.valuations.clear();
  for (const json& v : vals) {
    s.valuations.push_back(Cents(AsInteger(v, "valuations")));
  }

  s.good = FromName(Require(doc, "good"), "good",
                    {Good::kDivisible, Good::kIndivisible});

  const json& fee = Require(doc, "fee_policy");
  if (!fee.is_object()) SchemaError("fee_policy", "expected an object");
  RejectUnknownKeys(fee, {"kind", "fee"}, "fee_policy.");
  s.fee_policy.kind =
      FromName(Require(fee, "kind"), "fee_policy.kind",
               {FeeKind::kNoFee, FeeKind::kLoserAlways,
                FeeKind::kLoserIfEntered});
  if (fee.contains("fee")) {
    s.fee_policy.fee = Cents(AsInteger(fee.at("fee"), "fee_policy.fee"));
  } else if (s.fee_policy.kind == FeeKind::kNoFee) {
    s.fee_policy.fee = Cents(0);
  } else {
    SchemaError("fee_policy.fee", "missing required key");
  }

  if (doc.contains("vickrey_tie_fee") && !doc.at("vickrey_tie_fee").is_null()) {
    s.vickrey_tie_fee =
        Cents(AsInteger(doc.at("vickrey_tie_fee"), "vickrey_tie_fee"));
  }
  if (doc.contains("seed_hint") && !doc.at("seed_hint").is_null()) {
    s.seed_hint = AsUnsigned(doc.at("seed_hint"), "seed_hint");
  }
  if (doc.contains("description")) AsString(doc.at("description"), "description");
  return ValidateScenario(std::move(s));
}

LearnerConfig LearnerFromJson(const json& doc) {
  if (!doc.is_object()) SchemaError("learners", "expected an object");
  RejectUnknownKeys(doc, kLearnerKeys, "learners.");
  LearnerConfig c;
  if (doc.contains("algorithm")) {
    c.algorithm =
        FromName(doc.at("algorithm"), "learners.algorithm",
                 {Algorithm::kQLearning, Algorithm::kFriendQ, Algorithm::kFoeQ});
  }
  if (doc.contains("alpha")) c.alpha = AsDouble(doc.at("alpha"), "alpha");
  if (doc.contains("gamma")) c.gamma = AsDouble(doc.at("gamma"), "gamma");
  if (doc.contains("epsilon_start")) {
    c.epsilon_start = AsDouble(doc.at("epsilon_start"), "epsilon_start");
  }
  if (doc.contains("epsilon_min")) {
    c.epsilon_min = AsDouble(doc.at("epsilon_min"), "epsilon_min");
  }
  if (doc.contains("decay_fraction")) {
    c.decay_fraction = AsDouble(doc.at("decay_fraction"), "decay_fraction");
  }
  if (doc.contains("tie_break")) {
    c.tie_break = FromName(doc.at("tie_break"), "learners.tie_break",
                           {TieBreak::kLowestBid, TieBreak::kHighestBid,
                            TieBreak::kUniformRandom});
  }
  ValidateLearnerConfig(c);
  return c;
}

ConfigFile ConfigFromJson(const json& doc) {
  ConfigFile cfg;
  cfg.scenario = ScenarioFromJson(doc);
  if (doc.contains("learners")) {
    const json& l = doc.at("learners");
    if (l.is_array()) {
      if (l.size() != kNumAgents) {
        SchemaError("learners", "expected exactly 2 learner objects");
      }
      cfg.learners = {LearnerFromJson(l[0]), LearnerFromJson(l[1])};
    } else {
      const LearnerConfig both = LearnerFromJson(l);
      cfg.learners = {both, both};
    }
  }
  if (doc.contains("episodes")) {
    cfg.episodes = AsInteger(doc.at("episodes"), "episodes");
  }
  if (doc.contains("seed")) cfg.seed = AsUnsigned(doc.at("seed"), "seed");
  if (doc.contains("last_n")) cfg.last_n = AsInteger(doc.at("last_n"), "last_n");
  if (doc.contains("convergence_window")) {
    cfg.convergence_window =
        AsInteger(doc.at("convergence_window"), "convergence_window");
  }
  return cfg;
}

json ToJson(const Scenario& s) {
  json doc;
  doc["mechanism"] = ToString(s.mechanism);
  doc["ceiling"] = s.ceiling;
  doc["increment"] = s.increment;
  doc["periods"] = s.periods;
  doc["valuations"] = json::array();
  for (Cents v : s.valuations) doc["valuations"].push_back(v.value);
  doc["good"] = ToString(s.good);
  doc["fee_policy"] = {{"kind", ToString(s.fee_policy.kind)},
                       {"fee", s.fee_policy.fee.value}};
  doc["vickrey_tie_fee"] =
      s.vickrey_tie_fee ? json(s.vickrey_tie_fee->value) : json(nullptr);
  if (s.seed_hint) doc["seed_hint"] = *s.seed_hint;
  return doc;
}

json ToJson(const LearnerConfig& c) {
  return {{"algorithm", ToString(c.algorithm)},
          {"alpha", c.alpha},
          {"gamma", c.gamma},
          {"epsilon_start", c.epsilon_start},
          {"epsilon_min", c.epsilon_min},
          {"decay_fraction", c.decay_fraction},
          {"tie_break", ToString(c.tie_break)}};
}

ConfigFile LoadConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!std::filesystem::is_regular_file(path) || !in) {
    throw Error(ErrorCode::kMissingFile,
                "cannot open scenario file " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedDocument,
                path.string() + ": " + e.what());
  }
  return ConfigFromJson(doc);
}

Scenario ParseScenario(const std::filesystem::path& path) {
  return LoadConfigFile(path).scenario;
}

}  // namespace auction
