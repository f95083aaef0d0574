// Copyright 2026 The FedFair Authors
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

#include "fedfair/cli/scenario_file.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fedfair/status.h"
#include "json.hpp"

namespace fedfair::cli {

using nlohmann::json;

namespace {

// Line number of byte offset `pos` (1-based).
std::size_t line_of(std::string_view text, std::size_t pos) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ScenarioParseError(prefix + key, "unknown field");
    }
  }
}

double number_field(const json& obj, const std::string& key,
                    const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioParseError(path, "missing required field");
  if (!it->is_number()) throw ScenarioParseError(path, "must be a number");
  return it->get<double>();
}

}  // namespace

ScenarioFile parse_scenario(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ScenarioParseError(
        "", "line " + std::to_string(line_of(json_text, e.byte)) +
                ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) {
    throw ScenarioParseError("", "scenario must be a JSON object");
  }
  reject_unknown(doc, {"mu_e", "sigma_sq", "players", "method"}, "");

  PopulationParams params;
  params.mu_e = number_field(doc, "mu_e", "mu_e");
  params.sigma_sq = number_field(doc, "sigma_sq", "sigma_sq");
  if (params.mu_e < 0.0) throw ScenarioParseError("mu_e", "must be >= 0");
  if (params.sigma_sq < 0.0) throw ScenarioParseError("sigma_sq", "must be >= 0");

  auto method_it = doc.find("method");
  if (method_it == doc.end()) {
    throw ScenarioParseError("method", "missing required field");
  }
  if (!method_it->is_string()) {
    throw ScenarioParseError("method", "must be a string");
  }
  const auto method = parse_federation_method(method_it->get<std::string>());
  if (!method) {
    throw ScenarioParseError("method",
                             "must be one of local, uniform, fine_grained");
  }

  auto players_it = doc.find("players");
  if (players_it == doc.end()) {
    throw ScenarioParseError("players", "missing required field");
  }
  if (!players_it->is_array()) {
    throw ScenarioParseError("players", "must be an array");
  }
  if (players_it->empty()) {
    throw ScenarioParseError("players", "coalition must not be empty");
  }
  std::vector<Player> players;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < players_it->size(); ++i) {
    const json& entry = (*players_it)[i];
    const std::string path = "players[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ScenarioParseError(path, "must be an object");
    reject_unknown(entry, {"id", "n"}, path + ".");
    Player p;
    p.n = number_field(entry, "n", path + ".n");
    if (!(p.n > 0.0)) throw ScenarioParseError(path + ".n", "must be > 0");
    if (auto id = entry.find("id"); id != entry.end()) {
      if (!id->is_string()) throw ScenarioParseError(path + ".id", "must be a string");
      p.id = id->get<std::string>();
    } else {
      p.id = "p" + std::to_string(i);
    }
    if (!ids.insert(p.id).second) {
      throw ScenarioParseError(path + ".id", "duplicate player id '" + p.id + "'");
    }
    players.push_back(std::move(p));
  }

  try {
    return ScenarioFile{validate_scenario(params, std::move(players)), *method};
  } catch (const FedFairError& e) {
    throw ScenarioParseError("", e.what());
  }
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioParseError("", "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string dump_scenario(const ScenarioFile& file) {
  json doc;
  doc["mu_e"] = file.scenario.params.mu_e;
  doc["sigma_sq"] = file.scenario.params.sigma_sq;
  doc["method"] = std::string(to_string(file.method));
  doc["players"] = json::array();
  for (const Player& p : file.scenario.coalition.players()) {
    doc["players"].push_back({{"id", p.id}, {"n", p.n}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace fedfair::cli
