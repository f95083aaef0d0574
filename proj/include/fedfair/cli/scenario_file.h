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

#ifndef FEDFAIR_CLI_SCENARIO_FILE_H_
#define FEDFAIR_CLI_SCENARIO_FILE_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fedfair/model.h"

namespace fedfair::cli {

// Contents of a scenario JSON file:
//   {"mu_e": 10, "sigma_sq": 1, "method": "uniform",
//    "players": [{"id": "small", "n": 6}, {"n": 20}]}
// Players without an id are named "p<index>".
struct ScenarioFile {
  Scenario scenario;
  FederationMethod method = FederationMethod::kUniform;

  bool operator==(const ScenarioFile&) const = default;
};

// Rejection of a scenario file. `field` is a JSON path such as
// "players[1].n", or empty for syntax errors, which carry the line instead.
class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Strict parse: unknown fields, wrong types and model-invariant violations
// are all rejected.
ScenarioFile parse_scenario(std::string_view json_text);
ScenarioFile load_scenario(const std::string& path);

// Canonical JSON with explicit ids and round-trip precision; parses back to
// an equal ScenarioFile.
std::string dump_scenario(const ScenarioFile& file);

}  // namespace fedfair::cli

#endif  // FEDFAIR_CLI_SCENARIO_FILE_H_
