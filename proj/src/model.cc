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

#include "fedfair/model.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <utility>

#include "fedfair/status.h"

namespace fedfair {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyCoalition: return "EmptyCoalition";
    case ErrorCode::kNonPositiveSamples: return "NonPositiveSamples";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kNegativeVariance: return "NegativeVariance";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kTargetNotInCoalition: return "TargetNotInCoalition";
    case ErrorCode::kWeightDomainMismatch: return "WeightDomainMismatch";
    case ErrorCode::kNonUnitSum: return "NonUnitSum";
    case ErrorCode::kDegenerateParams: return "DegenerateParams";
    case ErrorCode::kZeroDenominator: return "ZeroDenominator";
    case ErrorCode::kUndefinedBound: return "UndefinedBound";
    case ErrorCode::kNonIntegerSamples: return "NonIntegerSamples";
    case ErrorCode::kInvalidNoiseList: return "InvalidNoiseList";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::optional<double> PopulationParams::noise_bias_ratio() const {
  if (sigma_sq > 0.0) return mu_e / sigma_sq;
  return std::nullopt;
}

namespace {

void check_players(const std::vector<Player>& players) {
  if (players.empty()) {
    throw FedFairError(ErrorCode::kEmptyCoalition,
                       "coalition must contain at least one player");
  }
  std::unordered_set<std::string_view> seen;
  for (const Player& p : players) {
    if (!std::isfinite(p.n)) {
      throw FedFairError(ErrorCode::kNonFiniteValue,
                         "player '" + p.id + "' has non-finite sample count");
    }
    if (p.n <= 0.0) {
      throw FedFairError(ErrorCode::kNonPositiveSamples,
                         "player '" + p.id + "' has non-positive sample count");
    }
    if (!seen.insert(p.id).second) {
      throw FedFairError(ErrorCode::kDuplicateId,
                         "player id '" + p.id + "' appears more than once");
    }
  }
}

}  // namespace

Coalition::Coalition(std::vector<Player> players) : players_(std::move(players)) {
  check_players(players_);
  for (const Player& p : players_) {
    total_ += p.n;
    sum_sq_ += p.n * p.n;
  }
}

Coalition Coalition::from_sizes(std::span<const double> sizes) {
  std::vector<Player> players;
  players.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    players.push_back(Player{"p" + std::to_string(i), sizes[i]});
  }
  return Coalition(std::move(players));
}

Coalition Coalition::from_sizes(std::initializer_list<double> sizes) {
  return from_sizes(std::span<const double>(sizes.begin(), sizes.size()));
}

double Coalition::max_size() const {
  double m = players_.front().n;
  for (const Player& p : players_) m = std::max(m, p.n);
  return m;
}

std::optional<std::size_t> Coalition::find(std::string_view id) const {
  for (std::size_t i = 0; i < players_.size(); ++i) {
    if (players_[i].id == id) return i;
  }
  return std::nullopt;
}

std::size_t Coalition::index_of(std::string_view id) const {
  if (auto idx = find(id)) return *idx;
  throw FedFairError(ErrorCode::kTargetNotInCoalition,
                     "player '" + std::string(id) + "' is not in the coalition");
}

Coalition Coalition::with_size(std::string_view id, double n) const {
  std::vector<Player> players = players_;
  players[index_of(id)].n = n;
  return Coalition(std::move(players));
}

Coalition Coalition::without(std::string_view id) const {
  std::vector<Player> players = players_;
  players.erase(players.begin() + static_cast<std::ptrdiff_t>(index_of(id)));
  return Coalition(std::move(players));
}

Coalition Coalition::with(Player player) const {
  std::vector<Player> players = players_;
  players.push_back(std::move(player));
  return Coalition(std::move(players));
}

std::vector<double> Coalition::sizes() const {
  std::vector<double> out;
  out.reserve(players_.size());
  for (const Player& p : players_) out.push_back(p.n);
  return out;
}

std::string_view to_string(FederationMethod method) {
  switch (method) {
    case FederationMethod::kLocal: return "local";
    case FederationMethod::kUniform: return "uniform";
    case FederationMethod::kFineGrained: return "fine_grained";
  }
  return "unknown";
}

std::optional<FederationMethod> parse_federation_method(std::string_view name) {
  if (name == "local") return FederationMethod::kLocal;
  if (name == "uniform") return FederationMethod::kUniform;
  if (name == "fine_grained") return FederationMethod::kFineGrained;
  return std::nullopt;
}

void validate_params(const PopulationParams& params) {
  if (!std::isfinite(params.mu_e) || !std::isfinite(params.sigma_sq)) {
    throw FedFairError(ErrorCode::kNonFiniteValue,
                       "mu_e and sigma_sq must be finite");
  }
  if (params.mu_e < 0.0) {
    throw FedFairError(ErrorCode::kNegativeVariance, "mu_e must be >= 0");
  }
  if (params.sigma_sq < 0.0) {
    throw FedFairError(ErrorCode::kNegativeVariance, "sigma_sq must be >= 0");
  }
}

Scenario validate_scenario(const PopulationParams& params,
                           std::vector<Player> players) {
  validate_params(params);
  return Scenario{params, Coalition(std::move(players))};
}

}  // namespace fedfair
