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

#ifndef FEDFAIR_MODEL_H_
#define FEDFAIR_MODEL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fedfair {

// Population-level constants of the mean estimation game.
//   mu_e:     expected sampling-noise variance of a single data point.
//   sigma_sq: variance of the true means across players.
struct PopulationParams {
  double mu_e = 0.0;
  double sigma_sq = 0.0;

  // mu_e / sigma_sq; empty when sigma_sq == 0.
  std::optional<double> noise_bias_ratio() const;

  bool operator==(const PopulationParams&) const = default;
};

using PlayerId = std::string;

struct Player {
  PlayerId id;
  double n = 0.0;  // sample count; real-valued so sizes can be perturbed

  bool operator==(const Player&) const = default;
};

// A nonempty set of players with distinct ids, kept in insertion order. All
// sums over players are accumulated in that order.
class Coalition {
 public:
  // Throws FedFairError when a Coalition invariant is violated.
  explicit Coalition(std::vector<Player> players);

  // Players named "p0", "p1", ... in the given order.
  static Coalition from_sizes(std::span<const double> sizes);
  static Coalition from_sizes(std::initializer_list<double> sizes);

  std::span<const Player> players() const { return players_; }
  std::size_t size() const { return players_.size(); }
  const Player& operator[](std::size_t index) const { return players_[index]; }

  double total() const { return total_; }
  double sum_sq() const { return sum_sq_; }
  double max_size() const;

  // Index of `id`, or empty if absent.
  std::optional<std::size_t> find(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id).has_value(); }
  // Throws kTargetNotInCoalition when absent.
  std::size_t index_of(std::string_view id) const;
  const Player& at(std::string_view id) const { return players_[index_of(id)]; }

  // Copy with player `id` resized to `n`.
  Coalition with_size(std::string_view id, double n) const;
  // Copy without player `id`; throws kEmptyCoalition if nothing remains.
  Coalition without(std::string_view id) const;
  // Copy with `player` appended.
  Coalition with(Player player) const;

  std::vector<double> sizes() const;

  bool operator==(const Coalition&) const = default;

 private:
  std::vector<Player> players_;
  double total_ = 0.0;
  double sum_sq_ = 0.0;
};

enum class FederationMethod { kLocal, kUniform, kFineGrained };

std::string_view to_string(FederationMethod method);
std::optional<FederationMethod> parse_federation_method(std::string_view name);

struct Scenario {
  PopulationParams params;
  Coalition coalition;

  bool operator==(const Scenario&) const = default;
};

// Checks every model invariant and reports the first violation as a
// FedFairError: parameters first, then the player list in order.
Scenario validate_scenario(const PopulationParams& params,
                           std::vector<Player> players);

// Parameter-only part of validate_scenario.
void validate_params(const PopulationParams& params);

}  // namespace fedfair

#endif  // FEDFAIR_MODEL_H_
