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

#include "fedfair/random.h"

#include <string>
#include <vector>

namespace fedfair {

Scenario draw_random_scenario(std::uint64_t seed, std::uint64_t index,
                              const RandomScenarioConfig& config) {
  Xoshiro256 rng(substream_seed(seed, index));
  const auto count = static_cast<int>(
      rng.uniform_int(static_cast<std::uint64_t>(config.min_players),
                      static_cast<std::uint64_t>(config.max_players)));
  std::vector<Player> players;
  players.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double n =
        config.min_n + (config.max_n - config.min_n) * rng.uniform01();
    players.push_back(Player{"p" + std::to_string(i), n});
  }
  const double width = config.max_param - config.min_param;
  PopulationParams params;
  params.mu_e = config.max_param - width * rng.uniform01();
  params.sigma_sq = config.max_param - width * rng.uniform01();
  return validate_scenario(params, std::move(players));
}

}  // namespace fedfair
