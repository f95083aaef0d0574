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

#ifndef FEDFAIR_EXPECTED_ERROR_H_
#define FEDFAIR_EXPECTED_ERROR_H_

#include <functional>
#include <map>
#include <string_view>
#include <vector>

#include "fedfair/model.h"

namespace fedfair {

// Combination weights v_ji that player `target` applies to every coalition
// member's local estimate. Weights must sum to one.
struct WeightVector {
  PlayerId target;
  std::map<PlayerId, double> weights;

  // Weights in coalition order. Throws kWeightDomainMismatch unless the keys
  // are exactly the coalition members, kNonFiniteValue on a non-finite
  // weight and kNonUnitSum when the sum is off by more than 1e-9.
  std::vector<double> aligned_to(const Coalition& coalition) const;

  bool operator==(const WeightVector&) const = default;
};

// Per-player V_i = sigma_sq + mu_e / n_i and T = sum_i 1 / V_i.
struct FineGrainedContext {
  std::vector<double> v_values;
  double t_sum = 0.0;
};

// Throws kDegenerateParams when mu_e == sigma_sq == 0.
FineGrainedContext make_fine_grained_context(const Coalition& coalition,
                                             const PopulationParams& params);

// mu_e / n.
double local_error(const Player& player, const PopulationParams& params);

// Expected MSE of player `target` under the sample-count-weighted average:
//   mu_e / T + sigma_sq * (sum_{i!=j} n_i^2 + (sum_{i!=j} n_i)^2) / T^2.
double uniform_error(const Coalition& coalition, std::string_view target,
                     const PopulationParams& params);

// Expected MSE of `weights.target` for arbitrary unit-sum weights:
//   mu_e * sum_i v_i^2 / n_i
//     + sigma_sq * (sum_{i!=j} v_i^2 + (sum_{i!=j} v_i)^2).
double weighted_error(const Coalition& coalition, const WeightVector& weights,
                      const PopulationParams& params);

// Error-minimizing unit-sum weights for `target`. All weights are
// nonnegative. Throws kDegenerateParams when mu_e == sigma_sq == 0, where
// every unit-sum choice is optimal.
WeightVector fine_grained_weights(const Coalition& coalition,
                                  std::string_view target,
                                  const PopulationParams& params);

// Closed-form error at the optimal weights:
//   (mu_e / n_j) / (V_j * T) * (1 + sigma_sq * (T - 1 / V_j)).
double fine_grained_error(const Coalition& coalition, std::string_view target,
                          const PopulationParams& params);

// v_i = n_i / T for every member; the weights behind uniform_error.
WeightVector uniform_weights(const Coalition& coalition, std::string_view target);
// v_target = 1, all others 0; the weights behind local_error.
WeightVector local_weights(const Coalition& coalition, std::string_view target);

// Dispatch over the three federation methods. kLocal ignores the other
// members but still requires `target` to be one of them.
double error(const Coalition& coalition, std::string_view target,
             FederationMethod method, const PopulationParams& params);

// Weights realizing `method` for `target`.
WeightVector method_weights(const Coalition& coalition, std::string_view target,
                            FederationMethod method,
                            const PopulationParams& params);

// Error of one player in a coalition. Used to audit methods that are not one
// of the three built-ins.
using ErrorFunction = std::function<double(
    const Coalition&, std::string_view, const PopulationParams&)>;

ErrorFunction error_function(FederationMethod method);

}  // namespace fedfair

#endif  // FEDFAIR_EXPECTED_ERROR_H_
