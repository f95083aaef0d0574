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

#include "fedfair/expected_error.h"

#include <cassert>
#include <cmath>
#include <string>

#include "fedfair/status.h"

namespace fedfair {

namespace {

constexpr double kUnitSumTolerance = 1e-9;

bool is_degenerate(const PopulationParams& params) {
  return params.mu_e == 0.0 && params.sigma_sq == 0.0;
}

}  // namespace

std::vector<double> WeightVector::aligned_to(const Coalition& coalition) const {
  if (weights.size() != coalition.size()) {
    throw FedFairError(ErrorCode::kWeightDomainMismatch,
                       "weight vector has " + std::to_string(weights.size()) +
                           " entries for a coalition of " +
                           std::to_string(coalition.size()));
  }
  if (!coalition.contains(target)) {
    throw FedFairError(ErrorCode::kTargetNotInCoalition,
                       "weight target '" + target + "' is not in the coalition");
  }
  std::vector<double> out;
  out.reserve(coalition.size());
  double sum = 0.0;
  for (const Player& p : coalition.players()) {
    auto it = weights.find(p.id);
    if (it == weights.end()) {
      throw FedFairError(ErrorCode::kWeightDomainMismatch,
                         "no weight for player '" + p.id + "'");
    }
    if (!std::isfinite(it->second)) {
      throw FedFairError(ErrorCode::kNonFiniteValue,
                         "weight for player '" + p.id + "' is not finite");
    }
    out.push_back(it->second);
    sum += it->second;
  }
  if (std::fabs(sum - 1.0) > kUnitSumTolerance) {
    throw FedFairError(ErrorCode::kNonUnitSum,
                       "weights sum to " + std::to_string(sum));
  }
  return out;
}

FineGrainedContext make_fine_grained_context(const Coalition& coalition,
                                             const PopulationParams& params) {
  if (is_degenerate(params)) {
    throw FedFairError(ErrorCode::kDegenerateParams,
                       "fine-grained weights are undefined when mu_e == "
                       "sigma_sq == 0");
  }
  FineGrainedContext ctx;
  ctx.v_values.reserve(coalition.size());
  for (const Player& p : coalition.players()) {
    const double v = params.sigma_sq + params.mu_e / p.n;
    ctx.v_values.push_back(v);
    ctx.t_sum += 1.0 / v;
  }
  return ctx;
}

double local_error(const Player& player, const PopulationParams& params) {
  return params.mu_e / player.n;
}

double uniform_error(const Coalition& coalition, std::string_view target,
                     const PopulationParams& params) {
  const std::size_t j = coalition.index_of(target);
  double off_sum = 0.0;
  double off_sum_sq = 0.0;
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    if (i == j) continue;
    off_sum += coalition[i].n;
    off_sum_sq += coalition[i].n * coalition[i].n;
  }
  const double total = coalition.total();
  return params.mu_e / total +
         params.sigma_sq * (off_sum_sq + off_sum * off_sum) / (total * total);
}

double weighted_error(const Coalition& coalition, const WeightVector& weights,
                      const PopulationParams& params) {
  const std::vector<double> v = weights.aligned_to(coalition);
  const std::size_t j = coalition.index_of(weights.target);
  double noise = 0.0;
  double off_sq = 0.0;
  double off_sum = 0.0;
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    noise += v[i] * v[i] / coalition[i].n;
    if (i == j) continue;
    off_sq += v[i] * v[i];
    off_sum += v[i];
  }
  return params.mu_e * noise + params.sigma_sq * (off_sq + off_sum * off_sum);
}

WeightVector fine_grained_weights(const Coalition& coalition,
                                  std::string_view target,
                                  const PopulationParams& params) {
  const std::size_t j = coalition.index_of(target);
  const FineGrainedContext ctx = make_fine_grained_context(coalition, params);
  double others = 0.0;  // sum_{i != j} 1 / V_i
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    if (i != j) others += 1.0 / ctx.v_values[i];
  }
  const double v_j = ctx.v_values[j];
  const double denom = 1.0 + v_j * others;
  // V_j - sigma_sq, taken directly so it cannot round below zero.
  const double own_noise = params.mu_e / coalition[j].n;

  WeightVector out;
  out.target = std::string(target);
  for (std::size_t k = 0; k < coalition.size(); ++k) {
    const double w = k == j ? (1.0 + params.sigma_sq * others) / denom
                            : own_noise / (ctx.v_values[k] * denom);
    assert(w >= 0.0);
    out.weights.emplace(coalition[k].id, w);
  }
  return out;
}

double fine_grained_error(const Coalition& coalition, std::string_view target,
                          const PopulationParams& params) {
  const std::size_t j = coalition.index_of(target);
  const FineGrainedContext ctx = make_fine_grained_context(coalition, params);
  double others = 0.0;  // T - 1 / V_j, summed directly
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    if (i != j) others += 1.0 / ctx.v_values[i];
  }
  const double v_j = ctx.v_values[j];
  const double own_noise = params.mu_e / coalition[j].n;
  return own_noise / (v_j * ctx.t_sum) * (1.0 + params.sigma_sq * others);
}

WeightVector uniform_weights(const Coalition& coalition, std::string_view target) {
  coalition.index_of(target);
  WeightVector out;
  out.target = std::string(target);
  const double total = coalition.total();
  for (const Player& p : coalition.players()) out.weights.emplace(p.id, p.n / total);
  return out;
}

WeightVector local_weights(const Coalition& coalition, std::string_view target) {
  coalition.index_of(target);
  WeightVector out;
  out.target = std::string(target);
  for (const Player& p : coalition.players()) {
    out.weights.emplace(p.id, p.id == target ? 1.0 : 0.0);
  }
  return out;
}

double error(const Coalition& coalition, std::string_view target,
             FederationMethod method, const PopulationParams& params) {
  switch (method) {
    case FederationMethod::kLocal:
      return local_error(coalition.at(target), params);
    case FederationMethod::kUniform:
      return uniform_error(coalition, target, params);
    case FederationMethod::kFineGrained:
      return fine_grained_error(coalition, target, params);
  }
  throw FedFairError(ErrorCode::kInvalidArgument, "unknown federation method");
}

WeightVector method_weights(const Coalition& coalition, std::string_view target,
                            FederationMethod method,
                            const PopulationParams& params) {
  switch (method) {
    case FederationMethod::kLocal:
      return local_weights(coalition, target);
    case FederationMethod::kUniform:
      return uniform_weights(coalition, target);
    case FederationMethod::kFineGrained:
      return fine_grained_weights(coalition, target, params);
  }
  throw FedFairError(ErrorCode::kInvalidArgument, "unknown federation method");
}

ErrorFunction error_function(FederationMethod method) {
  return [method](const Coalition& coalition, std::string_view target,
                  const PopulationParams& params) {
    return error(coalition, target, method, params);
  };
}

}  // namespace fedfair
