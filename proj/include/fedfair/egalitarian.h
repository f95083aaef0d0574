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

#ifndef FEDFAIR_EGALITARIAN_H_
#define FEDFAIR_EGALITARIAN_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fedfair/expected_error.h"
#include "fedfair/model.h"

namespace fedfair {

// err_i / err_j within one coalition. Throws kZeroDenominator when err_j is 0.
double error_ratio(const Coalition& coalition, std::string_view i,
                   std::string_view j, FederationMethod method,
                   const PopulationParams& params);
double error_ratio(const Coalition& coalition, std::string_view i,
                   std::string_view j, const ErrorFunction& error_fn,
                   const PopulationParams& params);

struct FairnessAudit {
  FederationMethod method = FederationMethod::kUniform;
  // Largest err_i / err_j over ordered pairs; the realized lambda.
  double max_ratio = 1.0;
  // (numerator, denominator) of max_ratio.
  std::pair<PlayerId, PlayerId> worst_pair;
  // Smallest c with n_max <= c * mu_e / sigma_sq.
  double c_value = 0.0;
  double bound = 1.0;  // 2c + 1
  bool satisfied = true;
};

// Throws kUndefinedBound when mu_e == 0 or sigma_sq == 0.
FairnessAudit audit_egalitarian(const Coalition& coalition,
                                FederationMethod method,
                                const PopulationParams& params);

// Modularity

struct ModularityGrid {
  // Pairs (n_s, n_l) with n_s <= n_l are drawn from `sizes`.
  std::vector<double> sizes;
  // Sizes of the third player k used by the multi-player properties.
  std::vector<double> third_sizes;
  std::vector<PopulationParams> params;
};

// Sizes {1, 2, 5, 10, 50, 100}, third player {1, 10, 100},
// (mu_e, sigma_sq) in {0.1, 1, 10}^2.
ModularityGrid default_modularity_grid();

struct ModularityCounterexample {
  PopulationParams params;
  std::vector<double> sizes;  // n_s, n_l[, n_k]
  std::string detail;
  double observed = 0.0;
  double reference = 0.0;
};

struct PropertyCheck {
  int property = 0;
  std::string description;
  bool passed = true;
  std::size_t checks = 0;
  std::optional<ModularityCounterexample> counterexample;
};

struct ModularityReport {
  std::string method_name;
  std::array<PropertyCheck, 5> properties;

  bool all_passed() const;
};

inline constexpr double kModularitySlack = 1e-9;
inline constexpr double kFiniteDifferenceStep = 1e-4;  // relative to n
inline constexpr double kLimitSizeRatio = 1e-6;        // n_s / n_l for P5
inline constexpr double kLimitTolerance = 1e-3;        // relative, P5

// Numerically checks the five modularity properties over the grid. Failures
// are data: the first counterexample of each property is kept.
ModularityReport check_modularity(FederationMethod method,
                                  const ModularityGrid& grid);
ModularityReport check_modularity(const ErrorFunction& error_fn,
                                  std::string method_name,
                                  const ModularityGrid& grid);

// A deliberately non-modular method: one shared model whose weights are
// proportional to T - n_i, so small players dominate the estimate.
double inverse_weight_error(const Coalition& coalition, std::string_view target,
                            const PopulationParams& params);

// Tightness

struct TightnessResult {
  PopulationParams params;
  double n_small = 1.0;
  double n_large = 0.0;
  double ratio = 0.0;  // two-player uniform err_s / err_l
  double bound = 0.0;  // 2c + 1
  int doublings = 0;
};

// Two players n_s = 1 and n_l = c * mu_e with sigma_sq = 1. mu_e is doubled
// until the uniform error ratio reaches 2c + 1 - epsilon. Throws
// kInvalidArgument unless c > 0 and epsilon > 0, and std::logic_error if the
// ratio ever decreases between doublings or the search does not converge.
TightnessResult tightness_search(double c, double epsilon);

// Randomized bound sweep

struct BoundViolation {
  std::uint64_t index = 0;
  Scenario scenario;
  double max_ratio = 0.0;
  double bound = 0.0;
};

struct BoundSweepResult {
  FederationMethod method = FederationMethod::kUniform;
  std::size_t instances = 0;
  double min_ratio = 0.0;
  double max_quotient = 0.0;  // max over instances of max_ratio / bound
  std::vector<BoundViolation> violations;

  bool passed() const { return violations.empty(); }
};

inline constexpr double kRatioLowerSlack = 1e-12;
inline constexpr double kBoundSlack = 1e-9;

// Audits `instances` random scenarios (draw_random_scenario) per method and
// flags any max_ratio below 1 - 1e-12 or above 2c + 1 + 1e-9.
std::vector<BoundSweepResult> verify_egalitarian_bound(
    std::size_t instances, std::uint64_t seed,
    std::span<const FederationMethod> methods, unsigned threads = 0);

}  // namespace fedfair

#endif  // FEDFAIR_EGALITARIAN_H_
