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

#ifndef FEDFAIR_MONTECARLO_H_
#define FEDFAIR_MONTECARLO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fedfair/expected_error.h"
#include "fedfair/model.h"

namespace fedfair {

// Distribution of the true means; both have mean 0 and variance sigma_sq.
enum class MeanDistribution { kGaussian, kUniform };

std::string_view to_string(MeanDistribution d);
std::optional<MeanDistribution> parse_mean_distribution(std::string_view name);

// Every player samples with noise variance mu_e.
struct ConstantNoise {};

// Per-player noise variances whose average is mu_e. Each trial hands the
// variances to the players in a fresh random order, so every player's noise
// variance is mu_e in expectation.
struct PerPlayerNoise {
  std::vector<double> variances;
};

using SampleNoise = std::variant<ConstantNoise, PerPlayerNoise>;
using Combiner = std::variant<FederationMethod, WeightVector>;

struct SimulationSpec {
  Coalition coalition;
  PlayerId target;
  Combiner combiner = FederationMethod::kUniform;
  PopulationParams params;
  MeanDistribution mean_distribution = MeanDistribution::kGaussian;
  SampleNoise sample_noise = ConstantNoise{};
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency; never affects results
};

struct SimulationResult {
  double empirical_mse = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
  double closed_form = 0.0;
  // (empirical - closed_form) / standard_error; 0 when both the difference
  // and the standard error vanish, +-infinity when only the latter does.
  double z_score = 0.0;
};

// Trials are processed in fixed blocks of this many; block results are merged
// in block order.
inline constexpr std::uint64_t kTrialBlock = 4096;

// Estimates the target's expected MSE by simulation. Each trial draws the
// true means, draws n_i samples per player, forms the sample means and
// combines them with the method's (or the explicit) weights. Throws
// kInvalidArgument for trials < 2, kNonIntegerSamples for non-integer sizes
// and kInvalidNoiseList for a malformed PerPlayerNoise.
SimulationResult simulate_error(const SimulationSpec& spec);

// Analytic counterpart of a spec.
double closed_form_error(const SimulationSpec& spec);

struct SuiteCase {
  std::string label;
  SimulationSpec spec;
  // Replaces the analytic value; used to check the harness rejects a wrong
  // closed form.
  std::optional<double> closed_form_override;
};

struct SuiteOutcome {
  std::string label;
  SimulationResult result;
  bool passed = false;
};

struct SuiteSummary {
  std::vector<SuiteOutcome> outcomes;
  double z_threshold = 4.0;
  double max_abs_z = 0.0;
  bool passed = true;
};

inline constexpr double kDefaultZThreshold = 4.0;

SuiteSummary simulate_suite(const std::vector<SuiteCase>& cases,
                            double z_threshold = kDefaultZThreshold);

// Motivating coalitions {6, 20}, {6, 30}, {6, 40} with mu_e = 10, sigma_sq = 1
// for both players under every method, plus sigma_sq = 0 and mu_e = 0 edge
// cases, a uniform mean distribution and heterogeneous per-player noise.
// Case i uses seed substream_seed(seed, i).
std::vector<SuiteCase> default_simulation_suite(std::uint64_t trials,
                                                std::uint64_t seed,
                                                unsigned threads = 0);

}  // namespace fedfair

#endif  // FEDFAIR_MONTECARLO_H_
