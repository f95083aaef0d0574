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

#include "fedfair/montecarlo.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fedfair/parallel.h"
#include "fedfair/random.h"
#include "fedfair/status.h"

namespace fedfair {

std::string_view to_string(MeanDistribution d) {
  switch (d) {
    case MeanDistribution::kGaussian: return "gaussian";
    case MeanDistribution::kUniform: return "uniform";
  }
  return "unknown";
}

std::optional<MeanDistribution> parse_mean_distribution(std::string_view name) {
  if (name == "gaussian") return MeanDistribution::kGaussian;
  if (name == "uniform") return MeanDistribution::kUniform;
  return std::nullopt;
}

namespace {

// Largest per-player sample count the simulator accepts.
constexpr double kMaxSimulatedSamples = 1e7;

// Running mean and sum of squared deviations.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }

  void merge(const Moments& other) {
    if (other.count == 0.0) return;
    const double total = count + other.count;
    const double delta = other.mean - mean;
    mean += delta * other.count / total;
    m2 += other.m2 + delta * delta * count * other.count / total;
    count = total;
  }
};

// Marsaglia polar method; no trigonometric calls.
class PolarNormal {
 public:
  double operator()(Xoshiro256& rng) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * rng.uniform01() - 1.0;
      v = 2.0 * rng.uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

 private:
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct PreparedSpec {
  std::vector<int> sizes;
  std::vector<double> weights;
  std::vector<double> noise_sd;  // one entry per noise slot
  bool permute_noise = false;
  std::size_t target = 0;
};

PreparedSpec prepare(const SimulationSpec& spec) {
  validate_params(spec.params);
  if (spec.trials < 2) {
    throw FedFairError(ErrorCode::kInvalidArgument,
                       "simulation needs at least 2 trials");
  }
  PreparedSpec prepared;
  prepared.target = spec.coalition.index_of(spec.target);
  for (const Player& p : spec.coalition.players()) {
    if (p.n != std::floor(p.n) || p.n > kMaxSimulatedSamples) {
      throw FedFairError(ErrorCode::kNonIntegerSamples,
                         "player '" + p.id + "' needs an integer sample count "
                         "for simulation");
    }
    prepared.sizes.push_back(static_cast<int>(p.n));
  }

  if (const auto* method = std::get_if<FederationMethod>(&spec.combiner)) {
    prepared.weights =
        method_weights(spec.coalition, spec.target, *method, spec.params)
            .aligned_to(spec.coalition);
  } else {
    const auto& explicit_weights = std::get<WeightVector>(spec.combiner);
    if (explicit_weights.target != spec.target) {
      throw FedFairError(ErrorCode::kWeightDomainMismatch,
                         "weight vector targets '" + explicit_weights.target +
                             "' but the simulation targets '" + spec.target +
                             "'");
    }
    prepared.weights = explicit_weights.aligned_to(spec.coalition);
  }

  if (const auto* list = std::get_if<PerPlayerNoise>(&spec.sample_noise)) {
    if (list->variances.size() != spec.coalition.size()) {
      throw FedFairError(ErrorCode::kInvalidNoiseList,
                         "noise list has " + std::to_string(list->variances.size()) +
                             " entries for " + std::to_string(spec.coalition.size()) +
                             " players");
    }
    double sum = 0.0;
    for (double eps : list->variances) {
      if (!std::isfinite(eps) || eps < 0.0) {
        throw FedFairError(ErrorCode::kInvalidNoiseList,
                           "noise variances must be finite and >= 0");
      }
      sum += eps;
      prepared.noise_sd.push_back(std::sqrt(eps));
    }
    const double average = sum / static_cast<double>(list->variances.size());
    if (std::fabs(average - spec.params.mu_e) >
        1e-12 * std::max(1.0, spec.params.mu_e)) {
      throw FedFairError(ErrorCode::kInvalidNoiseList,
                         "noise variances average " + std::to_string(average) +
                             ", expected mu_e = " + std::to_string(spec.params.mu_e));
    }
    prepared.permute_noise = true;
  } else {
    prepared.noise_sd.assign(spec.coalition.size(), std::sqrt(spec.params.mu_e));
  }
  return prepared;
}

}  // namespace

double closed_form_error(const SimulationSpec& spec) {
  if (const auto* method = std::get_if<FederationMethod>(&spec.combiner)) {
    return error(spec.coalition, spec.target, *method, spec.params);
  }
  return weighted_error(spec.coalition, std::get<WeightVector>(spec.combiner),
                        spec.params);
}

SimulationResult simulate_error(const SimulationSpec& spec) {
  const PreparedSpec prepared = prepare(spec);
  const std::size_t players = prepared.sizes.size();
  const double mean_sd = std::sqrt(spec.params.sigma_sq);
  const double uniform_half_width = std::sqrt(3.0 * spec.params.sigma_sq);
  const std::uint64_t blocks = (spec.trials + kTrialBlock - 1) / kTrialBlock;

  std::vector<Moments> block_moments(blocks);
  parallel_for(blocks, spec.threads, [&](std::size_t block) {
    std::vector<double> true_means(players);
    std::vector<std::size_t> noise_slot(players);
    Moments moments;
    const std::uint64_t begin = block * kTrialBlock;
    const std::uint64_t end = std::min(spec.trials, begin + kTrialBlock);
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      Xoshiro256 rng(substream_seed(spec.seed, trial));
      PolarNormal normal;
      for (std::size_t i = 0; i < players; ++i) {
        true_means[i] = spec.mean_distribution == MeanDistribution::kGaussian
                            ? mean_sd * normal(rng)
                            : uniform_half_width * (2.0 * rng.uniform01() - 1.0);
      }
      std::iota(noise_slot.begin(), noise_slot.end(), std::size_t{0});
      if (prepared.permute_noise) {
        for (std::size_t i = players - 1; i > 0; --i) {
          std::swap(noise_slot[i], noise_slot[rng.uniform_int(0, i)]);
        }
      }
      double estimate = 0.0;
      for (std::size_t i = 0; i < players; ++i) {
        const int n = prepared.sizes[i];
        double noise_sum = 0.0;
        for (int draw = 0; draw < n; ++draw) noise_sum += normal(rng);
        const double sample_mean =
            true_means[i] + prepared.noise_sd[noise_slot[i]] * noise_sum / n;
        estimate += prepared.weights[i] * sample_mean;
      }
      const double deviation = estimate - true_means[prepared.target];
      moments.add(deviation * deviation);
    }
    block_moments[block] = moments;
  });

  Moments total;
  for (const Moments& m : block_moments) total.merge(m);

  SimulationResult result;
  result.trials = spec.trials;
  result.empirical_mse = total.mean;
  const double n = static_cast<double>(spec.trials);
  result.standard_error = std::sqrt(total.m2 / (n - 1.0) / n);
  result.closed_form = closed_form_error(spec);
  const double diff = result.empirical_mse - result.closed_form;
  if (result.standard_error > 0.0) {
    result.z_score = diff / result.standard_error;
  } else if (diff == 0.0) {
    result.z_score = 0.0;
  } else {
    result.z_score = std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return result;
}

SuiteSummary simulate_suite(const std::vector<SuiteCase>& cases,
                            double z_threshold) {
  SuiteSummary summary;
  summary.z_threshold = z_threshold;
  for (const SuiteCase& c : cases) {
    SuiteOutcome outcome;
    outcome.label = c.label;
    outcome.result = simulate_error(c.spec);
    if (c.closed_form_override) {
      SimulationResult& r = outcome.result;
      r.closed_form = *c.closed_form_override;
      const double diff = r.empirical_mse - r.closed_form;
      r.z_score = r.standard_error > 0.0
                      ? diff / r.standard_error
                      : (diff == 0.0 ? 0.0
                                     : std::copysign(
                                           std::numeric_limits<double>::infinity(),
                                           diff));
    }
    const double abs_z = std::fabs(outcome.result.z_score);
    outcome.passed = abs_z <= z_threshold;
    summary.max_abs_z = std::max(summary.max_abs_z, abs_z);
    if (!outcome.passed) summary.passed = false;
    summary.outcomes.push_back(std::move(outcome));
  }
  return summary;
}

std::vector<SuiteCase> default_simulation_suite(std::uint64_t trials,
                                                std::uint64_t seed,
                                                unsigned threads) {
  std::vector<SuiteCase> cases;
  auto add = [&](std::string label, Coalition coalition, std::string target,
                 Combiner combiner, PopulationParams params,
                 MeanDistribution means = MeanDistribution::kGaussian,
                 SampleNoise noise = ConstantNoise{}) {
    SimulationSpec spec{std::move(coalition), std::move(target),
                        std::move(combiner), params, means, std::move(noise),
                        trials, substream_seed(seed, cases.size()), threads};
    cases.push_back(SuiteCase{std::move(label), std::move(spec), std::nullopt});
  };

  const PopulationParams table_params{10.0, 1.0};
  for (double n_l : {20.0, 30.0, 40.0}) {
    const Coalition pair({Player{"s", 6.0}, Player{"l", n_l}});
    for (FederationMethod m : {FederationMethod::kLocal, FederationMethod::kUniform,
                               FederationMethod::kFineGrained}) {
      for (const char* target : {"s", "l"}) {
        add("n_l=" + std::to_string(static_cast<int>(n_l)) + " " +
                std::string(to_string(m)) + " " + target,
            pair, target, m, table_params);
      }
    }
  }
  add("sigma_sq=0 {4,4} uniform", Coalition::from_sizes({4, 4}), "p0",
      FederationMethod::kUniform, PopulationParams{8.0, 0.0});
  const Coalition small_pair({Player{"s", 6.0}, Player{"l", 20.0}});
  add("mu_e=0 {6,20} uniform s", small_pair, "s", FederationMethod::kUniform,
      PopulationParams{0.0, 1.0});
  add("mu_e=0 {6,20} fine_grained s", small_pair, "s",
      FederationMethod::kFineGrained, PopulationParams{0.0, 1.0});
  add("uniform means {6,20} uniform s", small_pair, "s",
      FederationMethod::kUniform, table_params, MeanDistribution::kUniform);
  add("uniform means {6,20} fine_grained l", small_pair, "l",
      FederationMethod::kFineGrained, table_params, MeanDistribution::kUniform);
  add("per-player noise {6,20} uniform l", small_pair, "l",
      FederationMethod::kUniform, table_params, MeanDistribution::kGaussian,
      PerPlayerNoise{{4.0, 16.0}});
  return cases;
}

}  // namespace fedfair
