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

#include "fedfair/egalitarian.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fedfair/parallel.h"
#include "fedfair/random.h"
#include "fedfair/status.h"
#include "fedfair/tolerance.h"

namespace fedfair {

double error_ratio(const Coalition& coalition, std::string_view i,
                   std::string_view j, const ErrorFunction& error_fn,
                   const PopulationParams& params) {
  const double numerator = error_fn(coalition, i, params);
  const double denominator = error_fn(coalition, j, params);
  if (denominator == 0.0) {
    throw FedFairError(ErrorCode::kZeroDenominator,
                       "error of player '" + std::string(j) + "' is zero");
  }
  return numerator / denominator;
}

double error_ratio(const Coalition& coalition, std::string_view i,
                   std::string_view j, FederationMethod method,
                   const PopulationParams& params) {
  return error_ratio(coalition, i, j, error_function(method), params);
}

FairnessAudit audit_egalitarian(const Coalition& coalition,
                                FederationMethod method,
                                const PopulationParams& params) {
  if (params.mu_e <= 0.0 || params.sigma_sq <= 0.0) {
    throw FedFairError(ErrorCode::kUndefinedBound,
                       "2c+1 bound needs mu_e > 0 and sigma_sq > 0");
  }
  FairnessAudit audit;
  audit.method = method;
  audit.c_value = coalition.max_size() * params.sigma_sq / params.mu_e;
  audit.bound = 2.0 * audit.c_value + 1.0;

  std::vector<double> errors;
  errors.reserve(coalition.size());
  for (const Player& p : coalition.players()) {
    errors.push_back(error(coalition, p.id, method, params));
  }
  audit.max_ratio = 1.0;
  audit.worst_pair = {coalition[0].id, coalition[0].id};
  bool first = true;
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    for (std::size_t j = 0; j < coalition.size(); ++j) {
      if (i == j) continue;
      if (errors[j] == 0.0) {
        throw FedFairError(ErrorCode::kZeroDenominator,
                           "error of player '" + coalition[j].id + "' is zero");
      }
      const double ratio = errors[i] / errors[j];
      if (first || ratio > audit.max_ratio) {
        audit.max_ratio = ratio;
        audit.worst_pair = {coalition[i].id, coalition[j].id};
        first = false;
      }
    }
  }
  audit.satisfied = audit.max_ratio <= audit.bound;
  return audit;
}

bool ModularityReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyCheck& p) { return p.passed; });
}

ModularityGrid default_modularity_grid() {
  ModularityGrid grid;
  grid.sizes = {1, 2, 5, 10, 50, 100};
  grid.third_sizes = {1, 10, 100};
  for (double mu_e : {0.1, 1.0, 10.0}) {
    for (double sigma_sq : {0.1, 1.0, 10.0}) {
      grid.params.push_back(PopulationParams{mu_e, sigma_sq});
    }
  }
  return grid;
}

namespace {

Coalition two_players(double n_s, double n_l) {
  return Coalition({Player{"s", n_s}, Player{"l", n_l}});
}

Coalition three_players(double n_s, double n_l, double n_k) {
  return Coalition({Player{"s", n_s}, Player{"l", n_l}, Player{"k", n_k}});
}

class PropertyRecorder {
 public:
  PropertyRecorder(PropertyCheck& check) : check_(check) {}

  void record(bool ok, const PopulationParams& params, std::vector<double> sizes,
              const std::string& detail, double observed, double reference) {
    ++check_.checks;
    if (ok || !check_.passed) {
      if (!ok) check_.passed = false;
      return;
    }
    check_.passed = false;
    check_.counterexample = ModularityCounterexample{
        params, std::move(sizes), detail, observed, reference};
  }

 private:
  PropertyCheck& check_;
};

// Central difference of f at x with step h.
template <typename F>
double central_difference(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Property 1 on one coalition: for every pair with n_a < n_b the smaller
// player has strictly higher error; equal sizes give equal error.
void check_ordering(const ErrorFunction& error_fn, const Coalition& coalition,
                    const PopulationParams& params, PropertyRecorder& rec) {
  std::vector<double> errors;
  for (const Player& p : coalition.players()) {
    errors.push_back(error_fn(coalition, p.id, params));
  }
  for (std::size_t a = 0; a < coalition.size(); ++a) {
    for (std::size_t b = a + 1; b < coalition.size(); ++b) {
      std::size_t small = a, large = b;
      if (coalition[small].n > coalition[large].n) std::swap(small, large);
      bool ok;
      if (coalition[small].n < coalition[large].n) {
        ok = errors[small] > errors[large];
      } else {
        ok = approx_equal(errors[small], errors[large]);
      }
      rec.record(ok, params, coalition.sizes(),
                 "err(" + coalition[small].id + ") vs err(" +
                     coalition[large].id + ")",
                 errors[small], errors[large]);
    }
  }
}

}  // namespace

ModularityReport check_modularity(const ErrorFunction& error_fn,
                                  std::string method_name,
                                  const ModularityGrid& grid) {
  ModularityReport report;
  report.method_name = std::move(method_name);
  const char* descriptions[5] = {
      "larger player has lower error",
      "two-player coalition is the worst case for the ratio",
      "ratio increases with the large player's size",
      "ratio decreases with the small player's size",
      "ratio tends to (mu_e/n_l + 2 sigma_sq)/(mu_e/n_l) as n_s/n_l -> 0",
  };
  for (int p = 0; p < 5; ++p) {
    report.properties[p].property = p + 1;
    report.properties[p].description = descriptions[p];
  }
  PropertyRecorder p1(report.properties[0]);
  PropertyRecorder p2(report.properties[1]);
  PropertyRecorder p3(report.properties[2]);
  PropertyRecorder p4(report.properties[3]);
  PropertyRecorder p5(report.properties[4]);

  auto pair_ratio = [&](double n_s, double n_l, const PopulationParams& params) {
    return error_ratio(two_players(n_s, n_l), "s", "l", error_fn, params);
  };

  for (const PopulationParams& params : grid.params) {
    for (std::size_t a = 0; a < grid.sizes.size(); ++a) {
      for (std::size_t b = 0; b < grid.sizes.size(); ++b) {
        const double n_s = grid.sizes[a];
        const double n_l = grid.sizes[b];
        if (n_s > n_l) continue;

        const Coalition pair = two_players(n_s, n_l);
        check_ordering(error_fn, pair, params, p1);
        const double base = pair_ratio(n_s, n_l, params);

        for (double n_k : grid.third_sizes) {
          const Coalition trio = three_players(n_s, n_l, n_k);
          check_ordering(error_fn, trio, params, p1);
          const double ratio = error_ratio(trio, "s", "l", error_fn, params);
          p2.record(ratio <= base + kModularitySlack, params, trio.sizes(),
                    "ratio with third player vs two-player ratio", ratio, base);
          const double slope = central_difference(
              [&](double x) {
                return error_ratio(three_players(n_s, n_l, x), "s", "l",
                                   error_fn, params);
              },
              n_k, kFiniteDifferenceStep * n_k);
          p2.record(slope <= kModularitySlack, params, trio.sizes(),
                    "d ratio / d n_k", slope, 0.0);
        }

        const double slope_l = central_difference(
            [&](double x) { return pair_ratio(n_s, x, params); }, n_l,
            kFiniteDifferenceStep * n_l);
        p3.record(slope_l >= -kModularitySlack, params, pair.sizes(),
                  "d ratio / d n_l", slope_l, 0.0);

        const double slope_s = central_difference(
            [&](double x) { return pair_ratio(x, n_l, params); }, n_s,
            kFiniteDifferenceStep * n_s);
        p4.record(slope_s <= kModularitySlack, params, pair.sizes(),
                  "d ratio / d n_s", slope_s, 0.0);
      }
    }
    for (double n_l : grid.sizes) {
      const double n_s = kLimitSizeRatio * n_l;
      const double ratio = pair_ratio(n_s, n_l, params);
      const double local_l = params.mu_e / n_l;
      const double limit = (local_l + 2.0 * params.sigma_sq) / local_l;
      p5.record(relative_difference(ratio, limit) <= kLimitTolerance, params,
                {n_s, n_l}, "ratio at n_s/n_l = 1e-6 vs limit", ratio, limit);
    }
  }
  return report;
}

ModularityReport check_modularity(FederationMethod method,
                                  const ModularityGrid& grid) {
  return check_modularity(error_function(method), std::string(to_string(method)),
                          grid);
}

double inverse_weight_error(const Coalition& coalition, std::string_view target,
                            const PopulationParams& params) {
  if (coalition.size() == 1) {
    return weighted_error(coalition, local_weights(coalition, target), params);
  }
  WeightVector weights;
  weights.target = std::string(target);
  const double total = coalition.total();
  const double norm = (static_cast<double>(coalition.size()) - 1.0) * total;
  for (const Player& p : coalition.players()) {
    weights.weights.emplace(p.id, (total - p.n) / norm);
  }
  return weighted_error(coalition, weights, params);
}

TightnessResult tightness_search(double c, double epsilon) {
  if (!(c > 0.0) || !(epsilon > 0.0) || !std::isfinite(c) ||
      !std::isfinite(epsilon)) {
    throw FedFairError(ErrorCode::kInvalidArgument,
                       "tightness search needs finite c > 0 and epsilon > 0");
  }
  TightnessResult result;
  result.bound = 2.0 * c + 1.0;
  const double target = result.bound - epsilon;
  double mu_e = std::max(1.0, 1.0 / c);  // keeps n_l >= n_s = 1
  double previous = -std::numeric_limits<double>::infinity();
  for (int doublings = 0; doublings < 1100; ++doublings, mu_e *= 2.0) {
    const PopulationParams params{mu_e, 1.0};
    const double n_large = c * mu_e;
    const double ratio = error_ratio(two_players(1.0, n_large), "s", "l",
                                     FederationMethod::kUniform, params);
    if (ratio < previous) {
      std::ostringstream msg;
      msg << "uniform ratio decreased from " << previous << " to " << ratio
          << " at mu_e = " << mu_e;
      throw std::logic_error(msg.str());
    }
    previous = ratio;
    if (ratio >= target) {
      result.params = params;
      result.n_large = n_large;
      result.ratio = ratio;
      result.doublings = doublings;
      return result;
    }
  }
  throw std::logic_error("tightness search did not reach 2c + 1 - epsilon");
}

std::vector<BoundSweepResult> verify_egalitarian_bound(
    std::size_t instances, std::uint64_t seed,
    std::span<const FederationMethod> methods, unsigned threads) {
  struct Outcome {
    Scenario scenario;
    std::vector<FairnessAudit> audits;
  };
  std::vector<std::optional<Outcome>> outcomes(instances);
  parallel_for(instances, threads, [&](std::size_t i) {
    Outcome outcome{draw_random_scenario(seed, i), {}};
    for (FederationMethod m : methods) {
      outcome.audits.push_back(audit_egalitarian(outcome.scenario.coalition, m,
                                                 outcome.scenario.params));
    }
    outcomes[i] = std::move(outcome);
  });

  std::vector<BoundSweepResult> results;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    BoundSweepResult r;
    r.method = methods[m];
    r.instances = instances;
    r.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < instances; ++i) {
      const FairnessAudit& audit = outcomes[i]->audits[m];
      r.min_ratio = std::min(r.min_ratio, audit.max_ratio);
      r.max_quotient = std::max(r.max_quotient, audit.max_ratio / audit.bound);
      if (audit.max_ratio < 1.0 - kRatioLowerSlack ||
          audit.max_ratio > audit.bound + kBoundSlack) {
        r.violations.push_back(BoundViolation{i, outcomes[i]->scenario,
                                              audit.max_ratio, audit.bound});
      }
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace fedfair
