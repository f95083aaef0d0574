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

#include "fedfair/proportionality.h"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "fedfair/expected_error.h"
#include "fedfair/parallel.h"
#include "fedfair/random.h"
#include "fedfair/tolerance.h"

namespace fedfair {

std::string_view to_string(ProportionalityClass c) {
  switch (c) {
    case ProportionalityClass::kSub: return "Sub";
    case ProportionalityClass::kExact: return "Exact";
    case ProportionalityClass::kSuper: return "Super";
  }
  return "Unknown";
}

std::string_view to_string(CoalitionLabel label) {
  switch (label) {
    case CoalitionLabel::kSub: return "Sub";
    case CoalitionLabel::kExact: return "Exact";
    case CoalitionLabel::kSuper: return "Super";
    case CoalitionLabel::kMixed: return "Mixed";
  }
  return "Unknown";
}

ProportionalityReport classify_proportionality(const Coalition& coalition,
                                               FederationMethod method,
                                               const PopulationParams& params) {
  ProportionalityReport report;
  report.method = method;
  std::vector<double> scaled;
  scaled.reserve(coalition.size());
  for (const Player& p : coalition.players()) {
    scaled.push_back(p.n * error(coalition, p.id, method, params));
  }

  bool any_sub = false;
  bool any_super = false;
  for (std::size_t a = 0; a < coalition.size(); ++a) {
    for (std::size_t b = a + 1; b < coalition.size(); ++b) {
      std::size_t i = a, j = b;
      if (coalition[i].n > coalition[j].n) std::swap(i, j);
      PairClassification pair{coalition[i].id, coalition[j].id, scaled[i],
                              scaled[j], ProportionalityClass::kExact};
      const double tol = tolerance_for(scaled[i], scaled[j]);
      if (scaled[i] < scaled[j] - tol) {
        pair.cls = ProportionalityClass::kSub;
        any_sub = true;
      } else if (scaled[i] > scaled[j] + tol) {
        pair.cls = ProportionalityClass::kSuper;
        any_super = true;
      }
      report.pairs.push_back(std::move(pair));
    }
  }
  if (any_sub && any_super) {
    report.label = CoalitionLabel::kMixed;
  } else if (any_sub) {
    report.label = CoalitionLabel::kSub;
  } else if (any_super) {
    report.label = CoalitionLabel::kSuper;
  } else {
    report.label = CoalitionLabel::kExact;
  }
  return report;
}

RationalityReport individually_rational(const Coalition& coalition,
                                        FederationMethod method,
                                        const PopulationParams& params) {
  RationalityReport report;
  report.method = method;
  for (const Player& p : coalition.players()) {
    PlayerRationality row;
    row.id = p.id;
    row.coalition_error = error(coalition, p.id, method, params);
    row.local_error = local_error(p, params);
    const double tol = tolerance_for(row.coalition_error, row.local_error);
    row.prefers_local = row.coalition_error > row.local_error + tol;
    row.indifferent = std::fabs(row.coalition_error - row.local_error) <= tol;
    if (row.prefers_local) report.individually_rational = false;
    report.players.push_back(std::move(row));
  }
  return report;
}

double defection_threshold(const Coalition& rest, const PopulationParams& params) {
  const double total = rest.total();
  const double denom = params.sigma_sq * rest.sum_sq() / (total * total) +
                       params.sigma_sq - params.mu_e / total;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return params.mu_e / denom;
}

double subproportionality_threshold(const Coalition& rest, std::string_view s,
                                    const PopulationParams& params) {
  const double n_s = rest.at(s).n;
  const double local_s = params.mu_e / n_s;
  const double denom = 2.0 * params.sigma_sq - local_s;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  const double total = rest.total();
  const double numer = -2.0 * params.sigma_sq * total + local_s * total +
                       params.sigma_sq / n_s * (rest.sum_sq() + total * total);
  return numer / denom;
}

PropstabInstanceCheck check_propstab_instance(const Scenario& scenario,
                                              std::uint64_t index) {
  PropstabInstanceCheck out;
  const Coalition& coalition = scenario.coalition;
  const PopulationParams& params = scenario.params;
  auto flag = [&](std::string kind, std::string detail) {
    out.counterexamples.push_back(
        PropstabCounterexample{index, scenario, std::move(kind), std::move(detail)});
  };

  const RationalityReport ir =
      individually_rational(coalition, FederationMethod::kUniform, params);
  out.individually_rational = ir.individually_rational;
  if (ir.individually_rational) {
    const ProportionalityReport prop =
        classify_proportionality(coalition, FederationMethod::kUniform, params);
    if (prop.label != CoalitionLabel::kSub &&
        prop.label != CoalitionLabel::kExact) {
      flag("ir_not_subproportional",
           "individually rational coalition labelled " +
               std::string(to_string(prop.label)));
    }
  }

  if (coalition.size() < 2) return out;
  for (const Player& joiner : coalition.players()) {
    const Coalition rest = coalition.without(joiner.id);
    const double defect = defection_threshold(rest, params);
    for (const Player& s : rest.players()) {
      const double subprop = subproportionality_threshold(rest, s.id, params);
      ++out.threshold_checks;
      std::ostringstream detail;
      detail.precision(17);
      detail << "rest without '" << joiner.id << "', s = '" << s.id
             << "': defection " << defect << ", sub-proportionality "
             << subprop;
      if (rest.size() == 1) {
        if (!approx_equal(defect, subprop)) {
          flag("singleton_threshold_mismatch", detail.str());
        }
        continue;
      }
      if (std::isinf(subprop)) continue;
      ++out.finite_threshold_checks;
      if (!(defect < subprop)) flag("threshold_order", detail.str());
    }
  }
  return out;
}

PropstabVerdict verify_propstab(std::size_t instances, std::uint64_t seed,
                                unsigned threads) {
  std::vector<std::optional<PropstabInstanceCheck>> checks(instances);
  parallel_for(instances, threads, [&](std::size_t i) {
    checks[i] = check_propstab_instance(draw_random_scenario(seed, i), i);
  });
  PropstabVerdict verdict;
  verdict.instances = instances;
  for (auto& check : checks) {
    if (check->individually_rational) ++verdict.individually_rational;
    verdict.threshold_checks += check->threshold_checks;
    verdict.finite_threshold_checks += check->finite_threshold_checks;
    for (auto& c : check->counterexamples) {
      verdict.counterexamples.push_back(std::move(c));
    }
  }
  return verdict;
}

}  // namespace fedfair
