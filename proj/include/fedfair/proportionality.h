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

#ifndef FEDFAIR_PROPORTIONALITY_H_
#define FEDFAIR_PROPORTIONALITY_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fedfair/model.h"

namespace fedfair {

enum class ProportionalityClass { kSub, kExact, kSuper };
enum class CoalitionLabel { kSub, kExact, kSuper, kMixed };

std::string_view to_string(ProportionalityClass c);
std::string_view to_string(CoalitionLabel label);

// One unordered pair, oriented so that n_small <= n_large.
struct PairClassification {
  PlayerId smaller;
  PlayerId larger;
  double scaled_smaller = 0.0;  // n_small * err_small
  double scaled_larger = 0.0;   // n_large * err_large
  ProportionalityClass cls = ProportionalityClass::kExact;
};

struct ProportionalityReport {
  FederationMethod method = FederationMethod::kUniform;
  std::vector<PairClassification> pairs;
  // kExact when every pair is exact (including a singleton), kSub when all
  // pairs are sub or exact, kSuper when all are super or exact, else kMixed.
  CoalitionLabel label = CoalitionLabel::kExact;
};

// Compares n_i * err_i with n_j * err_j for every pair n_i <= n_j. Within a
// relative band of 1e-9 the pair is exact.
ProportionalityReport classify_proportionality(const Coalition& coalition,
                                               FederationMethod method,
                                               const PopulationParams& params);

struct PlayerRationality {
  PlayerId id;
  double coalition_error = 0.0;
  double local_error = 0.0;
  // Strict preference: coalition error above local error beyond tolerance.
  bool prefers_local = false;
  // Coalition and local error agree within tolerance.
  bool indifferent = false;
};

struct RationalityReport {
  FederationMethod method = FederationMethod::kUniform;
  std::vector<PlayerRationality> players;
  // Weak preference: no player strictly prefers local learning.
  bool individually_rational = true;
};

RationalityReport individually_rational(const Coalition& coalition,
                                        FederationMethod method,
                                        const PopulationParams& params);

// Least n_l at which a player joining `rest` under uniform federation weakly
// prefers local learning:
//   mu_e / (sigma_sq * sum n_i^2 / T^2 + sigma_sq - mu_e / T).
// +infinity when the denominator is <= 0 (no size ever defects).
double defection_threshold(const Coalition& rest, const PopulationParams& params);

// Least n_l at which the pair (s, l) violates sub-proportionality in
// rest + {l}:
//   (-2 sigma_sq T + (mu_e/n_s) T + (sigma_sq/n_s)(sum n_i^2 + T^2))
//     / (2 sigma_sq - mu_e/n_s).
// +infinity when n_s <= mu_e / (2 sigma_sq).
double subproportionality_threshold(const Coalition& rest, std::string_view s,
                                    const PopulationParams& params);

struct PropstabCounterexample {
  std::uint64_t index = 0;
  Scenario scenario;
  std::string kind;  // "ir_not_subproportional", "threshold_order", ...
  std::string detail;
};

struct PropstabVerdict {
  std::size_t instances = 0;
  std::size_t individually_rational = 0;
  std::size_t threshold_checks = 0;
  std::size_t finite_threshold_checks = 0;
  std::vector<PropstabCounterexample> counterexamples;

  bool passed() const { return counterexamples.empty(); }
};

// Over random instances (draw_random_scenario):
//  * every individually rational coalition under uniform federation is
//    labelled Sub or Exact;
//  * for every split of the coalition into a joining player l and the rest,
//    and every s in the rest, defection_threshold(rest) <=
//    subproportionality_threshold(rest, s); the two agree exactly when rest
//    is {s} alone and otherwise the defection threshold is strictly lower
//    whenever the sub-proportionality threshold is finite.
PropstabVerdict verify_propstab(std::size_t instances, std::uint64_t seed,
                                unsigned threads = 0);

struct PropstabInstanceCheck {
  bool individually_rational = false;
  std::size_t threshold_checks = 0;
  std::size_t finite_threshold_checks = 0;
  std::vector<PropstabCounterexample> counterexamples;
};

// The per-instance checks of verify_propstab on one scenario.
PropstabInstanceCheck check_propstab_instance(const Scenario& scenario,
                                              std::uint64_t index = 0);

}  // namespace fedfair

#endif  // FEDFAIR_PROPORTIONALITY_H_
