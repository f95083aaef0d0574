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

#ifndef FEDFAIR_CLI_COMMANDS_H_
#define FEDFAIR_CLI_COMMANDS_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fedfair/cli/report.h"
#include "fedfair/cli/scenario_file.h"
#include "fedfair/montecarlo.h"

namespace fedfair::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

// Full command line, args[0] being the program name. Returns the exit code:
// 0 success, 1 verification or self-test failure, 2 usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One row per player plus a coalition summary row.
ReportTable audit_report(const ScenarioFile& file);

struct ReproduceResult {
  ReportTable table;
  // "n_l=40 ratio: computed 6.88, published 6.89" style entries.
  std::vector<std::string> mismatches;
};

// Rebuilds the motivating two-player table (n_s = 6, n_l in {20, 30, 40},
// sigma_sq = 1) and compares every cell, rounded to three significant
// figures, with the published values. `mu_e` is exposed so tests can
// confirm a perturbed table is caught.
ReproduceResult reproduce_motivating(double mu_e = 10.0);

struct ScanRequest {
  double n_small = 6.0;
  double n_large_from = 20.0;
  double n_large_to = 40.0;
  double n_large_step = 10.0;
  PopulationParams params{10.0, 1.0};
};

// Throws FedFairError(kInvalidArgument) for an empty range or step <= 0.
ReportTable scan_report(const ScanRequest& request);

struct SimulateRequest {
  ScenarioFile file;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  MeanDistribution mean_distribution = MeanDistribution::kGaussian;
  double z_threshold = kDefaultZThreshold;
};

// One row per (player, method); `all_passed` is false when any |z| exceeds
// the threshold.
ReportTable simulate_report(const SimulateRequest& request, bool& all_passed);

}  // namespace fedfair::cli

#endif  // FEDFAIR_CLI_COMMANDS_H_
