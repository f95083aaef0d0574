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

#include <cmath>

#include <gtest/gtest.h>

#include "fedfair/random.h"
#include "fedfair/status.h"
#include "fedfair/tolerance.h"

namespace fedfair {
namespace {

const PopulationParams kTable{10.0, 1.0};

double uniform_pair_ratio(double ns, double nl, const PopulationParams& p) {
  return (p.mu_e * (ns + nl) + 2 * p.sigma_sq * nl * nl) /
         (p.mu_e * (ns + nl) + 2 * p.sigma_sq * ns * ns);
}

double fine_pair_ratio(double ns, double nl, const PopulationParams& p) {
  return (2 * p.sigma_sq * nl + p.mu_e) / (2 * p.sigma_sq * ns + p.mu_e);
}

TEST(ErrorRatioTest, Examples) {
  const Coalition c({Player{"s", 6}, Player{"l", 20}});
  EXPECT_NEAR(error_ratio(c, "s", "l", FederationMethod::kUniform, kTable),
              265.0 / 83.0, 1e-12);
  EXPECT_NEAR(error_ratio(c, "s", "l", FederationMethod::kFineGrained, kTable),
              50.0 / 22.0, 1e-12);
  const Coalition eq = Coalition::from_sizes({7, 7});
  for (auto m : {FederationMethod::kLocal, FederationMethod::kUniform,
                 FederationMethod::kFineGrained}) {
    EXPECT_DOUBLE_EQ(error_ratio(eq, "p0", "p1", m, kTable), 1.0);
  }
  try {
    error_ratio(c, "s", "l", FederationMethod::kLocal, {0, 1});
    ADD_FAILURE();
  } catch (const FedFairError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroDenominator);
  }
}

TEST(ErrorRatioTest, TwoPlayerClosedForms) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Scenario s = draw_random_scenario(
        13, i, RandomScenarioConfig{2, 2, 1, 100, 0.01, 50});
    const Coalition& c = s.coalition;
    const bool first_small = c[0].n <= c[1].n;
    const Player& sm = first_small ? c[0] : c[1];
    const Player& lg = first_small ? c[1] : c[0];
    const double u = error_ratio(c, sm.id, lg.id, FederationMethod::kUniform, s.params);
    const double f =
        error_ratio(c, sm.id, lg.id, FederationMethod::kFineGrained, s.params);
    EXPECT_LE(relative_difference(u, uniform_pair_ratio(sm.n, lg.n, s.params)), 1e-9);
    EXPECT_LE(relative_difference(f, fine_pair_ratio(sm.n, lg.n, s.params)), 1e-9);
  }
}

TEST(AuditTest, MotivatingRows) {
  const Coalition c20({Player{"s", 6}, Player{"l", 20}});
  const FairnessAudit a = audit_egalitarian(c20, FederationMethod::kUniform, kTable);
  EXPECT_NEAR(a.max_ratio, 265.0 / 83.0, 1e-12);
  EXPECT_EQ(a.worst_pair, (std::pair<PlayerId, PlayerId>{"s", "l"}));
  EXPECT_DOUBLE_EQ(a.c_value, 2.0);
  EXPECT_DOUBLE_EQ(a.bound, 5.0);
  EXPECT_TRUE(a.satisfied);

  const Coalition c40({Player{"s", 6}, Player{"l", 40}});
  const FairnessAudit b = audit_egalitarian(c40, FederationMethod::kUniform, kTable);
  // 915 / 133 = 6.8797, which is 6.88 to three figures.
  EXPECT_NEAR(b.max_ratio, 915.0 / 133.0, 1e-12);
  EXPECT_DOUBLE_EQ(b.bound, 9.0);
  EXPECT_TRUE(b.satisfied);
}

TEST(AuditTest, SingletonAndUndefined) {
  const Coalition one({Player{"solo", 3}});
  const FairnessAudit a = audit_egalitarian(one, FederationMethod::kUniform, kTable);
  EXPECT_EQ(a.max_ratio, 1.0);
  EXPECT_TRUE(a.satisfied);
  for (PopulationParams p : {PopulationParams{0, 1}, PopulationParams{1, 0}}) {
    try {
      audit_egalitarian(one, FederationMethod::kUniform, p);
      ADD_FAILURE();
    } catch (const FedFairError& e) {
      EXPECT_EQ(e.code(), ErrorCode::kUndefinedBound);
    }
  }
}

TEST(AuditTest, RandomInstancesRespectBound) {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const Scenario s = draw_random_scenario(77, i);
    for (auto m : {FederationMethod::kUniform, FederationMethod::kFineGrained}) {
      const FairnessAudit a = audit_egalitarian(s.coalition, m, s.params);
      const double c = s.coalition.max_size() * s.params.sigma_sq / s.params.mu_e;
      EXPECT_GE(a.max_ratio, 1.0 - 1e-12);
      EXPECT_LE(a.max_ratio, 2 * c + 1 + 1e-9);
      EXPECT_EQ(a.satisfied, a.max_ratio <= a.bound);
      EXPECT_DOUBLE_EQ(a.c_value, c);
    }
  }
}

TEST(BoundSweepTest, DeterministicAcrossThreads) {
  const std::array<FederationMethod, 2> methods = {FederationMethod::kUniform,
                                                   FederationMethod::kFineGrained};
  const auto one = verify_egalitarian_bound(3000, 42, methods, 1);
  const auto four = verify_egalitarian_bound(3000, 42, methods, 4);
  ASSERT_EQ(one.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_TRUE(one[i].passed());
    EXPECT_EQ(one[i].min_ratio, four[i].min_ratio);
    EXPECT_EQ(one[i].max_quotient, four[i].max_quotient);
    EXPECT_LT(one[i].max_quotient, 1.0);
    EXPECT_GE(one[i].min_ratio, 1.0);
  }
}

TEST(ModularityTest, BuiltinsOnDefaultGrid) {
  const ModularityGrid grid = default_modularity_grid();
  EXPECT_EQ(grid.sizes.size(), 6u);
  EXPECT_EQ(grid.params.size(), 9u);
  const ModularityReport u = check_modularity(FederationMethod::kUniform, grid);
  for (const PropertyCheck& p : u.properties) {
    EXPECT_TRUE(p.passed) << "uniform P" << p.property;
    EXPECT_GT(p.checks, 0u);
  }
  const ModularityReport f = check_modularity(FederationMethod::kFineGrained, grid);
  for (int k = 0; k < 4; ++k) {
    EXPECT_TRUE(f.properties[k].passed) << "fine_grained P" << k + 1;
  }
}

// At n_s = 1e-6 n_l the fine-grained pair ratio sits 2 sigma_sq n_s / mu_e
// below its limit, so the pinned limit check can only pass where that gap is
// under 1e-3.
TEST(ModularityTest, FineGrainedLimitGapIsAnalytic) {
  const ModularityGrid grid = default_modularity_grid();
  const ModularityReport f = check_modularity(FederationMethod::kFineGrained, grid);
  bool expect_pass = true;
  for (const PopulationParams& p : grid.params) {
    for (double nl : grid.sizes) {
      const double ns = kLimitSizeRatio * nl;
      const double limit = 1 + 2 * p.sigma_sq * nl / p.mu_e;
      const double gap = relative_difference(fine_pair_ratio(ns, nl, p), limit);
      expect_pass = expect_pass && gap <= kLimitTolerance;
    }
  }
  EXPECT_EQ(f.properties[4].passed, expect_pass);
  EXPECT_FALSE(expect_pass);
}

TEST(ModularityTest, InverseWeightFailsOrdering) {
  const ModularityReport r = check_modularity(inverse_weight_error, "inverse_weight",
                                              default_modularity_grid());
  ASSERT_FALSE(r.properties[0].passed);
  ASSERT_TRUE(r.properties[0].counterexample.has_value());
  const ModularityCounterexample& c = *r.properties[0].counterexample;
  EXPECT_GT(c.observed, 0.0);
  EXPECT_FALSE(r.all_passed());
}

TEST(ModularityTest, InverseWeightErrorByHand) {
  // Weights (T - n_i) / ((N - 1) T) on {1, 3}: v = (3/4, 1/4).
  const Coalition c = Coalition::from_sizes({1, 3});
  const PopulationParams p{2, 1};
  const double want_small = 2 * (0.75 * 0.75 / 1 + 0.25 * 0.25 / 3) + 0.25 * 0.25 * 2;
  const double want_large = 2 * (0.75 * 0.75 / 1 + 0.25 * 0.25 / 3) + 0.75 * 0.75 * 2;
  EXPECT_NEAR(inverse_weight_error(c, "p0", p), want_small, 1e-12);
  EXPECT_NEAR(inverse_weight_error(c, "p1", p), want_large, 1e-12);
}

TEST(TightnessTest, Examples) {
  const TightnessResult r2 = tightness_search(2, 0.01);
  EXPECT_GE(r2.ratio, 4.99);
  EXPECT_LE(r2.ratio, 5.0);
  EXPECT_DOUBLE_EQ(r2.n_small, 1.0);
  EXPECT_DOUBLE_EQ(r2.params.sigma_sq, 1.0);
  EXPECT_DOUBLE_EQ(r2.n_large, 2 * r2.params.mu_e);
  EXPECT_NEAR(r2.ratio, uniform_pair_ratio(1, r2.n_large, r2.params), 1e-9 * r2.ratio);

  const TightnessResult r4 = tightness_search(4, 0.1);
  EXPECT_GE(r4.ratio, 8.9);
  EXPECT_LE(r4.ratio, 9.0);
  const Coalition c({Player{"s", r4.n_small}, Player{"l", r4.n_large}});
  EXPECT_DOUBLE_EQ(audit_egalitarian(c, FederationMethod::kUniform, r4.params).bound,
                   9.0);

  const TightnessResult r1 = tightness_search(1, 2);
  EXPECT_GE(r1.ratio, 1.0);
}

TEST(TightnessTest, NeverExceedsBound) {
  for (double c : {0.05, 0.5, 1.0, 3.0, 10.0, 100.0}) {
    for (double eps : {1.0, 0.1, 0.01}) {
      const TightnessResult r = tightness_search(c, eps);
      EXPECT_LE(r.ratio, 2 * c + 1);
      EXPECT_GE(r.ratio, 2 * c + 1 - eps);
    }
  }
  EXPECT_THROW(tightness_search(0, 1), FedFairError);
  EXPECT_THROW(tightness_search(1, -1), FedFairError);
}

}  // namespace
}  // namespace fedfair
