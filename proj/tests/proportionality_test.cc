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

#include <gtest/gtest.h>

#include "fedfair/expected_error.h"
#include "fedfair/random.h"
#include "fedfair/tolerance.h"

namespace fedfair {
namespace {

const PopulationParams kTable{10.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

Coalition pair(double ns, double nl) {
  return Coalition({Player{"s", ns}, Player{"l", nl}});
}

TEST(ProportionalityTest, MotivatingRows) {
  EXPECT_EQ(classify_proportionality(pair(6, 20), FederationMethod::kUniform, kTable).label,
            CoalitionLabel::kSub);
  EXPECT_EQ(classify_proportionality(pair(6, 30), FederationMethod::kUniform, kTable).label,
            CoalitionLabel::kExact);
  EXPECT_EQ(classify_proportionality(pair(6, 40), FederationMethod::kUniform, kTable).label,
            CoalitionLabel::kSuper);
  const auto r = classify_proportionality(pair(6, 20), FederationMethod::kUniform, kTable);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].smaller, "s");
  EXPECT_NEAR(r.pairs[0].scaled_smaller, 6 * 265.0 / 169.0, 1e-12);
}

TEST(ProportionalityTest, LocalIsExactAndSingletonExact) {
  const Coalition c = Coalition::from_sizes({3, 8, 50});
  EXPECT_EQ(classify_proportionality(c, FederationMethod::kLocal, kTable).label,
            CoalitionLabel::kExact);
  EXPECT_EQ(classify_proportionality(Coalition::from_sizes({4}),
                                     FederationMethod::kUniform, kTable)
                .label,
            CoalitionLabel::kExact);
}

TEST(ProportionalityTest, MixedLabel) {
  // A far larger third player turns some pairs super while (6, mid) stays sub.
  bool saw_mixed = false;
  for (double mid : {10.0, 20.0, 25.0}) {
    const Coalition c = Coalition::from_sizes({6, mid, 200});
    const auto r = classify_proportionality(c, FederationMethod::kUniform, kTable);
    bool sub = false, super = false;
    for (const auto& p : r.pairs) {
      sub = sub || p.cls == ProportionalityClass::kSub;
      super = super || p.cls == ProportionalityClass::kSuper;
    }
    if (sub && super) {
      EXPECT_EQ(r.label, CoalitionLabel::kMixed);
      saw_mixed = true;
    }
  }
  EXPECT_TRUE(saw_mixed);
}

TEST(RationalityTest, MotivatingRows) {
  const auto r40 = individually_rational(pair(6, 40), FederationMethod::kUniform, kTable);
  EXPECT_FALSE(r40.individually_rational);
  EXPECT_TRUE(r40.players[1].prefers_local);
  EXPECT_DOUBLE_EQ(r40.players[1].local_error, 0.25);
  EXPECT_GT(r40.players[1].coalition_error, 0.2514);

  const auto r20 = individually_rational(pair(6, 20), FederationMethod::kUniform, kTable);
  EXPECT_TRUE(r20.individually_rational);

  const auto r30 = individually_rational(pair(6, 30), FederationMethod::kUniform, kTable);
  EXPECT_TRUE(r30.individually_rational);
  EXPECT_TRUE(r30.players[1].indifferent);
  EXPECT_FALSE(r30.players[1].prefers_local);
}

TEST(RationalityTest, FineGrainedAlwaysRational) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Scenario s = draw_random_scenario(1, i);
    EXPECT_TRUE(individually_rational(s.coalition, FederationMethod::kFineGrained,
                                      s.params)
                    .individually_rational);
  }
}

TEST(ThresholdTest, Examples) {
  const Coalition six = Coalition::from_sizes({6});
  EXPECT_NEAR(defection_threshold(six, kTable), 30.0, 1e-9);
  EXPECT_NEAR(subproportionality_threshold(six, "p0", kTable), 30.0, 1e-9);
  EXPECT_EQ(defection_threshold(Coalition::from_sizes({1}), kTable), kInf);
  EXPECT_EQ(subproportionality_threshold(Coalition::from_sizes({5}), "p0", kTable), kInf);
  EXPECT_EQ(defection_threshold(Coalition::from_sizes({5}), kTable), kInf);

  const Coalition two = Coalition::from_sizes({6, 6});
  const double d = defection_threshold(two, kTable);
  const double sp = subproportionality_threshold(two, "p0", kTable);
  EXPECT_NEAR(d, 15.0, 1e-9);
  EXPECT_NEAR(sp, 96.0, 1e-9);
  EXPECT_LT(d, sp);
}

// The defection threshold is where the joining player's uniform error meets
// its local error; the sub-proportionality one is where n_s err_s = n_l err_l.
TEST(ThresholdTest, BoundariesByBisection) {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Scenario s = draw_random_scenario(
        31, i, RandomScenarioConfig{1, 4, 1, 100, 0.01, 50});
    const Coalition& rest = s.coalition;
    const PopulationParams& p = s.params;
    const double d = defection_threshold(rest, p);
    auto gain = [&](double nl) {
      const Coalition joined = rest.with(Player{"joiner", nl});
      return uniform_error(joined, "joiner", p) - p.mu_e / nl;
    };
    if (std::isfinite(d)) {
      EXPECT_NEAR(gain(d), 0.0, 1e-9 * p.mu_e / d + 1e-12);
      EXPECT_LT(gain(d * 0.9), 0.0);
      EXPECT_GT(gain(d * 1.1), 0.0);
    } else {
      EXPECT_LE(gain(1e6), 1e-12);
    }
    const std::string& sid = rest[0].id;
    const double sp = subproportionality_threshold(rest, sid, p);
    auto scaled_gap = [&](double nl) {
      const Coalition joined = rest.with(Player{"joiner", nl});
      return nl * uniform_error(joined, "joiner", p) -
             rest[0].n * uniform_error(joined, sid, p);
    };
    if (std::isfinite(sp) && sp > rest[0].n) {
      EXPECT_NEAR(scaled_gap(sp), 0.0, 1e-8 * sp * p.mu_e / sp + 1e-9);
    }
    if (std::isfinite(sp)) EXPECT_LE(d, sp * (1 + 1e-12));
  }
}

TEST(PropstabTest, InstanceExamples) {
  const auto c40 = check_propstab_instance(Scenario{kTable, pair(6, 40)});
  EXPECT_FALSE(c40.individually_rational);
  EXPECT_TRUE(c40.counterexamples.empty());
  const auto c30 = check_propstab_instance(Scenario{kTable, pair(6, 30)});
  EXPECT_TRUE(c30.individually_rational);
  EXPECT_TRUE(c30.counterexamples.empty());
}

TEST(PropstabTest, SweepPassesAndIsThreadIndependent) {
  const PropstabVerdict a = verify_propstab(2000, 42, 1);
  const PropstabVerdict b = verify_propstab(2000, 42, 3);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.instances, 2000u);
  EXPECT_EQ(a.individually_rational, b.individually_rational);
  EXPECT_EQ(a.threshold_checks, b.threshold_checks);
  EXPECT_GT(a.finite_threshold_checks, 0u);
}

}  // namespace
}  // namespace fedfair
