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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fedfair/cli/commands.h"
#include "fedfair/egalitarian.h"
#include "fedfair/expected_error.h"
#include "fedfair/montecarlo.h"
#include "fedfair/proportionality.h"
#include "fedfair/random.h"
#include "fedfair/tolerance.h"

namespace fedfair {
namespace {

struct Verdict {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int run_cli(std::vector<std::string> args, std::string* out = nullptr,
            std::string* err = nullptr) {
  args.insert(args.begin(), "fedfair");
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

Verdict table_reproduction() {
  Verdict v;
  std::string err;
  const int code = run_cli({"reproduce", "motivating"}, nullptr, &err);
  v.require(code == 0, "exit " + std::to_string(code));
  std::istringstream lines(err);
  for (std::string line; std::getline(lines, line);) v.require(false, line);
  return v;
}

Verdict local_federated_boundary() {
  Verdict v;
  const PopulationParams p{10, 1};
  const Coalition c40({Player{"s", 6}, Player{"l", 40}});
  const double fed40 = uniform_error(c40, "l", p);
  const double loc40 = local_error(c40.at("l"), p);
  v.require(loc40 == 0.25, "local error at 40 is " + num(loc40));
  v.require(loc40 < fed40, "local " + num(loc40) + " not below federated " + num(fed40));
  v.require(std::fabs(fed40 - 0.2514) < 5e-5, "federated error at 40 is " + num(fed40));
  v.require(!individually_rational(c40, FederationMethod::kUniform, p).individually_rational,
            "n_l=40 reported IR");
  const Coalition c30({Player{"s", 6}, Player{"l", 30}});
  const double gap30 = uniform_error(c30, "l", p) - local_error(c30.at("l"), p);
  v.require(std::fabs(gap30) <= 1e-9, "n_l=30 gap " + num(gap30));
  v.require(individually_rational(c30, FederationMethod::kUniform, p).individually_rational,
            "n_l=30 reported not IR");
  return v;
}

Verdict bound_sweep() {
  Verdict v;
  const std::array<FederationMethod, 2> methods = {FederationMethod::kUniform,
                                                   FederationMethod::kFineGrained};
  for (const BoundSweepResult& r : verify_egalitarian_bound(10000, 42, methods)) {
    v.require(r.instances == 10000, "instance count");
    v.require(r.violations.empty(), std::string(to_string(r.method)) + ": " +
                                        std::to_string(r.violations.size()) +
                                        " violations");
    v.require(r.min_ratio >= 1.0 - 1e-12, "min ratio " + num(r.min_ratio));
  }
  // Independent recount of the same instances from the closed forms.
  std::size_t violations = 0;
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const Scenario s = draw_random_scenario(42, i);
    const double c = s.coalition.max_size() * s.params.sigma_sq / s.params.mu_e;
    for (auto m : {FederationMethod::kUniform, FederationMethod::kFineGrained}) {
      double hi = 0, lo = INFINITY;
      for (const Player& p : s.coalition.players()) {
        const double e = error(s.coalition, p.id, m, s.params);
        hi = std::max(hi, e);
        lo = std::min(lo, e);
      }
      const double ratio = hi / lo;
      if (ratio < 1.0 - 1e-12 || ratio > 2 * c + 1 + 1e-9) ++violations;
    }
  }
  v.require(violations == 0, std::to_string(violations) + " recount violations");
  return v;
}

Verdict tightness() {
  Verdict v;
  auto pair_ratio = [](const TightnessResult& r) {
    const double ns = r.n_small, nl = r.n_large, mu = r.params.mu_e,
                 s2 = r.params.sigma_sq;
    return (mu * (ns + nl) + 2 * s2 * nl * nl) / (mu * (ns + nl) + 2 * s2 * ns * ns);
  };
  const TightnessResult a = tightness_search(2, 0.01);
  const double ra = pair_ratio(a);
  v.require(ra >= 4.99 && ra <= 5.0, "c=2 ratio " + num(ra));
  const TightnessResult b = tightness_search(4, 0.1);
  const double rb = pair_ratio(b);
  v.require(rb >= 8.9 && rb <= 9.0, "c=4 ratio " + num(rb));
  return v;
}

Verdict modularity() {
  Verdict v;
  std::string err;
  const int code = run_cli({"verify", "modularity"}, nullptr, &err);
  v.require(code == 0, "exit " + std::to_string(code));
  const ModularityGrid grid = default_modularity_grid();
  for (auto m : {FederationMethod::kUniform, FederationMethod::kFineGrained}) {
    const ModularityReport r = check_modularity(m, grid);
    for (const PropertyCheck& p : r.properties) {
      if (p.passed) continue;
      std::string what = std::string(to_string(m)) + " P" + std::to_string(p.property);
      if (p.counterexample) {
        const auto& c = *p.counterexample;
        what += " at sizes (" + num(c.sizes[0]) + ", " + num(c.sizes[1]) + ") mu_e=" +
                num(c.params.mu_e) + " sigma_sq=" + num(c.params.sigma_sq) +
                ": observed " + num(c.observed) + " vs " + num(c.reference);
      }
      v.require(false, what);
    }
  }
  const ModularityReport bad = check_modularity(inverse_weight_error, "inverse_weight", grid);
  v.require(!bad.properties[0].passed && bad.properties[0].counterexample.has_value(),
            "inverse-weight method not caught by P1");
  return v;
}

Verdict propstab() {
  Verdict v;
  std::string out;
  const int code = run_cli({"verify", "propstab", "--instances", "10000", "--seed", "42",
                            "--format", "json"},
                           &out);
  v.require(code == 0, "exit " + std::to_string(code));
  const PropstabVerdict r = verify_propstab(10000, 42);
  v.require(r.instances == 10000, "instance count");
  v.require(r.threshold_checks > 0 && r.finite_threshold_checks > 0, "no threshold checks");
  for (const auto& c : r.counterexamples) {
    v.require(false, c.kind + " at instance " + std::to_string(c.index));
  }
  return v;
}

Verdict fine_grained_consistency() {
  Verdict v;
  Xoshiro256 rng(20240607);
  std::size_t bad_consistency = 0, bad_dominance = 0, bad_optimality = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Scenario s = draw_random_scenario(42, i);
    const Coalition& c = s.coalition;
    for (const Player& p : c.players()) {
      const WeightVector w = fine_grained_weights(c, p.id, s.params);
      const double fg = fine_grained_error(c, p.id, s.params);
      const double at_w = weighted_error(c, w, s.params);
      if (relative_difference(fg, at_w) > 1e-9) ++bad_consistency;
      if (fg > std::min(local_error(p, s.params), uniform_error(c, p.id, s.params)) + 1e-12)
        ++bad_dominance;
      const auto base = w.aligned_to(c);
      for (int k = 0; k < 10; ++k) {
        std::vector<double> d(base.size());
        for (double& x : d) x = rng.uniform01() - 0.5;
        const double mean = std::accumulate(d.begin(), d.end(), 0.0) / d.size();
        const double magnitude = std::pow(10.0, -3.0 + 2.0 * rng.uniform01());
        WeightVector moved{p.id, {}};
        for (std::size_t q = 0; q < base.size(); ++q) {
          moved.weights[c[q].id] = base[q] + magnitude * (d[q] - mean);
        }
        if (weighted_error(c, moved, s.params) < at_w - 1e-12) ++bad_optimality;
      }
    }
  }
  v.require(bad_consistency == 0, std::to_string(bad_consistency) + " consistency");
  v.require(bad_dominance == 0, std::to_string(bad_dominance) + " dominance");
  v.require(bad_optimality == 0, std::to_string(bad_optimality) + " optimality");
  return v;
}

Verdict monte_carlo() {
  Verdict v;
  const auto cases = default_simulation_suite(1'000'000, 42, 0);
  const SuiteSummary s = simulate_suite(cases, 4.0);
  v.require(s.passed, "max |z| " + num(s.max_abs_z));
  for (const SuiteOutcome& o : s.outcomes) {
    if (!o.passed) v.require(false, o.label + " z=" + num(o.result.z_score));
  }
  // Repeat two cases at other thread counts; results must be bit-identical.
  for (std::size_t idx : {std::size_t{0}, cases.size() - 1}) {
    for (unsigned threads : {1u, 3u}) {
      SimulationSpec spec = cases[idx].spec;
      spec.threads = threads;
      const SimulationResult r = simulate_error(spec);
      v.require(r.empirical_mse == s.outcomes[idx].result.empirical_mse &&
                    r.standard_error == s.outcomes[idx].result.standard_error,
                cases[idx].label + " differs at " + std::to_string(threads) + " threads");
    }
  }
  v.detail += (v.detail.empty() ? "" : "; ") + std::to_string(cases.size()) +
              " cases, max |z| " + num(s.max_abs_z);
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Verdict()> check;
};

}  // namespace
}  // namespace fedfair

int main() {
  using namespace fedfair;
  // For criterion 8 the limit covers the whole check, including the repeated
  // determinism runs.
  const std::vector<Criterion> criteria = {
      {1, "table reproduction", 1.0, table_reproduction},
      {2, "local-vs-federated boundary", 1.0, local_federated_boundary},
      {3, "egalitarian bound sweep", 10.0, bound_sweep},
      {4, "tightness", 1.0, tightness},
      {5, "modularity", 10.0, modularity},
      {6, "proportional stability", 10.0, propstab},
      {7, "fine-grained consistency", 5.0, fine_grained_consistency},
      {8, "monte carlo oracle", 60.0, monte_carlo},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    v.require(seconds < c.time_limit_s, "over time limit");
    if (!v.passed) ++failures;
    std::printf("criterion %d %s: %s (%.2f s, limit %.0f s)%s%s\n", c.id, c.name,
                v.passed ? "PASS" : "FAIL", seconds, c.time_limit_s,
                v.detail.empty() ? "" : " - ", v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
