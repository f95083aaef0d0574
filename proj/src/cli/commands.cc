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

#include "fedfair/cli/commands.h"

#include <array>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "fedfair/egalitarian.h"
#include "fedfair/expected_error.h"
#include "fedfair/proportionality.h"
#include "fedfair/random.h"
#include "fedfair/status.h"

namespace fedfair::cli {

using nlohmann::json;

namespace {

constexpr std::array<FederationMethod, 3> kAllMethods = {
    FederationMethod::kLocal, FederationMethod::kUniform,
    FederationMethod::kFineGrained};

json scenario_json(const Scenario& scenario) {
  json players = json::array();
  for (const Player& p : scenario.coalition.players()) {
    players.push_back({{"id", p.id}, {"n", p.n}});
  }
  return {{"mu_e", scenario.params.mu_e},
          {"sigma_sq", scenario.params.sigma_sq},
          {"players", players}};
}

std::string join_sizes(const std::vector<double>& sizes) {
  std::string out;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += ' ';
    out += format_full(sizes[i]);
  }
  return out;
}

// Counterexamples go into the JSON document, or one JSON line each on the
// error stream for the text formats.
void emit_counterexamples(const json& list, OutputFormat format,
                          ReportTable& table, std::ostream& err) {
  if (list.empty()) return;
  if (format == OutputFormat::kJson) {
    table.extra["counterexamples"] = list;
    return;
  }
  for (const json& c : list) err << "counterexample: " << c.dump() << '\n';
}

}  // namespace

ReportTable audit_report(const ScenarioFile& file) {
  const Coalition& coalition = file.scenario.coalition;
  const PopulationParams& params = file.scenario.params;
  const FederationMethod method = file.method;

  ReportTable table;
  table.command = "audit";
  table.columns = {"row", "id", "n", "method", "error", "local_error",
                   "prefers_local", "max_ratio", "worst_numerator",
                   "worst_denominator", "c", "bound", "egalitarian_satisfied",
                   "proportionality", "individually_rational"};

  const RationalityReport ir = individually_rational(coalition, method, params);
  for (std::size_t i = 0; i < coalition.size(); ++i) {
    const PlayerRationality& p = ir.players[i];
    table.add_row({std::string("player"), p.id, coalition[i].n,
                   std::string(to_string(method)), p.coalition_error,
                   p.local_error, p.prefers_local});
  }

  const ProportionalityReport prop =
      classify_proportionality(coalition, method, params);
  std::vector<Cell> summary = {std::string("coalition"), Cell{}, coalition.total(),
                               std::string(to_string(method)), Cell{}, Cell{},
                               Cell{}};
  try {
    const FairnessAudit audit = audit_egalitarian(coalition, method, params);
    summary.insert(summary.end(),
                   {audit.max_ratio, audit.worst_pair.first,
                    audit.worst_pair.second, audit.c_value, audit.bound,
                    audit.satisfied});
  } catch (const FedFairError& e) {
    if (e.code() != ErrorCode::kUndefinedBound &&
        e.code() != ErrorCode::kZeroDenominator) {
      throw;
    }
    summary.insert(summary.end(), {Cell{}, Cell{}, Cell{}, Cell{}, Cell{},
                                   std::string("undefined")});
  }
  summary.push_back(std::string(to_string(prop.label)));
  summary.push_back(ir.individually_rational);
  table.add_row(std::move(summary));
  return table;
}

ReproduceResult reproduce_motivating(double mu_e) {
  // Published cells, rows n_l = 20, 30, 40:
  // err_s, err_l, err_s / err_l, 2c + 1, n_l / n_s.
  static const std::array<std::array<const char*, 5>, 3> kPublished = {{
      {"1.57", "0.491", "3.19", "5", "3.33"},
      {"1.67", "0.333", "5", "7", "5"},
      {"1.73", "0.251", "6.89", "9", "6.67"},
  }};
  static const std::array<const char*, 5> kCellNames = {
      "err_s", "err_l", "ratio", "bound", "size_ratio"};

  ReproduceResult result;
  result.table.command = "reproduce";
  result.table.columns = {"n_l", "err_s", "err_l", "ratio", "bound",
                          "size_ratio"};
  const PopulationParams params{mu_e, 1.0};
  const double n_small = 6.0;
  const std::array<double, 3> large_sizes = {20.0, 30.0, 40.0};
  for (std::size_t row = 0; row < large_sizes.size(); ++row) {
    const Coalition pair({Player{"s", n_small}, Player{"l", large_sizes[row]}});
    const std::array<double, 5> values = {
        uniform_error(pair, "s", params),
        uniform_error(pair, "l", params),
        error_ratio(pair, "s", "l", FederationMethod::kUniform, params),
        audit_egalitarian(pair, FederationMethod::kUniform, params).bound,
        large_sizes[row] / n_small,
    };
    result.table.add_row({large_sizes[row], values[0], values[1], values[2],
                          values[3], values[4]});
    for (std::size_t c = 0; c < values.size(); ++c) {
      const std::string computed = format_3sf(values[c]);
      if (computed != kPublished[row][c]) {
        result.mismatches.push_back(
            "n_l=" + format_full(large_sizes[row]) + " " + kCellNames[c] +
            ": computed " + computed + " (" + format_full(values[c]) +
            "), published " + kPublished[row][c]);
      }
    }
  }
  return result;
}

ReportTable scan_report(const ScanRequest& request) {
  if (!(request.n_large_step > 0.0) ||
      request.n_large_from > request.n_large_to) {
    throw FedFairError(ErrorCode::kInvalidArgument,
                       "scan range is empty (need step > 0 and from <= to)");
  }
  validate_params(request.params);
  ReportTable table;
  table.command = "scan";
  table.columns = {"n_s", "n_l", "err_s", "err_l", "ratio", "bound",
                   "size_ratio", "proportionality", "individually_rational",
                   "defection_threshold", "subproportionality_threshold"};

  const Coalition rest({Player{"s", request.n_small}});
  const double defect = defection_threshold(rest, request.params);
  const double subprop = subproportionality_threshold(rest, "s", request.params);
  const double span = request.n_large_to - request.n_large_from;
  const auto steps =
      static_cast<std::uint64_t>(std::floor(span / request.n_large_step + 1e-9));
  for (std::uint64_t k = 0; k <= steps; ++k) {
    const double n_l =
        request.n_large_from + static_cast<double>(k) * request.n_large_step;
    const Coalition pair({Player{"s", request.n_small}, Player{"l", n_l}});
    const PopulationParams& params = request.params;
    const double err_s = uniform_error(pair, "s", params);
    const double err_l = uniform_error(pair, "l", params);
    Cell ratio = err_l > 0.0 ? Cell{err_s / err_l} : Cell{};
    Cell bound;
    if (params.mu_e > 0.0 && params.sigma_sq > 0.0) {
      bound = audit_egalitarian(pair, FederationMethod::kUniform, params).bound;
    }
    const auto prop =
        classify_proportionality(pair, FederationMethod::kUniform, params);
    const auto ir = individually_rational(pair, FederationMethod::kUniform, params);
    table.add_row({request.n_small, n_l, err_s, err_l, ratio, bound,
                   n_l / request.n_small, std::string(to_string(prop.label)),
                   ir.individually_rational, defect, subprop});
  }
  return table;
}

ReportTable simulate_report(const SimulateRequest& request, bool& all_passed) {
  const Scenario& scenario = request.file.scenario;
  ReportTable table;
  table.command = "simulate";
  table.columns = {"id", "n", "method", "mean_distribution", "trials",
                   "empirical_mse", "standard_error", "closed_form", "z_score",
                   "passed"};
  all_passed = true;
  std::uint64_t index = 0;
  for (const Player& p : scenario.coalition.players()) {
    for (FederationMethod method : kAllMethods) {
      SimulationSpec spec{scenario.coalition,
                          p.id,
                          method,
                          scenario.params,
                          request.mean_distribution,
                          ConstantNoise{},
                          request.trials,
                          substream_seed(request.seed, index++),
                          request.threads};
      const SimulationResult r = simulate_error(spec);
      const bool passed = std::fabs(r.z_score) <= request.z_threshold;
      all_passed = all_passed && passed;
      table.add_row({p.id, p.n, std::string(to_string(method)),
                     std::string(to_string(request.mean_distribution)),
                     r.trials, r.empirical_mse, r.standard_error, r.closed_form,
                     r.z_score, passed});
    }
  }
  return table;
}

namespace {

struct VerifyOutcome {
  ReportTable table;
  bool passed = true;
};

std::vector<FederationMethod> selected_methods(const std::string& name) {
  if (name == "all") {
    return {FederationMethod::kUniform, FederationMethod::kFineGrained};
  }
  return {*parse_federation_method(name)};
}

VerifyOutcome verify_modularity(const std::vector<FederationMethod>& methods,
                                OutputFormat format, std::ostream& err) {
  VerifyOutcome outcome;
  ReportTable& table = outcome.table;
  table.command = "verify modularity";
  table.columns = {"method", "expected", "property", "description", "checks",
                   "passed", "counterexample_sizes", "counterexample_mu_e",
                   "counterexample_sigma_sq", "counterexample_detail",
                   "observed", "reference"};
  const ModularityGrid grid = default_modularity_grid();
  json counterexamples = json::array();

  auto add_report = [&](const ModularityReport& report, bool expect_modular) {
    for (const PropertyCheck& p : report.properties) {
      std::vector<Cell> row = {report.method_name,
                               std::string(expect_modular ? "modular"
                                                          : "not_modular"),
                               static_cast<std::uint64_t>(p.property),
                               p.description,
                               static_cast<std::uint64_t>(p.checks),
                               p.passed};
      if (p.counterexample) {
        const ModularityCounterexample& c = *p.counterexample;
        row.insert(row.end(), {join_sizes(c.sizes), c.params.mu_e,
                               c.params.sigma_sq, c.detail, c.observed,
                               c.reference});
        counterexamples.push_back({{"method", report.method_name},
                                   {"property", p.property},
                                   {"sizes", c.sizes},
                                   {"mu_e", c.params.mu_e},
                                   {"sigma_sq", c.params.sigma_sq},
                                   {"detail", c.detail},
                                   {"observed", c.observed},
                                   {"reference", c.reference}});
      }
      table.add_row(std::move(row));
    }
  };

  for (FederationMethod m : methods) {
    const ModularityReport report = check_modularity(m, grid);
    outcome.passed = outcome.passed && report.all_passed();
    add_report(report, true);
  }
  // Calibration: the inverse-weight method must be caught by property 1.
  const ModularityReport adversarial =
      check_modularity(inverse_weight_error, "inverse_weight", grid);
  const bool caught = !adversarial.properties[0].passed &&
                      adversarial.properties[0].counterexample.has_value();
  if (!caught) {
    err << "calibration failure: inverse-weight method passed property 1\n";
  }
  outcome.passed = outcome.passed && caught;
  add_report(adversarial, false);
  // Only counterexamples of methods expected to be modular are failures;
  // the calibration ones are reported with the rest.
  emit_counterexamples(counterexamples, format, table, err);
  return outcome;
}

VerifyOutcome verify_bound(std::size_t instances, std::uint64_t seed,
                           const std::vector<FederationMethod>& methods,
                           unsigned threads, OutputFormat format,
                           std::ostream& err) {
  VerifyOutcome outcome;
  ReportTable& table = outcome.table;
  table.command = "verify egalitarian-bound";
  table.columns = {"method", "instances", "seed", "min_ratio", "max_quotient",
                   "violations", "passed"};
  json counterexamples = json::array();
  const auto results = verify_egalitarian_bound(instances, seed, methods, threads);
  for (const BoundSweepResult& r : results) {
    outcome.passed = outcome.passed && r.passed();
    table.add_row({std::string(to_string(r.method)),
                   static_cast<std::uint64_t>(r.instances), seed, r.min_ratio,
                   r.max_quotient, static_cast<std::uint64_t>(r.violations.size()),
                   r.passed()});
    for (const BoundViolation& v : r.violations) {
      counterexamples.push_back({{"method", std::string(to_string(r.method))},
                                 {"index", v.index},
                                 {"max_ratio", v.max_ratio},
                                 {"bound", v.bound},
                                 {"scenario", scenario_json(v.scenario)}});
    }
  }
  emit_counterexamples(counterexamples, format, table, err);
  return outcome;
}

VerifyOutcome verify_propstab_suite(std::size_t instances, std::uint64_t seed,
                                    unsigned threads, OutputFormat format,
                                    std::ostream& err) {
  VerifyOutcome outcome;
  ReportTable& table = outcome.table;
  table.command = "verify propstab";
  table.columns = {"method", "instances", "seed", "individually_rational",
                   "threshold_checks", "finite_threshold_checks",
                   "counterexamples", "passed"};
  const PropstabVerdict verdict = verify_propstab(instances, seed, threads);
  outcome.passed = verdict.passed();
  table.add_row({std::string("uniform"),
                 static_cast<std::uint64_t>(verdict.instances), seed,
                 static_cast<std::uint64_t>(verdict.individually_rational),
                 static_cast<std::uint64_t>(verdict.threshold_checks),
                 static_cast<std::uint64_t>(verdict.finite_threshold_checks),
                 static_cast<std::uint64_t>(verdict.counterexamples.size()),
                 verdict.passed()});
  json counterexamples = json::array();
  for (const PropstabCounterexample& c : verdict.counterexamples) {
    counterexamples.push_back({{"index", c.index},
                               {"kind", c.kind},
                               {"detail", c.detail},
                               {"scenario", scenario_json(c.scenario)}});
  }
  emit_counterexamples(counterexamples, format, table, err);
  return outcome;
}

OutputFormat resolve_format(const std::string& name, OutputFormat fallback) {
  if (name.empty()) return fallback;
  return *parse_output_format(name);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Expected errors and fairness audits for federated mean "
               "estimation coalitions."};
  app.name(args.empty() ? "fedfair" : args[0]);
  app.require_subcommand(1);
  app.fallthrough();

  std::string format_name;
  std::uint64_t seed = 42;
  std::string out_path;
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  app.add_option("--seed", seed, "Master random seed");
  app.add_option("--out", out_path, "Write output here instead of stdout");

  auto* audit = app.add_subcommand("audit", "Audit a scenario file");
  std::string audit_path;
  bool audit_dump = false;
  audit->add_option("scenario", audit_path, "Scenario JSON file")->required();
  audit->add_flag("--dump-scenario", audit_dump,
                  "Print the parsed scenario as canonical JSON and exit");

  auto* reproduce = app.add_subcommand("reproduce", "Rebuild a reference table");
  std::string table_id;
  double inject_mu_e = 10.0;
  reproduce->add_option("table", table_id, "Table id (motivating)")->required();
  reproduce->add_option("--inject-mu-e", inject_mu_e)->group("");

  auto* verify = app.add_subcommand("verify", "Run a randomized verification suite");
  std::string suite;
  std::size_t instances = 10000;
  std::string verify_method = "all";
  unsigned threads = 0;
  verify->add_option("suite", suite, "modularity | propstab | egalitarian-bound")
      ->required()
      ->check(CLI::IsMember({"modularity", "propstab", "egalitarian-bound"}));
  verify->add_option("--instances", instances, "Number of random instances");
  verify->add_option("--method", verify_method, "uniform | fine_grained | all")
      ->check(CLI::IsMember({"uniform", "fine_grained", "all"}));
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of a scenario");
  std::string simulate_path;
  std::uint64_t trials = 1'000'000;
  std::string mean_distribution = "gaussian";
  double z_threshold = kDefaultZThreshold;
  bool simulate_dump = false;
  simulate->add_option("scenario", simulate_path, "Scenario JSON file")->required();
  simulate->add_option("--trials", trials, "Trials per (player, method)");
  simulate->add_option("--mean-distribution", mean_distribution)
      ->check(CLI::IsMember({"gaussian", "uniform"}));
  simulate->add_option("--z-threshold", z_threshold);
  simulate->add_option("--threads", threads, "Worker threads (0 = all cores)");
  simulate->add_flag("--dump-scenario", simulate_dump,
                     "Print the parsed scenario as canonical JSON and exit");

  auto* scan = app.add_subcommand("scan", "Sweep the large player's size");
  ScanRequest scan_request;
  scan->add_option("--n-s", scan_request.n_small)->required();
  scan->add_option("--n-l-from", scan_request.n_large_from)->required();
  scan->add_option("--n-l-to", scan_request.n_large_to)->required();
  scan->add_option("--n-l-step", scan_request.n_large_step)->required();
  scan->add_option("--mu-e", scan_request.params.mu_e)->required();
  scan->add_option("--sigma-sq", scan_request.params.sigma_sq)->required();

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("fedfair");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ofstream file_out;
  std::ostream* sink = &out;
  if (!out_path.empty()) {
    file_out.open(out_path);
    if (!file_out) {
      err << "error: cannot open output file '" << out_path << "'\n";
      return kExitUsage;
    }
    sink = &file_out;
  }

  try {
    if (*audit) {
      const ScenarioFile file = load_scenario(audit_path);
      if (audit_dump) {
        *sink << dump_scenario(file);
        return kExitOk;
      }
      write_report(audit_report(file), resolve_format(format_name, OutputFormat::kCsv),
                   *sink);
      return kExitOk;
    }
    if (*reproduce) {
      if (table_id != "motivating") {
        err << "error: unknown table id '" << table_id
            << "' (available: motivating)\n";
        return kExitUsage;
      }
      const ReproduceResult result = reproduce_motivating(inject_mu_e);
      write_report(result.table, resolve_format(format_name, OutputFormat::kTable),
                   *sink);
      for (const std::string& m : result.mismatches) err << "mismatch: " << m << '\n';
      return result.mismatches.empty() ? kExitOk : kExitVerificationFailed;
    }
    if (*verify) {
      const OutputFormat format = resolve_format(format_name, OutputFormat::kCsv);
      const auto methods = selected_methods(verify_method);
      VerifyOutcome outcome;
      if (suite == "modularity") {
        outcome = verify_modularity(methods, format, err);
      } else if (suite == "propstab") {
        outcome = verify_propstab_suite(instances, seed, threads, format, err);
      } else {
        outcome = verify_bound(instances, seed, methods, threads, format, err);
      }
      write_report(outcome.table, format, *sink);
      return outcome.passed ? kExitOk : kExitVerificationFailed;
    }
    if (*simulate) {
      ScenarioFile file = load_scenario(simulate_path);
      if (simulate_dump) {
        *sink << dump_scenario(file);
        return kExitOk;
      }
      SimulateRequest request{std::move(file)};
      request.trials = trials;
      request.seed = seed;
      request.threads = threads;
      request.mean_distribution = *parse_mean_distribution(mean_distribution);
      request.z_threshold = z_threshold;
      bool all_passed = true;
      const ReportTable table = simulate_report(request, all_passed);
      write_report(table, resolve_format(format_name, OutputFormat::kCsv), *sink);
      return all_passed ? kExitOk : kExitVerificationFailed;
    }
    if (*scan) {
      write_report(scan_report(scan_request),
                   resolve_format(format_name, OutputFormat::kCsv), *sink);
      return kExitOk;
    }
  } catch (const ScenarioParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FedFairError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fedfair::cli
