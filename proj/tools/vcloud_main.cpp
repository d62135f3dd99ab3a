// Copyright 2026 The vcloud Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// vcloud: build scenarios, solve placements, run sweeps and cross-checks.
//
// Exit codes: 0 optimal or success, 1 infeasible or failed check,
// 2 usage or validation error, 3 stopped at a limit with an incumbent.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vcloud/harness.hpp"
#include "vcloud/milp.hpp"
#include "vcloud/numeric.hpp"
#include "vcloud/power.hpp"
#include "vcloud/scenario.hpp"
#include "vcloud/solver.hpp"

namespace {

using namespace vcloud;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

struct ModelFlags {
  double cloud_energy_per_bit = ModelOptions{}.cloud_path_energy_per_bit;
  std::string provisioning{to_string(ModelOptions{}.cloud_provisioning)};
  std::string dsrc{to_string(ModelOptions{}.dsrc_medium)};

  void attach(CLI::App* app) {
    app->add_option("--cloud-energy-per-bit", cloud_energy_per_bit,
                    "J/bit charged on each edge-cloud core link")
        ->check(CLI::PositiveNumber);
    app->add_option("--cloud-provisioning", provisioning, "per_server or single_pool")
        ->check(CLI::IsMember({"per_server", "single_pool"}));
    app->add_option("--dsrc", dsrc, "per_link or shared")->check(CLI::IsMember({"per_link", "shared"}));
  }

  ModelOptions options() const {
    ModelOptions o;
    o.cloud_path_energy_per_bit = cloud_energy_per_bit;
    o.cloud_provisioning = parse_cloud_provisioning(provisioning);
    o.dsrc_medium = parse_dsrc_medium(dsrc);
    return o;
  }
};

struct Range {
  int first = 1;
  int last = 10;
};

Range parse_range(const std::string& text) {
  Range r;
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      r.first = r.last = std::stoi(text, &used);
      if (used != text.size()) throw InputError("");
    } else {
      const auto a = text.substr(0, colon), b = text.substr(colon + 1);
      r.first = std::stoi(a, &used);
      if (used != a.size()) throw InputError("");
      r.last = std::stoi(b, &used);
      if (used != b.size()) throw InputError("");
    }
  } catch (const std::exception&) {
    throw InputError("--requests: expected N or A:B, got \"" + text + "\"");
  }
  if (r.first < 1 || r.last > 20 || r.first > r.last) {
    throw InputError("--requests: range must lie within 1..20, got \"" + text + "\"");
  }
  return r;
}

std::vector<DemandClass> parse_classes(const std::string& text) {
  std::vector<DemandClass> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_demand_class(item));
  if (out.empty()) throw InputError("--classes: no demand class given");
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

int exit_code(SolveStatus status, bool has_incumbent) {
  switch (status) {
    case SolveStatus::optimal: return kExitOk;
    case SolveStatus::infeasible: return kExitInfeasible;
    case SolveStatus::node_limit:
    case SolveStatus::time_limit: return has_incumbent ? kExitLimit : kExitInfeasible;
  }
  return kExitInfeasible;
}

std::string solution_json(const Scenario& s, const MilpSolution& sol, bool timing) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["status"] = std::string(to_string(sol.status));
  if (sol.has_incumbent()) {
    doc["objective_w"] = round_sig(sol.objective, 10);
  } else {
    doc["objective_w"] = nullptr;
  }
  auto placement = ordered_json::array();
  for (const auto& a : sol.placement.allocations) {
    placement.push_back(ordered_json{{"demand", s.demands()[a.demand].id},
                                     {"node", s.nodes()[a.node].id},
                                     {"mips", round_sig(a.mips, 10)}});
  }
  doc["placement"] = std::move(placement);
  ordered_json stats{{"nodes", sol.stats.nodes},
                     {"lp_iterations", sol.stats.lp_iterations},
                     {"best_bound_w", round_sig(sol.stats.best_bound, 10)}};
  if (sol.has_incumbent()) stats["gap_w"] = round_sig(sol.gap(), 6);
  if (timing) stats["solve_ms"] = round_sig(sol.stats.wall_ms, 6);
  doc["stats"] = std::move(stats);
  if (sol.has_incumbent()) {
    const auto report = evaluate_placement(s, sol.placement);
    doc["power"] = ordered_json::parse(power_report_json(report));
  }
  return doc.dump(2) + "\n";
}

std::string dat_path(const std::string& out, DemandClass c) {
  std::filesystem::path p(out);
  const auto name = p.stem().string() + "_" + std::string(to_string(c)) + ".dat";
  return (p.parent_path() / name).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-aware workload placement over vehicles, edge nodes and cloud"};
  app.require_subcommand(1);

  // scenario
  auto* scenario_cmd = app.add_subcommand("scenario", "Write a template scenario document");
  std::string scenario_class;
  std::string scenario_requests = "1";
  std::string scenario_out;
  ModelFlags scenario_model;
  scenario_cmd->add_option("--class", scenario_class, "small, medium or large")->required();
  scenario_cmd->add_option("--requests", scenario_requests, "request count (1..20)");
  scenario_cmd->add_option("--out", scenario_out, "output path (default: stdout)");
  scenario_model.attach(scenario_cmd);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve a scenario document");
  std::string solve_path;
  std::string solve_out;
  std::string solve_mps;
  std::string solve_format = "json";
  double solve_time_limit = 0.0;
  long solve_node_limit = 0;
  int solve_workers = 1;
  bool solve_timing = false;
  solve_cmd->add_option("scenario", solve_path, "scenario document")->required();
  solve_cmd->add_option("--out", solve_out, "output path (default: stdout)");
  solve_cmd->add_option("--format", solve_format, "json")->check(CLI::IsMember({"json"}));
  solve_cmd->add_option("--time-limit", solve_time_limit, "seconds (0: none)")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--node-limit", solve_node_limit, "branch-and-bound nodes (0: none)")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--workers", solve_workers, "accepted for symmetry; the search is serial")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--mps", solve_mps, "also write the MILP in MPS format");
  solve_cmd->add_flag("--timing", solve_timing, "report wall-clock time");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep demand classes and request counts");
  std::string sweep_classes = "small,medium,large";
  std::string sweep_requests = "1:10";
  std::string sweep_out;
  std::string sweep_format = "csv";
  int sweep_workers = default_workers();
  double sweep_time_limit = 0.0;
  long sweep_node_limit = kSweepNodeLimit;
  bool sweep_timing = false;
  ModelFlags sweep_model;
  sweep_cmd->add_option("--classes", sweep_classes, "comma-separated classes");
  sweep_cmd->add_option("--requests", sweep_requests, "N or A:B");
  sweep_cmd->add_option("--out", sweep_out, "report path (default: stdout); .dat series go alongside");
  sweep_cmd->add_option("--format", sweep_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--workers", sweep_workers, "concurrent sweep points")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--time-limit", sweep_time_limit, "seconds per point (0: none)")
      ->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--node-limit", sweep_node_limit, "nodes per point (0: none)")
      ->check(CLI::NonNegativeNumber);
  sweep_cmd->add_flag("--timing", sweep_timing, "fill solve_ms with wall-clock times");
  sweep_model.attach(sweep_cmd);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Cross-check branch-and-bound against enumeration");
  std::size_t validate_instances = 100;
  std::uint64_t validate_seed = 42;
  std::size_t validate_pairs = kOracleMaxPairs;
  int validate_workers = default_workers();
  std::string validate_out;
  std::string validate_format = "csv";
  validate_cmd->add_option("--instances", validate_instances, "random instances");
  validate_cmd->add_option("--seed", validate_seed, "random seed");
  validate_cmd->add_option("--max-pairs", validate_pairs, "cap on demands x nodes");
  validate_cmd->add_option("--workers", validate_workers, "concurrent instances")->check(CLI::PositiveNumber);
  validate_cmd->add_option("--out", validate_out, "per-instance listing path");
  validate_cmd->add_option("--format", validate_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*scenario_cmd) {
      const auto range = parse_range(scenario_requests);
      if (range.first != range.last) throw InputError("--requests: scenario takes a single count");
      const auto s = build_paper_scenario(parse_demand_class(scenario_class), range.first,
                                          scenario_model.options());
      write_text(scenario_out, serialize_scenario(s));
      return kExitOk;
    }

    if (*solve_cmd) {
      const auto s = load_scenario(read_file(solve_path));
      if (!solve_mps.empty()) {
        write_text(solve_mps, to_mps(build_milp(s), std::filesystem::path(solve_path).stem().string()));
      }
      BranchOptions options;
      options.time_limit_s = solve_time_limit;
      options.node_limit = solve_node_limit;
      const auto sol = solve_scenario(s, options);
      write_text(solve_out, solution_json(s, sol, solve_timing));
      return exit_code(sol.status, sol.has_incumbent());
    }

    if (*sweep_cmd) {
      const auto range = parse_range(sweep_requests);
      SweepOptions options;
      options.model = sweep_model.options();
      options.branch.time_limit_s = sweep_time_limit;
      options.branch.node_limit = sweep_node_limit;
      options.workers = sweep_workers;
      options.timing = sweep_timing;
      const auto report = run_sweep(parse_classes(sweep_classes), range.first, range.last, options);
      write_text(sweep_out, emit_report(report, parse_report_format(sweep_format)));
      if (!sweep_out.empty() && sweep_out != "-") {
        for (auto c : {DemandClass::small, DemandClass::medium, DemandClass::large}) {
          bool present = false;
          for (const auto& r : report.rows) present = present || r.demand_class == c;
          if (present) write_text(dat_path(sweep_out, c), gnuplot_series(report, c));
        }
      }
      int code = kExitOk;
      for (const auto& r : report.rows) {
        if (r.status == SolveStatus::optimal) continue;
        std::cerr << to_string(r.demand_class) << ' ' << r.request_count << ": " << to_string(r.status)
                  << ", gap " << format_sig(r.gap_w) << " W\n";
        code = std::max(code, r.status == SolveStatus::infeasible ? kExitInfeasible : kExitLimit);
      }
      return code;
    }

    if (*validate_cmd) {
      const auto summary = validate_random(validate_instances, validate_seed, validate_pairs, validate_workers);
      if (!validate_out.empty()) {
        std::string text;
        if (validate_format == "csv") {
          text = "instance,demands,nodes,bb_status,oracle_status,bb_objective_w,oracle_objective_w,match\n";
          for (const auto& c : summary.checks) {
            text += std::to_string(c.index) + ',' + std::to_string(c.demands) + ',' +
                    std::to_string(c.nodes) + ',' + std::string(to_string(c.bb_status)) + ',' +
                    std::string(to_string(c.oracle_status)) + ',' + format_sig(c.bb_objective, 12) +
                    ',' + format_sig(c.oracle_objective, 12) + ',' + (c.match ? "1" : "0") + '\n';
          }
        } else {
          auto rows = nlohmann::ordered_json::array();
          for (const auto& c : summary.checks) {
            rows.push_back({{"instance", c.index},
                            {"demands", c.demands},
                            {"nodes", c.nodes},
                            {"bb_status", std::string(to_string(c.bb_status))},
                            {"oracle_status", std::string(to_string(c.oracle_status))},
                            {"bb_objective_w", round_sig(c.bb_objective, 12)},
                            {"oracle_objective_w", round_sig(c.oracle_objective, 12)},
                            {"match", c.match}});
          }
          text = rows.dump(2) + "\n";
        }
        write_text(validate_out, text);
      }
      for (const auto& c : summary.checks) {
        if (c.match) continue;
        std::cout << "mismatch: instance " << c.index << " bb " << to_string(c.bb_status) << ' '
                  << format_sig(c.bb_objective, 12) << " oracle " << to_string(c.oracle_status) << ' '
                  << format_sig(c.oracle_objective, 12) << '\n';
      }
      std::cout << summary.matches << '/' << summary.checks.size()
                << " matches, max discrepancy " << format_sig(summary.max_discrepancy, 3) << " W\n";
      return summary.passed() ? kExitOk : kExitInfeasible;
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const DerivationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  }
  return kExitUsage;
}
