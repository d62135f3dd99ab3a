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

// Sweeps over demand classes and request counts, reports, and randomized
// cross-checks of branch-and-bound against the oracle.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "vcloud/model.hpp"
#include "vcloud/scenario.hpp"
#include "vcloud/solver.hpp"

namespace vcloud {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Node budget used by sweeps unless overridden.
inline constexpr long kSweepNodeLimit = 400;

/// Runs body(0) .. body(count - 1) on up to `workers` threads.
void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body);

int default_workers();

/// Builds the MILP and runs branch-and-bound, seeding the incumbent with the
/// cloud-only assignment unless options carry a warm start.
MilpSolution solve_scenario(const Scenario& scenario, BranchOptions options = {});

struct SweepOptions {
  ModelOptions model;
  BranchOptions branch = [] {
    BranchOptions b;
    b.node_limit = kSweepNodeLimit;
    return b;
  }();
  int workers = 1;
  bool timing = false;  // keep wall-clock times in rows
};

struct SweepRow {
  DemandClass demand_class = DemandClass::small;
  int request_count = 0;
  double total_power_w = 0.0;
  double vehicle_power_w = 0.0;
  double edge_power_w = 0.0;
  double cloud_power_w = 0.0;
  double cloud_mips = 0.0;
  double baseline_power_w = 0.0;
  double saving_pct = 0.0;
  SolveStatus status = SolveStatus::infeasible;
  double objective_w = 0.0;  // as reported by the solver
  double gap_w = 0.0;
  SolveStats stats;
};

struct SweepReport {
  std::vector<SweepRow> rows;  // sorted by (class, count)
  ModelOptions options;
  std::string tool_version{kToolVersion};
};

/// Every (class, count) point with first <= count <= last.
SweepReport run_sweep(const std::vector<DemandClass>& classes, int first,
                      int last, const SweepOptions& options = {});

/// One sweep row from an already solved point.
SweepRow make_row(const Scenario& scenario, const MilpSolution& solution,
                  DemandClass demand_class, int request_count);

/// Percentage of baseline_w saved; InputError when baseline_w is 0.
double compute_saving(double optimal_w, double baseline_w);

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(std::string_view text);

inline constexpr std::string_view kCsvHeader =
    "demand_class,request_count,total_power_w,vehicle_power_w,edge_power_w,"
    "cloud_power_w,cloud_mips,baseline_power_w,saving_pct,bb_nodes,"
    "lp_iterations,solve_ms";

std::string emit_report(const SweepReport& report, ReportFormat format);

/// Two whitespace-separated columns, request_count and saving_pct, for one
/// class. Lines starting with '#' are comments.
std::string gnuplot_series(const SweepReport& report, DemandClass demand_class);

// ---------------------------------------------------------------------------
// Randomized cross-check
// ---------------------------------------------------------------------------

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_draw(std::uint64_t bits);

/// Random small scenario with demands * nodes <= max_pairs. The same
/// (seed, index) always yields the same scenario.
Scenario random_instance(std::uint64_t seed, std::size_t index,
                         std::size_t max_pairs = kOracleMaxPairs);

struct InstanceCheck {
  std::size_t index = 0;
  std::size_t demands = 0;
  std::size_t nodes = 0;
  SolveStatus bb_status = SolveStatus::infeasible;
  SolveStatus oracle_status = SolveStatus::infeasible;
  double bb_objective = 0.0;
  double oracle_objective = 0.0;
  double discrepancy = 0.0;  // absolute; 0 when both are infeasible
  bool match = false;
};

struct ValidationSummary {
  std::vector<InstanceCheck> checks;
  std::size_t matches = 0;
  double max_discrepancy = 0.0;

  bool passed() const { return matches == checks.size(); }
};

inline constexpr double kMatchTolerance = 1e-6;

/// Throws InputError when max_pairs exceeds the oracle budget.
ValidationSummary validate_random(std::size_t instances, std::uint64_t seed,
                                  std::size_t max_pairs = kOracleMaxPairs,
                                  int workers = 1);

}  // namespace vcloud
