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

#include "vcloud/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "json.hpp"
#include "vcloud/milp.hpp"
#include "vcloud/numeric.hpp"
#include "vcloud/power.hpp"

namespace vcloud {

void parallel_for(std::size_t count, int workers,
                  const std::function<void(std::size_t)>& body) {
  const auto threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

int default_workers() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

MilpSolution solve_scenario(const Scenario& scenario, BranchOptions options) {
  const auto problem = build_milp(scenario);
  if (!options.warm_start) {
    options.warm_start = assignment_from_placement(problem, cloud_only_placement(scenario));
  }
  return branch_and_bound(problem, options);
}

double compute_saving(double optimal_w, double baseline_w) {
  if (baseline_w == 0.0) throw InputError("saving undefined for a zero baseline");
  return 100.0 * (baseline_w - optimal_w) / baseline_w;
}

SweepRow make_row(const Scenario& scenario, const MilpSolution& solution,
                  DemandClass demand_class, int request_count) {
  SweepRow row;
  row.demand_class = demand_class;
  row.request_count = request_count;
  row.status = solution.status;
  row.stats = solution.stats;
  row.baseline_power_w = cloud_only_baseline(scenario).total_w;
  if (!solution.has_incumbent()) return row;
  const auto report = evaluate_placement(scenario, solution.placement);
  row.total_power_w = report.total_w;
  row.vehicle_power_w = report.tier(Tier::vehicle).total_w;
  row.edge_power_w = report.tier(Tier::edge).total_w;
  row.cloud_power_w = report.tier(Tier::cloud).total_w;
  row.cloud_mips = report.tier(Tier::cloud).mips;
  row.saving_pct = compute_saving(row.total_power_w, row.baseline_power_w);
  row.objective_w = solution.objective;
  row.gap_w = solution.gap();
  return row;
}

SweepReport run_sweep(const std::vector<DemandClass>& classes, int first, int last,
                      const SweepOptions& options) {
  std::vector<std::pair<DemandClass, int>> points;
  for (auto c : classes) {
    for (int r = first; r <= last; ++r) points.emplace_back(c, r);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  SweepReport report;
  report.options = options.model;
  report.rows.resize(points.size());
  parallel_for(points.size(), options.workers, [&](std::size_t i) {
    const auto [c, r] = points[i];
    const auto scenario = build_paper_scenario(c, r, options.model);
    auto row = make_row(scenario, solve_scenario(scenario, options.branch), c, r);
    if (!options.timing) row.stats.wall_ms = 0.0;
    report.rows[i] = row;
  });
  return report;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  throw InputError("unknown report format \"" + std::string(text) + "\" (expected csv or json)");
}

std::string emit_report(const SweepReport& report, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : report.rows) {
      out += std::string(to_string(r.demand_class)) + ',' + std::to_string(r.request_count);
      for (double v : {r.total_power_w, r.vehicle_power_w, r.edge_power_w, r.cloud_power_w,
                       r.cloud_mips, r.baseline_power_w, r.saving_pct}) {
        out += ',' + format_sig(v);
      }
      out += ',' + std::to_string(r.stats.nodes) + ',' + std::to_string(r.stats.lp_iterations) +
             ',' + format_sig(r.stats.wall_ms) + '\n';
    }
    return out;
  }

  using nlohmann::ordered_json;
  const auto& o = report.options;
  ordered_json doc;
  doc["tool_version"] = report.tool_version;
  doc["options"] = ordered_json{
      {"instructions_per_bit", round_sig(o.instructions_per_bit)},
      {"cloud_path_energy_per_bit", round_sig(o.cloud_path_energy_per_bit)},
      {"cloud_provisioning", std::string(to_string(o.cloud_provisioning))},
      {"cloud_server_capacity", round_sig(o.cloud_server_capacity)},
      {"dsrc_medium", std::string(to_string(o.dsrc_medium))}};
  auto rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back(ordered_json{
        {"demand_class", std::string(to_string(r.demand_class))},
        {"request_count", r.request_count},
        {"total_power_w", round_sig(r.total_power_w)},
        {"vehicle_power_w", round_sig(r.vehicle_power_w)},
        {"edge_power_w", round_sig(r.edge_power_w)},
        {"cloud_power_w", round_sig(r.cloud_power_w)},
        {"cloud_mips", round_sig(r.cloud_mips)},
        {"baseline_power_w", round_sig(r.baseline_power_w)},
        {"saving_pct", round_sig(r.saving_pct)},
        {"status", std::string(to_string(r.status))},
        {"objective_w", round_sig(r.objective_w, 10)},
        {"gap_w", round_sig(r.gap_w)},
        {"bb_nodes", r.stats.nodes},
        {"lp_iterations", r.stats.lp_iterations},
        {"solve_ms", round_sig(r.stats.wall_ms)}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string gnuplot_series(const SweepReport& report, DemandClass demand_class) {
  std::string out = "# " + std::string(to_string(demand_class)) + "\n# request_count saving_pct\n";
  for (const auto& r : report.rows) {
    if (r.demand_class != demand_class) continue;
    out += std::to_string(r.request_count) + ' ' + format_sig(r.saving_pct) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Randomized cross-check
// ---------------------------------------------------------------------------

double unit_draw(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

class Draw {
 public:
  Draw(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    rng_.seed(seq);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_draw(rng_()); }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(unit_draw(rng_()) * (hi - lo + 1));
  }
  bool coin() { return rng_() >> 63; }

 private:
  std::mt19937_64 rng_;
};

void jitter(NodeSpec& n, Draw& draw) {
  n.max_power_w *= draw.uniform(0.8, 1.25);
  n.idle_power_w *= draw.uniform(0.8, 1.25);
  n.capacity_mips *= draw.uniform(0.5, 1.5);
}

}  // namespace

Scenario random_instance(std::uint64_t seed, std::size_t index, std::size_t max_pairs) {
  Draw draw(seed, index);
  ModelOptions options;
  options.cloud_path_energy_per_bit = draw.uniform(1e-7, 1e-6);
  options.dsrc_medium = draw.coin() ? DsrcMedium::shared : DsrcMedium::per_link;

  const int vehicles = draw.integer(1, 3);
  const int edges = draw.integer(1, 2);
  const int clouds = draw.integer(0, 1);
  const auto num_nodes = static_cast<std::size_t>(vehicles + edges + clouds);
  const int max_demands = static_cast<int>(std::min<std::size_t>(3, max_pairs / num_nodes));
  if (max_demands < 1) throw InputError("pair cap too small for a random instance");
  const int demands = draw.integer(1, max_demands);

  std::vector<NodeSpec> nodes;
  for (int i = 0; i < vehicles; ++i) {
    auto v = vehicle_template("v" + std::to_string(i));
    jitter(v, draw);
    v.interfaces[0].capacity_bps = draw.uniform(0.5e6, kDsrcCapacityBps);
    nodes.push_back(std::move(v));
  }
  for (int i = 0; i < edges; ++i) {
    auto e = edge_template("e" + std::to_string(i));
    jitter(e, draw);
    nodes.push_back(std::move(e));
  }
  for (int i = 0; i < clouds; ++i) {
    nodes.push_back(cloud_template("c" + std::to_string(i), draw.uniform(2000.0, 10000.0)));
  }

  std::vector<DemandSpec> specs;
  for (int d = 0; d < demands; ++d) {
    DemandSpec spec;
    spec.id = "d" + std::to_string(d);
    spec.source = static_cast<std::size_t>(draw.integer(0, vehicles - 1));
    spec.workload_mips = draw.uniform(300.0, 4000.0);
    spec.traffic_bps = traffic_for_workload(spec.workload_mips, options.instructions_per_bit);
    specs.push_back(std::move(spec));
  }
  return assemble_scenario(std::move(nodes), std::move(specs), options);
}

ValidationSummary validate_random(std::size_t instances, std::uint64_t seed,
                                  std::size_t max_pairs, int workers) {
  if (max_pairs > kOracleMaxPairs) {
    throw InputError("pair cap " + std::to_string(max_pairs) + " exceeds the oracle budget of " +
                     std::to_string(kOracleMaxPairs));
  }
  ValidationSummary summary;
  summary.checks.resize(instances);
  parallel_for(instances, workers, [&](std::size_t i) {
    const auto scenario = random_instance(seed, i, max_pairs);
    const auto oracle = exhaustive_oracle(scenario);
    const auto bb = solve_scenario(scenario, {});
    InstanceCheck c;
    c.index = i;
    c.demands = scenario.num_demands();
    c.nodes = scenario.num_nodes();
    c.bb_status = bb.status;
    c.oracle_status = oracle.status;
    c.bb_objective = bb.objective;
    c.oracle_objective = oracle.objective;
    const bool bb_found = bb.has_incumbent();
    const bool oracle_found = oracle.status == SolveStatus::optimal;
    if (bb_found && oracle_found) {
      c.discrepancy = std::abs(bb.objective - oracle.objective);
      c.match = bb.status == SolveStatus::optimal && c.discrepancy <= kMatchTolerance;
    } else {
      c.discrepancy = bb_found == oracle_found ? 0.0 : std::numeric_limits<double>::infinity();
      c.match = bb_found == oracle_found;
    }
    summary.checks[i] = c;
  });
  for (const auto& c : summary.checks) {
    if (c.match) ++summary.matches;
    summary.max_discrepancy = std::max(summary.max_discrepancy, c.discrepancy);
  }
  return summary;
}

}  // namespace vcloud
