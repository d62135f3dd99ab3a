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


// Acceptance run: one PASS or FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "vcloud/harness.hpp"
#include "vcloud/milp.hpp"
#include "vcloud/numeric.hpp"
#include "vcloud/power.hpp"

using namespace vcloud;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

int failures = 0;

void verdict(int criterion, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void note(const std::string& text) { std::printf("  note: %s\n", text.c_str()); }

const std::vector<DemandClass> kClasses{DemandClass::small, DemandClass::medium, DemandClass::large};

using Rows = std::map<std::pair<DemandClass, int>, SweepRow>;

Rows index_rows(const SweepReport& report) {
  Rows out;
  for (const auto& r : report.rows) out[{r.demand_class, r.request_count}] = r;
  return out;
}

std::string point(DemandClass c, int n) { return std::string(to_string(c)) + " " + std::to_string(n); }

// --- 1 -------------------------------------------------------------------

void overflow_thresholds(Rows& rows) {
  const std::map<DemandClass, int> first_cloud{
      {DemandClass::small, 11}, {DemandClass::medium, 9}, {DemandClass::large, 5}};
  std::string bad;
  for (auto c : kClasses) {
    for (int n = 1; n <= 10; ++n) {
      const bool cloud = rows[{c, n}].cloud_mips > 0.0;
      if (cloud != (n >= first_cloud.at(c))) bad += " " + point(c, n);
    }
  }
  verdict(1, bad.empty(),
          bad.empty() ? "cloud MIPS zero below medium 9 and large 5, positive from there; small never"
                      : "wrong cloud use at" + bad);
}

// --- 2 -------------------------------------------------------------------

struct Band {
  DemandClass c;
  int n;
  double lo, hi;
};

void savings_bands(Rows& rows, const SweepOptions& base) {
  std::vector<Band> bands{{DemandClass::small, 1, 85, 95},  {DemandClass::small, 10, 64, 84},
                          {DemandClass::medium, 1, 82, 92}, {DemandClass::medium, 8, 58, 100},
                          {DemandClass::large, 1, 76, 86},  {DemandClass::large, 4, 56, 76}};
  for (int n = 9; n <= 10; ++n) bands.push_back({DemandClass::medium, n, 15, 45});
  for (int n = 5; n <= 10; ++n) bands.push_back({DemandClass::large, n, 15, 45});

  std::vector<Band> missed;
  std::string shown;
  for (const auto& b : bands) {
    const double s = rows[{b.c, b.n}].saving_pct;
    if (s < b.lo || s > b.hi) missed.push_back(b);
    shown += " " + point(b.c, b.n) + "=" + format_sig(s, 4) + "%";
  }
  verdict(2, missed.empty(),
          (missed.empty() ? "all savings inside their bands:" : std::to_string(missed.size()) + " band misses:") +
              shown);
  for (const auto& b : missed) {
    std::string line = point(b.c, b.n) + " saving " + format_sig(rows[{b.c, b.n}].saving_pct, 4) +
                       "% outside [" + format_sig(b.lo) + ", " + format_sig(b.hi) + "]; with cloud J/bit";
    for (double scale : {0.25, 0.5, 2.0, 4.0}) {
      auto o = base;
      o.model.cloud_path_energy_per_bit *= scale;
      const auto r = run_sweep({b.c}, b.n, b.n, o);
      line += " x" + format_sig(scale) + " -> " + format_sig(r.rows[0].saving_pct, 4) + "%";
    }
    note(line);
  }
}

// --- 3 -------------------------------------------------------------------

void trends(Rows& rows) {
  const std::map<DemandClass, int> overflow{{DemandClass::small, 10}, {DemandClass::medium, 9},
                                            {DemandClass::large, 5}};
  std::string bad;
  for (auto c : kClasses) {
    for (int n = 2; n <= 10; ++n) {
      const auto& prev = rows[{c, n - 1}];
      const auto& cur = rows[{c, n}];
      if (!(cur.total_power_w > prev.total_power_w)) bad += " power(" + point(c, n) + ")";
      if (n <= overflow.at(c) && cur.saving_pct > prev.saving_pct) bad += " saving(" + point(c, n) + ")";
    }
  }
  for (auto c : {DemandClass::medium, DemandClass::large}) {
    const int k = overflow.at(c);
    const double jump = rows[{c, k}].total_power_w - rows[{c, k - 1}].total_power_w;
    const double before = rows[{c, k - 1}].total_power_w - rows[{c, k - 2}].total_power_w;
    if (!(jump >= 2 * before)) bad += " jump(" + point(c, k) + ")";
    note("overflow increment at " + point(c, k) + ": " + format_sig(jump, 4) + " W vs " +
         format_sig(before, 4) + " W before");
  }
  verdict(3, bad.empty(),
          bad.empty() ? "power strictly increasing, savings non-increasing, overflow jumps at least doubled"
                      : "violations:" + bad);
}

// --- 4 -------------------------------------------------------------------

void oracle_equivalence() {
  const auto t = Clock::now();
  const auto summary = validate_random(100, 42, kOracleMaxPairs, default_workers());
  const double s = seconds_since(t);
  verdict(4, summary.matches == 100 && s < 120.0,
          std::to_string(summary.matches) + "/100 matches, max discrepancy " +
              format_sig(summary.max_discrepancy, 3) + " W, " + format_sig(s, 3) + " s");
}

// --- 5, 6 ----------------------------------------------------------------

void consistency(const SweepReport& report) {
  std::string bad5, bad6;
  for (const auto& r : report.rows) {
    const auto where = point(r.demand_class, r.request_count);
    if (std::abs(r.total_power_w - r.objective_w) > 1e-6 * std::max(1.0, std::abs(r.objective_w))) {
      bad5 += " " + where;
    }
    const auto s = build_paper_scenario(r.demand_class, r.request_count, report.options);
    const auto p = build_milp(s);
    const auto baseline = assignment_from_placement(p, cloud_only_placement(s));
    if (!constraint_violations(p, baseline).empty() || !(r.objective_w <= r.baseline_power_w + 1e-9)) {
      bad6 += " " + where;
    }
  }
  verdict(5, bad5.empty(),
          bad5.empty() ? "evaluated power matches the solver objective on all 30 rows" : "mismatch at" + bad5);
  verdict(6, bad6.empty(),
          bad6.empty() ? "optimum below baseline and baseline feasible on all 30 rows" : "fails at" + bad6);
}

}  // namespace

int main() {
  SweepOptions options;
  options.workers = 1;

  const auto t = Clock::now();
  const auto first = run_sweep(kClasses, 1, 10, options);
  const double sweep_s = seconds_since(t);

  options.workers = 8;
  const auto eight = run_sweep(kClasses, 1, 10, options);
  options.workers = 1;
  const auto again = run_sweep(kClasses, 1, 10, options);

  auto rows = index_rows(first);
  overflow_thresholds(rows);
  savings_bands(rows, options);
  trends(rows);
  oracle_equivalence();
  consistency(first);

  const auto csv = emit_report(first, ReportFormat::csv);
  const bool same = csv == emit_report(again, ReportFormat::csv) && csv == emit_report(eight, ReportFormat::csv);
  verdict(7, same, same ? "CSV byte-identical across two single-worker runs and an 8-worker run"
                        : "CSV differs between runs");

  verdict(8, first.rows.size() == 30 && sweep_s < 60.0,
          std::to_string(first.rows.size()) + "-point sweep in " + format_sig(sweep_s, 3) +
              " s on one worker");

  int limited = 0;
  for (const auto& r : first.rows) {
    if (r.status == SolveStatus::optimal) continue;
    ++limited;
    note(point(r.demand_class, r.request_count) + " stopped at the " + std::string(to_string(r.status)) +
         " with gap " + format_sig(r.gap_w, 3) + " W");
  }
  note(std::to_string(30 - limited) + "/30 rows proven optimal within the " +
       std::to_string(kSweepNodeLimit) + "-node budget");
  return failures == 0 ? 0 : 1;
}
