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


#include <atomic>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"
#include "vcloud/harness.hpp"

using namespace vcloud;

TEST_SUITE("harness") {

TEST_CASE("saving percentage") {
  CHECK(compute_saving(10, 100) == doctest::Approx(90.0));
  CHECK(compute_saving(42.5, 42.5) == 0.0);
  CHECK_THROWS_AS(compute_saving(1, 0), InputError);
}

TEST_CASE("empty report") {
  SweepReport r;
  CHECK(emit_report(r, ReportFormat::csv) == std::string(kCsvHeader) + "\n");
  const auto doc = nlohmann::json::parse(emit_report(r, ReportFormat::json));
  CHECK(doc["rows"].empty());
  CHECK(doc["tool_version"] == std::string(kToolVersion));
}

TEST_CASE("small sweep rows") {
  const auto report = run_sweep({DemandClass::small}, 1, 2);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    CHECK(row.status == SolveStatus::optimal);
    CHECK(row.vehicle_power_w + row.edge_power_w + row.cloud_power_w ==
          doctest::Approx(row.total_power_w).epsilon(1e-6));
    CHECK(row.total_power_w == doctest::Approx(row.objective_w).epsilon(1e-6));
    CHECK(row.stats.wall_ms == 0.0);
  }
  CHECK(report.rows[0].request_count == 1);
  CHECK(report.rows[0].saving_pct >= 85.0);
  CHECK(report.rows[0].saving_pct <= 95.0);
  CHECK(report.rows[1].saving_pct < report.rows[0].saving_pct);

  const auto csv = emit_report(report, ReportFormat::csv);
  CHECK(csv.rfind(std::string(kCsvHeader) + "\nsmall,1,15.3484,15.3484,0,0,0,243.217,93.6894,", 0) == 0);

  const auto doc = nlohmann::json::parse(emit_report(report, ReportFormat::json));
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["demand_class"] == "small");
  CHECK(doc["rows"][0]["total_power_w"].get<double>() == doctest::Approx(15.3484));
  CHECK(doc["rows"][1]["status"] == "optimal");

  CHECK(gnuplot_series(report, DemandClass::small) ==
        "# small\n# request_count saving_pct\n1 93.6894\n2 88.9554\n");
  CHECK(gnuplot_series(report, DemandClass::large) == "# large\n# request_count saving_pct\n");
}

TEST_CASE("row order and worker count") {
  SweepOptions o;
  o.branch.node_limit = 30;
  const auto one = run_sweep({DemandClass::large, DemandClass::small}, 1, 2, o);
  o.workers = 3;
  const auto three = run_sweep({DemandClass::small, DemandClass::large}, 1, 2, o);
  CHECK(emit_report(one, ReportFormat::csv) == emit_report(three, ReportFormat::csv));
  REQUIRE(one.rows.size() == 4);
  CHECK(one.rows[0].demand_class == DemandClass::small);
  CHECK(one.rows[3].demand_class == DemandClass::large);
  CHECK(one.rows[3].request_count == 2);
}

TEST_CASE("parallel_for") {
  std::atomic<int> sum{0};
  parallel_for(100, 4, [&](std::size_t i) { sum += static_cast<int>(i); });
  CHECK(sum == 4950);
  CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                    if (i == 7) throw std::runtime_error("seven");
                  }),
                  std::runtime_error);
}

TEST_CASE("random instances") {
  CHECK(unit_draw(0) == 0.0);
  CHECK(unit_draw(~std::uint64_t{0}) < 1.0);
  CHECK(serialize_scenario(random_instance(42, 3)) == serialize_scenario(random_instance(42, 3)));
  CHECK(serialize_scenario(random_instance(42, 3)) != serialize_scenario(random_instance(42, 4)));
  for (std::size_t i = 0; i < 50; ++i) {
    const auto s = random_instance(1, i, 8);
    CHECK(s.num_demands() * s.num_nodes() <= 8);
  }
}

TEST_CASE("validation summary") {
  CHECK(validate_random(0, 42).passed());
  CHECK_THROWS_AS(validate_random(1, 42, kOracleMaxPairs + 1), InputError);
  const auto a = validate_random(12, 5, kOracleMaxPairs, 1);
  const auto b = validate_random(12, 5, kOracleMaxPairs, 4);
  CHECK(a.passed());
  CHECK(a.matches == 12);
  CHECK(a.max_discrepancy <= kMatchTolerance);
  REQUIRE(b.checks.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) CHECK(a.checks[i].bb_objective == b.checks[i].bb_objective);
}

}  // TEST_SUITE
