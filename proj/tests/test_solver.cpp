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


#include <cmath>

#include "doctest.h"
#include "vcloud/harness.hpp"
#include "vcloud/milp.hpp"
#include "vcloud/power.hpp"
#include "vcloud/solver.hpp"

using namespace vcloud;

namespace {

Scenario source_edge_cloud(double workload) {
  std::vector<NodeSpec> nodes{vehicle_template("v0"), edge_template("e0"), cloud_template("c0", 10000)};
  return assemble_scenario(nodes, {{"d0", 0, workload, traffic_for_workload(workload, 2000)}}, {});
}

double cloud_mips(const Scenario& s, const MilpSolution& sol) {
  return evaluate_placement(s, sol.placement).tier(Tier::cloud).mips;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("no demands") {
  const auto base = build_paper_scenario(DemandClass::small, 1);
  const auto s = assemble_scenario(base.nodes(), {}, base.options());
  const auto sol = solve_scenario(s);
  CHECK(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == 0.0);
  CHECK(sol.placement.allocations.empty());
  CHECK(exhaustive_oracle(s).objective == 0.0);
}

TEST_CASE("self-served demand") {
  const auto s = assemble_scenario({vehicle_template("v0")}, {{"d0", 0, 1000.0, 0.5e6}}, {});
  const auto oracle = exhaustive_oracle(s);
  REQUIRE(oracle.status == SolveStatus::optimal);
  CHECK(oracle.objective == doctest::Approx(5.0 + 1000.0 / 550));
  CHECK(solve_scenario(s).objective == doctest::Approx(oracle.objective).epsilon(1e-9));
}

TEST_CASE("source, access point and cloud") {
  const auto s = source_edge_cloud(2880);
  const double expected = 5.0 + 7.5 + 1600.0 / 550 + 1280.0 / 340 + 1.44e6 * (7e-9 + 1.3e-7);
  const auto oracle = exhaustive_oracle(s);
  const auto bb = solve_scenario(s);
  CHECK(oracle.objective == doctest::Approx(expected).epsilon(1e-9));
  CHECK(bb.status == SolveStatus::optimal);
  CHECK(std::abs(bb.objective - oracle.objective) <= 1e-6);
  CHECK(bb.placement == oracle.placement);
}

TEST_CASE("capacity shortfall") {
  std::vector<NodeSpec> nodes{vehicle_template("v0"), edge_template("e0")};
  const auto s = assemble_scenario(nodes, {{"d0", 0, 6000.0, 3e6}}, {});
  CHECK(exhaustive_oracle(s).status == SolveStatus::infeasible);
  const auto bb = solve_scenario(s);
  CHECK(bb.status == SolveStatus::infeasible);
  CHECK(!bb.has_incumbent());
}

TEST_CASE("oracle budget") {
  CHECK_THROWS_AS(exhaustive_oracle(build_paper_scenario(DemandClass::small, 1)), InputError);
}

TEST_CASE("single small request stays local") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  const auto sol = solve_scenario(s);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == doctest::Approx(15.348364).epsilon(1e-7));
  CHECK(cloud_mips(s, sol) == 0.0);
  CHECK(evaluate_placement(s, sol.placement).total_w == doctest::Approx(sol.objective).epsilon(1e-9));
  CHECK(sol.stats.max_bound_drop <= 1e-7);
}

TEST_CASE("optimality certificate") {
  const auto p = build_milp(build_paper_scenario(DemandClass::small, 2));
  const auto sol = branch_and_bound(p);
  REQUIRE(sol.status == SolveStatus::optimal);
  auto lp = relax(p);
  for (std::size_t j = 0; j < p.num_variables(); ++j) {
    if (p.variables[j].kind != VarKind::binary) continue;
    lp.lower(static_cast<Eigen::Index>(j)) = lp.upper(static_cast<Eigen::Index>(j)) = sol.values[j];
  }
  const auto fixed = solve_lp(lp);
  REQUIRE(fixed.status == LpStatus::optimal);
  CHECK(std::abs(fixed.objective - sol.objective) <= 1e-7);
}

TEST_CASE("more demand never costs less") {
  const auto one = solve_scenario(build_paper_scenario(DemandClass::medium, 1));
  const auto two = solve_scenario(build_paper_scenario(DemandClass::medium, 2));
  CHECK(two.objective >= one.objective);
  CHECK(two.objective == doctest::Approx(58.688956).epsilon(1e-7));
}

TEST_CASE("overflow to the cloud") {
  BranchOptions limited;
  limited.node_limit = 60;
  const auto s8 = build_paper_scenario(DemandClass::medium, 8);
  const auto s9 = build_paper_scenario(DemandClass::medium, 9);
  const auto r8 = solve_scenario(s8, limited);
  const auto r9 = solve_scenario(s9, limited);
  REQUIRE(r8.has_incumbent());
  REQUIRE(r9.has_incumbent());
  CHECK(cloud_mips(s8, r8) == 0.0);
  // 9 * 5760 - 46400 MIPS of local capacity
  CHECK(cloud_mips(s9, r9) == doctest::Approx(5440));
  CHECK(r9.objective <= cloud_only_baseline(s9).total_w);
}

TEST_CASE("limits keep the incumbent") {
  BranchOptions o;
  o.node_limit = 5;
  const auto sol = solve_scenario(build_paper_scenario(DemandClass::small, 6), o);
  CHECK(sol.status == SolveStatus::node_limit);
  CHECK(sol.has_incumbent());
  CHECK(sol.gap() >= 0.0);
  CHECK(sol.stats.nodes == 5);

  o.node_limit = 0;
  o.time_limit_s = 1e-3;
  const auto timed = solve_scenario(build_paper_scenario(DemandClass::small, 8), o);
  CHECK(timed.status == SolveStatus::time_limit);
  CHECK(timed.has_incumbent());
}

TEST_CASE("repeatable") {
  BranchOptions o;
  o.node_limit = 50;
  const auto s = build_paper_scenario(DemandClass::large, 3);
  const auto a = solve_scenario(s, o);
  const auto b = solve_scenario(s, o);
  CHECK(a.values == b.values);
  CHECK(a.stats.nodes == b.stats.nodes);
  CHECK(a.stats.lp_iterations == b.stats.lp_iterations);
}

TEST_CASE("symmetry classes") {
  const auto s = build_paper_scenario(DemandClass::small, 2);
  const auto p = build_milp(s);
  const auto v = [&](const char* id) { return s.node_index(id); };
  using Kind = SymmetryClasses::Kind;
  CHECK(is_automorphism(p, transposition(p, Kind::node, v("v7"), v("v12"))));
  CHECK(is_automorphism(p, transposition(p, Kind::node, v("e2"), v("e3"))));
  CHECK(!is_automorphism(p, transposition(p, Kind::node, v("v1"), v("v7"))));
  CHECK(!is_automorphism(p, transposition(p, Kind::node, v("e0"), v("e1"))));
  CHECK(is_automorphism(p, transposition(p, Kind::demand, 0, 1)));

  const auto classes = detect_symmetry(p);
  bool vehicles = false;
  for (const auto& c : classes.classes) {
    if (c.kind == Kind::node && c.members.size() == 18) vehicles = true;
  }
  CHECK(vehicles);
}

TEST_CASE("random instances agree with enumeration") {
  for (std::size_t i = 0; i < 25; ++i) {
    CAPTURE(i);
    const auto s = random_instance(7, i);
    CHECK(s.num_demands() * s.num_nodes() <= kOracleMaxPairs);
    const auto oracle = exhaustive_oracle(s);
    const auto bb = solve_scenario(s);
    REQUIRE(bb.has_incumbent() == (oracle.status == SolveStatus::optimal));
    if (bb.has_incumbent()) {
      CHECK(bb.status == SolveStatus::optimal);
      CHECK(std::abs(bb.objective - oracle.objective) <= 1e-6);
    }
  }
}

}  // TEST_SUITE
