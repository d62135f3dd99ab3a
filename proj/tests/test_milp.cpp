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


#include <algorithm>
#include <string>

#include "doctest.h"
#include "vcloud/milp.hpp"
#include "vcloud/power.hpp"

using namespace vcloud;

namespace {

const Constraint* row(const MilpProblem& p, const std::string& label) {
  for (const auto& c : p.constraints) {
    if (c.label == label) return &c;
  }
  return nullptr;
}

double coef(const Constraint& c, std::size_t var) {
  for (const auto& t : c.terms) {
    if (t.var == var) return t.coef;
  }
  return 0.0;
}

}  // namespace

TEST_SUITE("milp") {

TEST_CASE("dimensions") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  const auto p = build_milp(s);
  CHECK(p.num_variables() == 75);
  // serve + bigm + capacity + serving + source + relay + bandwidth
  CHECK(p.constraints.size() == 1 + 25 + 25 + 25 + 1 + 4 + 24);
  CHECK(p.variables[p.x(0, 3)].name == "x(d0,v3)");
  CHECK(p.variables[p.y(0, 24)].name == "y(d0,cloud0)");
  CHECK(p.variables[p.a(20)].name == "a(e0)");
}

TEST_CASE("big-M and capacity rows") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  const auto p = build_milp(s);
  const auto cloud = s.node_index("cloud0");
  REQUIRE(row(p, "bigm[d0,v1]"));
  CHECK(coef(*row(p, "bigm[d0,v1]"), p.y(0, 1)) == -1600.0);
  CHECK(coef(*row(p, "bigm[d0,cloud0]"), p.y(0, cloud)) == -2880.0);
  CHECK(coef(*row(p, "capacity[e2]"), p.a(s.node_index("e2"))) == -3600.0);
  CHECK(row(p, "relay[d0,cloud0,e0]"));
  CHECK(row(p, "relay[d0,e3,e0]"));
  CHECK(!row(p, "relay[d0,e0,e0]"));
  const auto* bw = row(p, "bandwidth[v0-e0:WiFi]");
  REQUIRE(bw);
  CHECK(bw->rhs == 150e6);
  CHECK(bw->terms.size() == 5);  // e0..e3 and the cloud
}

TEST_CASE("objective coefficients") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  const auto p = build_milp(s);
  const double t = 1.44e6;
  CHECK(p.variables[p.a(0)].cost == 5.0);
  CHECK(p.variables[p.a(s.node_index("cloud0"))].cost == 201.0);
  CHECK(p.variables[p.x(0, 1)].cost == doctest::Approx(1.0 / 550));
  CHECK(p.variables[p.y(0, 0)].cost == 0.0);
  CHECK(p.variables[p.y(0, 1)].cost == doctest::Approx(t * 2 * 1.05 / 27e6));
  CHECK(p.variables[p.y(0, s.node_index("cloud0"))].cost ==
        doctest::Approx(t * (7e-9 + 1.3e-7 + 0.0 + 5e-7)));
}

TEST_CASE("shared DSRC medium") {
  ModelOptions o;
  o.dsrc_medium = DsrcMedium::shared;
  const auto p = build_milp(build_paper_scenario(DemandClass::small, 2, o));
  const auto* shared = row(p, "dsrc_shared");
  REQUIRE(shared);
  CHECK(shared->rhs == 27e6);
  CHECK(shared->terms.size() == 2 * 19);
  CHECK(!row(p, "bandwidth[v0-v1:DSRC]"));
}

TEST_CASE("baseline assignment is feasible") {
  for (auto c : {DemandClass::small, DemandClass::medium, DemandClass::large}) {
    const auto s = build_paper_scenario(c, 10);
    const auto p = build_milp(s);
    const auto values = assignment_from_placement(p, cloud_only_placement(s));
    CHECK(constraint_violations(p, values).empty());
    CHECK(objective_value(p, values) == doctest::Approx(cloud_only_baseline(s).total_w));
  }
}

TEST_CASE("placement extraction") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  const auto p = build_milp(s);
  const auto local = make_placement({{0, 0, 1280.0}, {0, 1, 1600.0}}, s);
  auto values = assignment_from_placement(p, local);
  CHECK(constraint_violations(p, values).empty());
  CHECK(objective_value(p, values) == doctest::Approx(15.348364).epsilon(1e-7));
  CHECK(extract_placement(p, values) == local);

  SUBCASE("fractional binary") {
    values[p.y(0, 1)] = 0.5;
    CHECK_THROWS_AS(extract_placement(p, values), IntegralityError);
  }
  SUBCASE("unserved workload") {
    values[p.x(0, 1)] = 1000.0;
    CHECK_THROWS_AS(extract_placement(p, values), InfeasiblePlacementError);
  }
}

TEST_CASE("violations are labelled") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  const auto p = build_milp(s);
  auto values = assignment_from_placement(p, make_placement({{0, 0, 1280.0}, {0, 1, 1600.0}}, s));
  values[p.a(1)] = 0.0;
  const auto v = constraint_violations(p, values);
  CHECK(std::any_of(v.begin(), v.end(), [](const std::string& m) { return m.rfind("capacity[v1]", 0) == 0; }));
  CHECK(std::any_of(v.begin(), v.end(), [](const std::string& m) { return m.rfind("serving[d0,v1]", 0) == 0; }));
}

TEST_CASE("mps export") {
  const auto p = build_milp(build_paper_scenario(DemandClass::small, 1));
  const auto text = to_mps(p, "SMALL1");
  CHECK(text == to_mps(p, "SMALL1"));
  CHECK(text.find("* C0000000 x(d0,v0)\n") != std::string::npos);
  CHECK(text.find("NAME          SMALL1\n") != std::string::npos);
  CHECK(text.find(" N  COST\n") != std::string::npos);
  CHECK(text.find("'MARKER'                 'INTORG'") != std::string::npos);
  CHECK(text.find(" BV BND") != std::string::npos);
  CHECK(text.size() > 6);
  CHECK(text.substr(text.size() - 7) == "ENDATA\n");
  std::size_t bv = 0;
  for (std::size_t at = text.find(" BV "); at != std::string::npos; at = text.find(" BV ", at + 1)) ++bv;
  CHECK(bv == 50);
}

}  // TEST_SUITE
