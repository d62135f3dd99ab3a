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
#include "vcloud/power.hpp"
#include "vcloud/scenario.hpp"

using namespace vcloud;

namespace {

constexpr auto kDsrc = index_of(InterfaceKind::dsrc);
constexpr auto kWifi = index_of(InterfaceKind::wifi);
constexpr auto kCore = index_of(InterfaceKind::core);

// Watts for one demand of `w` MIPS split between its source and one DSRC
// neighbour, computed by hand from the vehicle row.
double local_pair_watts(double w) {
  const double t = w * 1e6 / 2000.0;
  return 2 * 5.0 + w / 550.0 + 2 * t * 1.05 / 27e6;
}

}  // namespace

TEST_SUITE("power") {

TEST_CASE("published efficiencies") {
  const ModelOptions o;
  CHECK(derive_power_params(vehicle_template("v"), o).efficiency == 550.0);
  CHECK(derive_power_params(edge_template("e"), o).efficiency == 340.0);
  CHECK(derive_power_params(cloud_template("c", 10000), o).efficiency == 100.0);
  CHECK(derive_power_params(edge_template("e"), o).idle_w == 7.5);
  CHECK(derive_power_params(cloud_template("c", 10000), o).idle_w == 201.0);
}

TEST_CASE("derived efficiency off the table") {
  auto v = vehicle_template("v");
  v.capacity_mips = 1000.0;
  CHECK(derive_power_params(v, {}).efficiency == doctest::Approx(1000.0 / 2.9));
  CHECK(derive_power_params(cloud_template("c", 51840), {}).efficiency == doctest::Approx(100.0));
}

TEST_CASE("interface coefficients") {
  const ModelOptions o;
  const auto v = derive_power_params(vehicle_template("v"), o);
  CHECK(v.tx_j_per_bit[kDsrc] == doctest::Approx(3.8889e-8).epsilon(1e-4));
  CHECK(v.rx_j_per_bit[kDsrc] == v.tx_j_per_bit[kDsrc]);
  CHECK(v.tx_j_per_bit[kWifi] == doctest::Approx(7e-9));
  const auto e = derive_power_params(edge_template("e"), o);
  CHECK(e.rx_j_per_bit[kWifi] == doctest::Approx(1.3e-7));
  CHECK(e.tx_j_per_bit[kCore] == 0.0);
  const auto c = derive_power_params(cloud_template("c", 10000), o);
  CHECK(c.rx_j_per_bit[kCore] == o.cloud_path_energy_per_bit);
}

TEST_CASE("underivable spec") {
  auto v = vehicle_template("v");
  v.processing_fraction = 0.0;
  CHECK_THROWS_AS(derive_power_params(v, {}), DerivationError);
}

TEST_CASE("traffic") {
  CHECK(traffic_for_workload(2880, 2000) == 1.44e6);
  CHECK(traffic_for_workload(0, 2000) == 0.0);
  CHECK_THROWS_AS(traffic_for_workload(1, 0), InputError);
}

TEST_CASE("node power") {
  const auto v = derive_power_params(vehicle_template("v"), {});
  KindRates tx{}, rx{};
  CHECK(node_power(v, false, 0.0, tx, rx) == 0.0);
  CHECK(node_power(v, true, 0.0, tx, rx) == 5.0);
  tx[kDsrc] = 1.44e6;
  CHECK(node_power(v, true, 1100.0, tx, rx) == doctest::Approx(5.0 + 2.0 + 0.056));
  CHECK_THROWS_AS(node_power(v, false, 0.0, tx, rx), InputError);
  CHECK_THROWS_AS(node_power(v, false, 10.0, {}, {}), InputError);
}

TEST_CASE("local placement") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  const auto p = make_placement({{0, 0, 1280.0}, {0, 1, 1600.0}}, s);
  const auto r = evaluate_placement(s, p);
  CHECK(r.total_w == doctest::Approx(local_pair_watts(2880)));
  CHECK(r.total_w == doctest::Approx(15.348364).epsilon(1e-7));
  CHECK(r.tier(Tier::vehicle).mips == 2880.0);
  CHECK(r.tier(Tier::edge).total_w == 0.0);
  CHECK(r.tier(Tier::vehicle).total_w + r.tier(Tier::edge).total_w + r.tier(Tier::cloud).total_w ==
        doctest::Approx(r.total_w));
}

TEST_CASE("cloud-only baseline") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  // source idle + WiFi up; access point idle + WiFi in; cloud idle + load + core in
  const double t = 1.44e6;
  const double expected = 5.0 + t * 7e-9 + 7.5 + t * 1.3e-7 + 201.0 + 28.8 + t * 5e-7;
  const auto b = cloud_only_baseline(s);
  CHECK(b.total_w == doctest::Approx(expected));
  CHECK(b.total_w == doctest::Approx(243.21728));
  CHECK(b.tier(Tier::cloud).mips == 2880.0);
}

TEST_CASE("per-server baseline packs first fit") {
  ModelOptions o;
  o.cloud_provisioning = CloudProvisioning::per_server;
  const auto s = build_paper_scenario(DemandClass::medium, 9, o);
  const auto b = cloud_only_baseline(s);
  int active_clouds = 0;
  for (const auto& n : b.nodes) active_clouds += n.tier == Tier::cloud && n.active;
  CHECK(active_clouds == 6);
  CHECK(b.tier(Tier::cloud).mips == doctest::Approx(51840));
}

TEST_CASE("infeasible placements") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  CHECK_THROWS_AS(evaluate_placement(s, make_placement({{0, 0, 2880.0}}, s)), InfeasiblePlacementError);
  CHECK_THROWS_AS(evaluate_placement(s, make_placement({{0, 0, 1000.0}}, s)), InfeasiblePlacementError);
  const auto v = placement_violations(s, make_placement({{0, 0, 2880.0}}, s));
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("v0") != std::string::npos);
}

TEST_CASE("relays are active") {
  const auto s = build_paper_scenario(DemandClass::small, 1);
  const auto p = make_placement({{0, 0, 1600.0}, {0, s.node_index("e2"), 1280.0}}, s);
  CHECK(p.active[s.node_index("e0")]);
  CHECK(p.active[s.node_index("e2")]);
  CHECK(!p.active[s.node_index("e1")]);
  const auto r = evaluate_placement(s, p);
  CHECK(r.tier(Tier::edge).idle_w == 15.0);
}

}  // TEST_SUITE
