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


#include <Eigen/Dense>

#include <limits>

#include "doctest.h"
#include "vcloud/milp.hpp"
#include "vcloud/simplex.hpp"

using namespace vcloud;

namespace {

template <typename Scalar>
LpModel<Scalar> one_var(Scalar lo_row, Scalar hi_row) {
  LpModel<Scalar> lp;
  lp.A.resize(2, 1);
  lp.A << 1, 1;
  lp.b.resize(2);
  lp.b << lo_row, hi_row;
  lp.sense = {Sense::ge, Sense::le};
  lp.cost = LpModel<Scalar>::Vector::Ones(1);
  lp.lower = LpModel<Scalar>::Vector::Zero(1);
  lp.upper = LpModel<Scalar>::Vector::Constant(1, Scalar(100));
  return lp;
}

// max 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x <= 3; optimum (3, 1), 11.
LpModel<double> textbook() {
  LpModel<double> lp;
  lp.A.resize(2, 2);
  lp.A << 1, 1, 1, 3;
  lp.b = Eigen::Vector2d(4, 6);
  lp.sense = {Sense::le, Sense::le};
  lp.cost = Eigen::Vector2d(-3, -2);
  lp.lower = Eigen::Vector2d::Zero();
  lp.upper = Eigen::Vector2d(3, std::numeric_limits<double>::infinity());
  return lp;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("single bound row") {
  const auto s = solve_lp(one_var<double>(3, 10));
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.values(0) == doctest::Approx(3));
  CHECK(s.objective == doctest::Approx(3));
}

TEST_CASE("contradictory rows") {
  CHECK(solve_lp(one_var<double>(3, 2)).status == LpStatus::infeasible);
}

TEST_CASE("textbook maximisation") {
  const auto s = solve_lp(textbook());
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.values(0) == doctest::Approx(3));
  CHECK(s.values(1) == doctest::Approx(1));
  CHECK(s.objective == doctest::Approx(-11));
  // x rests on its upper bound, y is basic
  CHECK(s.reduced_costs(0) <= 1e-7);
  CHECK(s.reduced_costs(1) == doctest::Approx(0));
}

TEST_CASE("unbounded ray") {
  auto lp = textbook();
  lp.A(0, 1) = -1;  // x - y <= 4
  lp.A(1, 1) = -3;
  CHECK(solve_lp(lp).status == LpStatus::unbounded);
}

TEST_CASE("equality rows") {
  // min x + 2y + 3z  s.t.  x + y + z = 6,  y - z = 1,  x <= 2
  LpModel<double> lp;
  lp.A.resize(2, 3);
  lp.A << 1, 1, 1, 0, 1, -1;
  lp.b = Eigen::Vector2d(6, 1);
  lp.sense = {Sense::eq, Sense::eq};
  lp.cost = Eigen::Vector3d(1, 2, 3);
  lp.lower = Eigen::Vector3d::Zero();
  lp.upper = Eigen::Vector3d(2, 10, 10);
  const auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.values(0) == doctest::Approx(2));
  CHECK(s.values(1) == doctest::Approx(2.5));
  CHECK(s.values(2) == doctest::Approx(1.5));
  CHECK(s.objective == doctest::Approx(11.5));
}

TEST_CASE("other scalar types") {
  const auto f = solve_lp(one_var<float>(3, 10));
  CHECK(f.status == LpStatus::optimal);
  CHECK(f.objective == doctest::Approx(3));
  const auto ld = solve_lp(one_var<long double>(2.5L, 10));
  CHECK(ld.status == LpStatus::optimal);
  CHECK(static_cast<double>(ld.objective) == doctest::Approx(2.5));
}

TEST_CASE("warm start after bound changes") {
  DualSimplex<double> lp(textbook());
  REQUIRE(lp.solve().status == LpStatus::optimal);
  lp.set_bounds(0, 0, 1);
  auto s = lp.solve();
  REQUIRE(s.status == LpStatus::optimal);
  // x = 1 leaves y = 5/3 on the second row
  CHECK(s.objective == doctest::Approx(-3 - 2 * 5.0 / 3));
  lp.set_bounds(0, 5, 6);
  CHECK(lp.solve().status == LpStatus::infeasible);
  lp.set_bounds(0, 0, 3);
  CHECK(lp.solve().objective == doctest::Approx(-11));
}

TEST_CASE("degenerate cycling example") {
  // Beale's example: cycles under the textbook rule without anti-cycling.
  LpModel<double> lp;
  lp.A.resize(3, 4);
  lp.A << 0.25, -60, -0.04, 9, 0.5, -90, -0.02, 3, 0, 0, 1, 0;
  lp.b = Eigen::Vector3d(0, 0, 1);
  lp.sense = {Sense::le, Sense::le, Sense::le};
  lp.cost = Eigen::Vector4d(-0.75, 150, -0.02, 6);
  lp.lower = Eigen::Vector4d::Zero();
  lp.upper = Eigen::Vector4d::Constant(std::numeric_limits<double>::infinity());
  const auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(-0.05));
}

TEST_CASE("relaxation bounds the placement optimum") {
  const auto p = build_milp(build_paper_scenario(DemandClass::small, 1));
  const auto s = solve_lp(relax(p));
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective <= 15.348364 + 1e-7);
  CHECK(s.objective > 10.0);
}

}  // TEST_SUITE
