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

// Placement MILP.
//
// Variables, for demand d and node n:
//   x(d,n)  MIPS of d processed on n            continuous, [0, M(d,n)]
//   y(d,n)  n serves part of d                  binary
//   a(n)    n is powered on                     binary
// with M(d,n) = min(capacity(n), workload(d)).
//
// Rows (label prefix in brackets):
//   [serve]      sum_n x(d,n) = w_d
//   [bigm]       x(d,n) - M(d,n) y(d,n) <= 0
//   [capacity]   sum_d x(d,n) - capacity(n) a(n) <= 0
//   [serving]    y(d,n) - a(n) <= 0
//   [source]     a(source(d)) = 1
//   [relay]      y(d,n) - a(m) <= 0, m an intermediate of route(source(d), n)
//   [bandwidth]  sum over (d,n) routed through link l of t_d y(d,n) <= cap(l)
//   [dsrc]       shared-medium variant: one row over all DSRC hops
//
// Objective: idle(n) a(n) + x(d,n) / efficiency(n) + t_d E(d,n) y(d,n), where
// E(d,n) sums energy_per_bit over the route links.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vcloud/placement.hpp"
#include "vcloud/scenario.hpp"
#include "vcloud/simplex.hpp"

namespace vcloud {

enum class VarKind { continuous, binary };
enum class VarRole { x, y, a };

struct Variable {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lower = 0.0;
  double upper = 0.0;
  double cost = 0.0;
  VarRole role = VarRole::x;
  std::size_t demand = 0;  // unused for a(n)
  std::size_t node = 0;
};

struct Term {
  std::size_t var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense = Sense::le;
  double rhs = 0.0;
  std::string label;
};

struct MilpProblem {
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::size_t num_demands = 0;
  std::size_t num_nodes = 0;
  RoutingView routing;
  std::vector<double> capacity;  // per node

  std::size_t x(std::size_t d, std::size_t n) const { return d * num_nodes + n; }
  std::size_t y(std::size_t d, std::size_t n) const {
    return num_demands * num_nodes + d * num_nodes + n;
  }
  std::size_t a(std::size_t n) const { return 2 * num_demands * num_nodes + n; }

  std::size_t num_variables() const { return variables.size(); }
};

MilpProblem build_milp(const Scenario& scenario);

/// Objective value of an assignment.
double objective_value(const MilpProblem& problem,
                       const std::vector<double>& values);

/// Rows and bounds broken by more than `tol` (scaled by max(1, |rhs|)).
std::vector<std::string> constraint_violations(const MilpProblem& problem,
                                               const std::vector<double>& values,
                                               double tol = 1e-7);

/// Binaries within 1e-6 of {0, 1}.
inline constexpr double kIntegralityTol = 1e-6;

/// Placement from the x part of an assignment; serving and active sets are
/// rederived from x and the routes. Throws IntegralityError on fractional
/// binaries and InfeasiblePlacementError when demands are not fully served
/// or capacities are exceeded.
Placement extract_placement(const MilpProblem& problem,
                            const std::vector<double>& values);

/// Assignment reproducing a placement: y from serving sets, a from the
/// active set.
std::vector<double> assignment_from_placement(const MilpProblem& problem,
                                              const Placement& placement);

/// Dense relaxation with binaries relaxed to [0, 1].
LpModel<double> relax(const MilpProblem& problem);

/// Fixed-column MPS text. See docs/mps_format.md.
std::string to_mps(const MilpProblem& problem, const std::string& name = "VCLOUD");

}  // namespace vcloud
