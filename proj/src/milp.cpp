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

#include "vcloud/milp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "vcloud/numeric.hpp"
#include "vcloud/power.hpp"

namespace vcloud {

MilpProblem build_milp(const Scenario& s) {
  const auto D = s.num_demands();
  const auto N = s.num_nodes();
  const auto& nodes = s.nodes();
  const auto& demands = s.demands();
  const auto params = derive_power_params(s);

  MilpProblem p;
  p.num_demands = D;
  p.num_nodes = N;
  p.routing = routing_view(s);
  for (const auto& node : nodes) p.capacity.push_back(node.capacity_mips);

  auto pair_name = [&](std::size_t d, std::size_t n) {
    return demands[d].id + "," + nodes[n].id;
  };

  std::vector<const Path*> routes(D * N);
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t n = 0; n < N; ++n) {
      routes[d * N + n] = &s.route_between(demands[d].source, n);
    }
  }

  p.variables.resize(2 * D * N + N);
  for (std::size_t d = 0; d < D; ++d) {
    const double w = demands[d].workload_mips;
    const double t = demands[d].traffic_bps;
    for (std::size_t n = 0; n < N; ++n) {
      auto& x = p.variables[p.x(d, n)];
      x.name = "x(" + pair_name(d, n) + ")";
      x.kind = VarKind::continuous;
      x.upper = std::min(nodes[n].capacity_mips, w);
      x.cost = 1.0 / params[n].efficiency;
      x.role = VarRole::x;
      x.demand = d;
      x.node = n;

      double energy = 0.0;
      for (auto l : routes[d * N + n]->links) energy += s.links()[l].energy_per_bit;
      auto& y = p.variables[p.y(d, n)];
      y.name = "y(" + pair_name(d, n) + ")";
      y.kind = VarKind::binary;
      y.upper = 1.0;
      y.cost = t * energy;
      y.role = VarRole::y;
      y.demand = d;
      y.node = n;
    }
  }
  for (std::size_t n = 0; n < N; ++n) {
    auto& a = p.variables[p.a(n)];
    a.name = "a(" + nodes[n].id + ")";
    a.kind = VarKind::binary;
    a.upper = 1.0;
    a.cost = params[n].idle_w;
    a.role = VarRole::a;
    a.node = n;
  }

  auto& rows = p.constraints;
  for (std::size_t d = 0; d < D; ++d) {
    Constraint c{{}, Sense::eq, demands[d].workload_mips, "serve[" + demands[d].id + "]"};
    for (std::size_t n = 0; n < N; ++n) c.terms.push_back({p.x(d, n), 1.0});
    rows.push_back(std::move(c));
  }
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t n = 0; n < N; ++n) {
      rows.push_back({{{p.x(d, n), 1.0}, {p.y(d, n), -p.variables[p.x(d, n)].upper}},
                      Sense::le, 0.0, "bigm[" + pair_name(d, n) + "]"});
    }
  }
  for (std::size_t n = 0; n < N; ++n) {
    Constraint c{{}, Sense::le, 0.0, "capacity[" + nodes[n].id + "]"};
    for (std::size_t d = 0; d < D; ++d) c.terms.push_back({p.x(d, n), 1.0});
    c.terms.push_back({p.a(n), -nodes[n].capacity_mips});
    rows.push_back(std::move(c));
  }
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t n = 0; n < N; ++n) {
      rows.push_back({{{p.y(d, n), 1.0}, {p.a(n), -1.0}}, Sense::le, 0.0,
                      "serving[" + pair_name(d, n) + "]"});
    }
  }
  for (std::size_t d = 0; d < D; ++d) {
    rows.push_back({{{p.a(demands[d].source), 1.0}}, Sense::eq, 1.0,
                    "source[" + demands[d].id + "]"});
  }
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t n = 0; n < N; ++n) {
      for (auto m : routes[d * N + n]->intermediates) {
        rows.push_back({{{p.y(d, n), 1.0}, {p.a(m), -1.0}}, Sense::le, 0.0,
                        "relay[" + pair_name(d, n) + "," + nodes[m].id + "]"});
      }
    }
  }

  const bool shared = s.options().dsrc_medium == DsrcMedium::shared;
  const auto& links = s.links();
  std::vector<std::vector<Term>> load(links.size());
  std::map<std::size_t, double> dsrc_load;
  double dsrc_capacity = 0.0;
  for (const auto& link : links) {
    if (link.kind == InterfaceKind::dsrc) {
      dsrc_capacity = dsrc_capacity == 0.0 ? link.capacity_bps
                                           : std::min(dsrc_capacity, link.capacity_bps);
    }
  }
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t n = 0; n < N; ++n) {
      for (auto l : routes[d * N + n]->links) {
        if (shared && links[l].kind == InterfaceKind::dsrc) {
          dsrc_load[p.y(d, n)] += demands[d].traffic_bps;
        } else {
          load[l].push_back({p.y(d, n), demands[d].traffic_bps});
        }
      }
    }
  }
  for (std::size_t l = 0; l < links.size(); ++l) {
    if (load[l].empty()) continue;
    rows.push_back({std::move(load[l]), Sense::le, links[l].capacity_bps,
                    "bandwidth[" + links[l].id + "]"});
  }
  if (!dsrc_load.empty()) {
    Constraint c{{}, Sense::le, dsrc_capacity, "dsrc_shared"};
    for (const auto& [var, coef] : dsrc_load) c.terms.push_back({var, coef});
    rows.push_back(std::move(c));
  }
  return p;
}

double objective_value(const MilpProblem& problem, const std::vector<double>& values) {
  double total = 0.0;
  for (std::size_t j = 0; j < problem.variables.size(); ++j) {
    total += problem.variables[j].cost * values.at(j);
  }
  return total;
}

std::vector<std::string> constraint_violations(const MilpProblem& problem,
                                               const std::vector<double>& values,
                                               double tol) {
  std::vector<std::string> out;
  if (values.size() != problem.variables.size()) {
    out.push_back("assignment has " + std::to_string(values.size()) +
                  " values for " + std::to_string(problem.variables.size()) + " variables");
    return out;
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    const auto& v = problem.variables[j];
    const double slack = tol * std::max(1.0, std::abs(v.upper));
    if (values[j] < v.lower - slack || values[j] > v.upper + slack) {
      out.push_back(v.name + " = " + format_sig(values[j]) + " outside [" +
                    format_sig(v.lower) + ", " + format_sig(v.upper) + "]");
    } else if (v.kind == VarKind::binary &&
               std::min(std::abs(values[j]), std::abs(values[j] - 1.0)) > kIntegralityTol) {
      out.push_back(v.name + " = " + format_sig(values[j]) + " is not binary");
    }
  }
  for (const auto& c : problem.constraints) {
    double act = 0.0;
    for (const auto& t : c.terms) act += t.coef * values[t.var];
    const double slack = tol * std::max(1.0, std::abs(c.rhs));
    const bool bad = (c.sense == Sense::le && act > c.rhs + slack) ||
                     (c.sense == Sense::ge && act < c.rhs - slack) ||
                     (c.sense == Sense::eq && std::abs(act - c.rhs) > slack);
    if (bad) {
      out.push_back(c.label + ": " + format_sig(act) + " " +
                    std::string(to_string(c.sense)) + " " + format_sig(c.rhs));
    }
  }
  return out;
}

Placement extract_placement(const MilpProblem& problem, const std::vector<double>& values) {
  if (values.size() != problem.variables.size()) {
    throw InputError("assignment length " + std::to_string(values.size()) +
                     " does not match " + std::to_string(problem.variables.size()) +
                     " variables");
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    const auto& v = problem.variables[j];
    if (v.kind != VarKind::binary) continue;
    if (std::min(std::abs(values[j]), std::abs(values[j] - 1.0)) > kIntegralityTol) {
      throw IntegralityError(v.name + " = " + format_sig(values[j]) + " is fractional");
    }
  }
  const auto D = problem.num_demands;
  const auto N = problem.num_nodes;
  std::vector<Allocation> allocs;
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t n = 0; n < N; ++n) {
      const double v = values[problem.x(d, n)];
      if (v > kAllocationThreshold) allocs.push_back({d, n, v});
    }
  }
  Placement placement = make_placement(std::move(allocs), problem.routing);

  std::vector<std::string> violations;
  for (std::size_t d = 0; d < D; ++d) {
    const double w = problem.routing.demand_workload[d];
    const double got = placement.mips_of(d);
    if (std::abs(got - w) > 1e-6 * std::max(1.0, w)) {
      violations.push_back("demand " + std::to_string(d) + " served " + format_sig(got) +
                           " of " + format_sig(w) + " MIPS");
    }
  }
  for (std::size_t n = 0; n < N; ++n) {
    const double load = placement.mips_on(n);
    if (load > problem.capacity[n] * (1.0 + 1e-6)) {
      violations.push_back("node " + std::to_string(n) + " load " + format_sig(load) +
                           " exceeds capacity " + format_sig(problem.capacity[n]));
    }
  }
  if (!violations.empty()) throw InfeasiblePlacementError(std::move(violations));
  return placement;
}

std::vector<double> assignment_from_placement(const MilpProblem& problem,
                                              const Placement& placement) {
  std::vector<double> values(problem.variables.size(), 0.0);
  for (const auto& a : placement.allocations) {
    values[problem.x(a.demand, a.node)] = a.mips;
    values[problem.y(a.demand, a.node)] = 1.0;
  }
  for (std::size_t n = 0; n < problem.num_nodes && n < placement.active.size(); ++n) {
    if (placement.active[n]) values[problem.a(n)] = 1.0;
  }
  return values;
}

LpModel<double> relax(const MilpProblem& problem) {
  const auto m = static_cast<Eigen::Index>(problem.constraints.size());
  const auto n = static_cast<Eigen::Index>(problem.variables.size());
  LpModel<double> lp;
  lp.A = Eigen::MatrixXd::Zero(m, n);
  lp.b.resize(m);
  lp.cost.resize(n);
  lp.lower.resize(n);
  lp.upper.resize(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    double scale = 0.0;
    for (const auto& t : c.terms) scale = std::max(scale, std::abs(t.coef));
    if (scale == 0.0) scale = 1.0;
    for (const auto& t : c.terms) lp.A(i, t.var) += t.coef / scale;
    lp.b(i) = c.rhs / scale;
    lp.sense.push_back(c.sense);
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& v = problem.variables[j];
    lp.cost(j) = v.cost;
    lp.lower(j) = v.lower;
    lp.upper(j) = v.upper;
  }
  return lp;
}

namespace {

// Shortest decimal text of at most 12 characters.
std::string mps_number(double v) {
  char buf[32];
  for (int digits = 12; digits > 0; --digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    if (std::string(buf).size() <= 12) return buf;
  }
  return buf;
}

std::string mps_line(const std::string& f1, const std::string& f2,
                     const std::string& f3, const std::string& f4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " %-2s %-8s  %-8s  %12s", f1.c_str(), f2.c_str(),
                f3.c_str(), f4.c_str());
  std::string line = buf;
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line + "\n";
}

std::string code(char prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%07zu", prefix, i);
  return buf;
}

}  // namespace

std::string to_mps(const MilpProblem& problem, const std::string& name) {
  std::string out;
  out += "* vcloud placement model\n";
  for (std::size_t j = 0; j < problem.variables.size(); ++j) {
    out += "* " + code('C', j) + " " + problem.variables[j].name + "\n";
  }
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    out += "* " + code('R', i) + " " + problem.constraints[i].label + "\n";
  }
  out += "NAME          " + name.substr(0, 8) + "\n";
  out += "ROWS\n";
  out += " N  COST\n";
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const char* s = problem.constraints[i].sense == Sense::le   ? "L"
                    : problem.constraints[i].sense == Sense::ge ? "G"
                                                                : "E";
    out += std::string(" ") + s + "  " + code('R', i) + "\n";
  }

  std::vector<std::vector<std::pair<std::size_t, double>>> cols(problem.variables.size());
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    for (const auto& t : problem.constraints[i].terms) cols[t.var].push_back({i, t.coef});
  }
  out += "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  auto toggle = [&](bool want) {
    if (want == in_int) return;
    char buf[80];
    std::snprintf(buf, sizeof buf, "    M%07d  'MARKER'                 '%s'\n", marker++,
                  want ? "INTORG" : "INTEND");
    out += buf;
    in_int = want;
  };
  for (std::size_t j = 0; j < problem.variables.size(); ++j) {
    const auto& v = problem.variables[j];
    toggle(v.kind == VarKind::binary);
    if (v.cost != 0.0) out += mps_line("", code('C', j), "COST", mps_number(v.cost));
    std::sort(cols[j].begin(), cols[j].end());
    for (const auto& [row, coef] : cols[j]) {
      out += mps_line("", code('C', j), code('R', row), mps_number(coef));
    }
  }
  toggle(false);

  out += "RHS\n";
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const double rhs = problem.constraints[i].rhs;
    if (rhs != 0.0) out += mps_line("", "RHS", code('R', i), mps_number(rhs));
  }
  out += "BOUNDS\n";
  for (std::size_t j = 0; j < problem.variables.size(); ++j) {
    const auto& v = problem.variables[j];
    if (v.kind == VarKind::binary && v.lower == 0.0 && v.upper == 1.0) {
      out += mps_line("BV", "BND", code('C', j), "");
      continue;
    }
    if (v.lower != 0.0) out += mps_line("LO", "BND", code('C', j), mps_number(v.lower));
    out += mps_line("UP", "BND", code('C', j), mps_number(v.upper));
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace vcloud
