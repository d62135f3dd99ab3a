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

// Exhaustive enumeration of serving patterns.
//
// Deliberately shares nothing with build_milp: activation, link loads and
// communication power are recomputed here from the scenario's routes and the
// power model for each pattern.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>

#include "vcloud/power.hpp"
#include "vcloud/solver.hpp"

namespace vcloud {

MilpSolution exhaustive_oracle(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  const auto D = s.num_demands();
  const auto N = s.num_nodes();
  if (D * N > kOracleMaxPairs) {
    throw InputError("oracle budget exceeded: " + std::to_string(D) + " demands x " +
                     std::to_string(N) + " nodes > " + std::to_string(kOracleMaxPairs) +
                     " pairs");
  }
  const auto params = derive_power_params(s);
  const auto& nodes = s.nodes();
  const auto& demands = s.demands();
  const auto& links = s.links();
  const bool shared = s.options().dsrc_medium == DsrcMedium::shared;
  double dsrc_capacity = std::numeric_limits<double>::infinity();
  for (const auto& l : links) {
    if (l.kind == InterfaceKind::dsrc) dsrc_capacity = std::min(dsrc_capacity, l.capacity_bps);
  }

  // Per pair: route, communication watts if served.
  std::vector<const Path*> route(D * N);
  std::vector<double> comm_w(D * N, 0.0);
  for (std::size_t d = 0; d < D; ++d) {
    for (std::size_t n = 0; n < N; ++n) {
      route[d * N + n] = &s.route_between(demands[d].source, n);
      const double t = demands[d].traffic_bps;
      double w = 0.0;
      for (auto l : route[d * N + n]->links) {
        const auto k = index_of(links[l].kind);
        w += t * (params[links[l].head].tx_j_per_bit[k] + params[links[l].tail].rx_j_per_bit[k]);
      }
      comm_w[d * N + n] = w;
    }
  }

  MilpSolution best;
  best.status = SolveStatus::infeasible;
  double best_obj = std::numeric_limits<double>::infinity();
  std::vector<Allocation> best_alloc;
  long lp_solves = 0, iterations = 0;

  const std::uint32_t patterns = 1u << (D * N);
  std::vector<bool> active(N);
  std::vector<double> load(links.size());
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    auto on = [&](std::size_t d, std::size_t n) { return (mask >> (d * N + n)) & 1u; };

    // Every demand needs enough serving capacity.
    bool coverable = true;
    for (std::size_t d = 0; d < D && coverable; ++d) {
      double cap = 0.0;
      for (std::size_t n = 0; n < N; ++n) {
        if (on(d, n)) cap += std::min(nodes[n].capacity_mips, demands[d].workload_mips);
      }
      coverable = cap >= demands[d].workload_mips * (1.0 - 1e-12);
    }
    if (!coverable) continue;

    std::fill(active.begin(), active.end(), false);
    std::fill(load.begin(), load.end(), 0.0);
    double fixed_w = 0.0;
    double dsrc_load = 0.0;
    for (std::size_t d = 0; d < D; ++d) {
      active[demands[d].source] = true;
      for (std::size_t n = 0; n < N; ++n) {
        if (!on(d, n)) continue;
        active[n] = true;
        for (auto m : route[d * N + n]->intermediates) active[m] = true;
        for (auto l : route[d * N + n]->links) {
          if (shared && links[l].kind == InterfaceKind::dsrc) {
            dsrc_load += demands[d].traffic_bps;
          } else {
            load[l] += demands[d].traffic_bps;
          }
        }
        fixed_w += comm_w[d * N + n];
      }
    }
    bool fits = dsrc_load <= dsrc_capacity * (1.0 + 1e-9);
    for (std::size_t l = 0; l < links.size() && fits; ++l) {
      fits = load[l] <= links[l].capacity_bps * (1.0 + 1e-9);
    }
    if (!fits) continue;
    for (std::size_t n = 0; n < N; ++n) {
      if (active[n]) fixed_w += params[n].idle_w;
    }
    if (fixed_w >= best_obj + 1e-9) continue;

    // Processing split over the chosen pairs.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t d = 0; d < D; ++d) {
      for (std::size_t n = 0; n < N; ++n) {
        if (on(d, n)) pairs.emplace_back(d, n);
      }
    }
    const auto P = static_cast<Eigen::Index>(pairs.size());
    LpModel<double> lp;
    lp.A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(D + N), P);
    lp.b.resize(static_cast<Eigen::Index>(D + N));
    lp.cost.resize(P);
    lp.lower = Eigen::VectorXd::Zero(P);
    lp.upper.resize(P);
    for (std::size_t d = 0; d < D; ++d) {
      lp.b(static_cast<Eigen::Index>(d)) = demands[d].workload_mips;
      lp.sense.push_back(Sense::eq);
    }
    for (std::size_t n = 0; n < N; ++n) {
      lp.b(static_cast<Eigen::Index>(D + n)) = nodes[n].capacity_mips;
      lp.sense.push_back(Sense::le);
    }
    for (Eigen::Index k = 0; k < P; ++k) {
      const auto [d, n] = pairs[k];
      lp.A(static_cast<Eigen::Index>(d), k) = 1.0;
      lp.A(static_cast<Eigen::Index>(D + n), k) = 1.0;
      lp.cost(k) = 1.0 / params[n].efficiency;
      lp.upper(k) = std::min(nodes[n].capacity_mips, demands[d].workload_mips);
    }
    const auto sol = solve_lp(lp);
    ++lp_solves;
    iterations += sol.iterations;
    if (sol.status != LpStatus::optimal) continue;
    const double total = fixed_w + sol.objective;
    if (total < best_obj - 1e-9) {
      best_obj = total;
      best_alloc.clear();
      for (Eigen::Index k = 0; k < P; ++k) {
        best_alloc.push_back({pairs[k].first, pairs[k].second, sol.values(k)});
      }
    }
  }

  best.stats.nodes = lp_solves;
  best.stats.lp_iterations = iterations;
  const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start;
  best.stats.wall_ms = dt.count();
  if (!std::isfinite(best_obj)) return best;
  best.status = SolveStatus::optimal;
  best.objective = best_obj;
  best.stats.best_bound = best_obj;
  best.placement = make_placement(best_alloc, s);
  return best;
}

}  // namespace vcloud
