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

#include "vcloud/placement.hpp"

#include <algorithm>
#include <tuple>

#include "vcloud/scenario.hpp"

namespace vcloud {

RoutingView routing_view(const Scenario& scenario) {
  RoutingView view;
  const auto N = scenario.num_nodes();
  view.num_nodes = N;
  view.intermediates.resize(scenario.num_demands() * N);
  for (std::size_t d = 0; d < scenario.num_demands(); ++d) {
    const auto& demand = scenario.demands()[d];
    view.demand_source.push_back(demand.source);
    view.demand_workload.push_back(demand.workload_mips);
    for (std::size_t n = 0; n < N; ++n) {
      auto it = scenario.routes().find({demand.source, n});
      if (it != scenario.routes().end()) {
        view.intermediates[d * N + n] = it->second.intermediates;
      }
    }
  }
  return view;
}

Placement make_placement(std::vector<Allocation> allocations,
                         const RoutingView& view) {
  const auto D = view.demand_source.size();
  const auto N = view.num_nodes;
  for (const auto& a : allocations) {
    if (a.demand >= D || a.node >= N) {
      throw InputError("allocation refers to a missing demand or node");
    }
    if (a.mips < -kAllocationThreshold) throw InputError("negative allocation");
  }
  std::sort(allocations.begin(), allocations.end(),
            [](const Allocation& a, const Allocation& b) {
              return std::tie(a.demand, a.node) < std::tie(b.demand, b.node);
            });

  Placement p;
  for (const auto& a : allocations) {
    if (!p.allocations.empty() && p.allocations.back().demand == a.demand &&
        p.allocations.back().node == a.node) {
      p.allocations.back().mips += a.mips;
    } else {
      p.allocations.push_back(a);
    }
  }
  std::erase_if(p.allocations, [](const Allocation& a) {
    return a.mips <= kAllocationThreshold;
  });

  p.serving.assign(D, {});
  p.active.assign(N, false);
  for (std::size_t d = 0; d < D; ++d) p.active[view.demand_source[d]] = true;
  for (const auto& a : p.allocations) {
    p.serving[a.demand].push_back(a.node);
    p.active[a.node] = true;
    for (auto m : view.via(a.demand, a.node)) p.active[m] = true;
  }
  return p;
}

Placement make_placement(std::vector<Allocation> allocations,
                         const Scenario& scenario) {
  return make_placement(std::move(allocations), routing_view(scenario));
}

double Placement::mips_on(std::size_t node) const {
  double total = 0.0;
  for (const auto& a : allocations) {
    if (a.node == node) total += a.mips;
  }
  return total;
}

double Placement::mips_of(std::size_t demand) const {
  double total = 0.0;
  for (const auto& a : allocations) {
    if (a.demand == demand) total += a.mips;
  }
  return total;
}

}  // namespace vcloud
