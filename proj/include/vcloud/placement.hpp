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

#pragma once

#include <cstddef>
#include <vector>

namespace vcloud {

class Scenario;

/// Processing assigned to one (demand, node) pair, in MIPS.
struct Allocation {
  std::size_t demand = 0;
  std::size_t node = 0;
  double mips = 0.0;

  bool operator==(const Allocation&) const = default;
};

/// Source and route intermediates for every (demand, node) pair, enough to
/// rederive serving and active sets without the full scenario.
struct RoutingView {
  std::size_t num_nodes = 0;
  std::vector<std::size_t> demand_source;
  std::vector<double> demand_workload;
  std::vector<std::vector<std::size_t>> intermediates;  // [d * num_nodes + n]

  const std::vector<std::size_t>& via(std::size_t d, std::size_t n) const {
    return intermediates[d * num_nodes + n];
  }
};

RoutingView routing_view(const Scenario& scenario);

/// Where each demand is processed. `serving` and `active` are derived from
/// the allocations: a node serves a demand when it holds a positive share,
/// and is active when it serves, originates or relays any demand.
struct Placement {
  std::vector<Allocation> allocations;  // sorted by (demand, node)
  std::vector<std::vector<std::size_t>> serving;
  std::vector<bool> active;

  double mips_on(std::size_t node) const;
  double mips_of(std::size_t demand) const;

  bool operator==(const Placement&) const = default;
};

/// Allocations at or below this many MIPS are treated as absent.
inline constexpr double kAllocationThreshold = 1e-9;

/// Normalize allocations (merge duplicates, drop ~zero shares, sort) and
/// derive serving and active sets.
Placement make_placement(std::vector<Allocation> allocations,
                         const RoutingView& view);
Placement make_placement(std::vector<Allocation> allocations,
                         const Scenario& scenario);

}  // namespace vcloud
