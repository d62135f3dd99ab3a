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

// Linear node power model.
//
// An active node draws its idle power, plus load / efficiency for processing,
// plus energy-per-bit times bit rate on every interface it sends or receives
// on. Inactive nodes draw nothing.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "vcloud/model.hpp"
#include "vcloud/placement.hpp"

namespace vcloud {

class Scenario;

struct PowerParams {
  std::string node_id;
  double efficiency = 0.0;  // MIPS per watt
  double idle_w = 0.0;
  std::array<double, kInterfaceKinds> tx_j_per_bit{};
  std::array<double, kInterfaceKinds> rx_j_per_bit{};

  bool operator==(const PowerParams&) const = default;
};

/// Per-kind bit rates seen by one node.
using KindRates = std::array<double, kInterfaceKinds>;

PowerParams derive_power_params(const NodeSpec& spec,
                                const ModelOptions& options);
std::vector<PowerParams> derive_power_params(const Scenario& scenario);

/// workload * 1e6 / instructions_per_bit.
double traffic_for_workload(double workload_mips, double instructions_per_bit);

double node_power(const PowerParams& params, bool active, double load_mips,
                  const KindRates& tx_bps, const KindRates& rx_bps);

struct NodePower {
  std::string node_id;
  Tier tier = Tier::vehicle;
  bool active = false;
  double idle_w = 0.0;
  double processing_w = 0.0;
  double communication_w = 0.0;
  double total_w = 0.0;
  double mips = 0.0;
};

struct TierPower {
  double idle_w = 0.0;
  double processing_w = 0.0;
  double communication_w = 0.0;
  double total_w = 0.0;
  double mips = 0.0;
};

struct PowerReport {
  std::vector<NodePower> nodes;
  std::array<TierPower, 3> tiers{};  // indexed by Tier
  double total_w = 0.0;

  const TierPower& tier(Tier t) const {
    return tiers[static_cast<std::size_t>(t)];
  }
};

/// Power of a placement. Every node serving part of a demand (other than the
/// source itself) receives the demand's full traffic along its fixed route.
/// Throws InfeasiblePlacementError if service, capacity or bandwidth limits
/// are broken.
PowerReport evaluate_placement(const Scenario& scenario,
                               const Placement& placement);

/// Capacity, bandwidth and service violations of a placement (empty when
/// feasible). Relative tolerance 1e-6.
std::vector<std::string> placement_violations(const Scenario& scenario,
                                              const Placement& placement);

/// Every demand processed in the cloud, packed first-fit over cloud nodes in
/// index order.
Placement cloud_only_placement(const Scenario& scenario);
PowerReport cloud_only_baseline(const Scenario& scenario);

/// JSON object with keys total_w, tiers, nodes (6 significant digits).
std::string power_report_json(const PowerReport& report);

}  // namespace vcloud
