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

// Three-tier network model: vehicles (on-board units), edge nodes (access
// point + small server) and cloud servers behind the core network.
//
// A Scenario is immutable once built. Builders attach links, fill link
// energy from the power model and precompute one fixed route for every
// (demand source, candidate node) pair.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vcloud/model.hpp"

namespace vcloud {

using RouteKey = std::pair<std::size_t, std::size_t>;
using RouteTable = std::map<RouteKey, Path>;

class Scenario {
 public:
  Scenario() = default;
  Scenario(std::vector<NodeSpec> nodes, std::vector<Link> links,
           std::vector<DemandSpec> demands, RouteTable routes,
           ModelOptions options);

  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }
  const std::vector<DemandSpec>& demands() const { return demands_; }
  const RouteTable& routes() const { return routes_; }
  const ModelOptions& options() const { return options_; }

  std::size_t num_nodes() const { return nodes_.size(); }
  std::size_t num_demands() const { return demands_.size(); }

  std::optional<std::size_t> find_node(std::string_view id) const;
  std::size_t node_index(std::string_view id) const;  // throws InputError

  /// Stored route for (src, dst); throws UnreachableError when absent.
  const Path& route_between(std::size_t src, std::size_t dst) const;

  /// Directed link head -> tail of the given kind, if present.
  std::optional<std::size_t> find_link(std::size_t head, std::size_t tail,
                                       InterfaceKind kind) const;

  double total_workload() const;
  double total_capacity(Tier tier) const;

  bool operator==(const Scenario&) const = default;

 private:
  std::vector<NodeSpec> nodes_;
  std::vector<Link> links_;
  std::vector<DemandSpec> demands_;
  RouteTable routes_;
  ModelOptions options_;
};

// ---------------------------------------------------------------------------
// Table 1 node templates
// ---------------------------------------------------------------------------

inline constexpr double kDsrcCapacityBps = 27e6;
inline constexpr double kWifiCapacityBps = 150e6;
/// Uplink capacity assumed for edge and cloud core interfaces; never binds.
inline constexpr double kCoreCapacityBps = 10e9;

NodeSpec vehicle_template(std::string id);
/// Edge node = access point (25 W max, 5.5 W idle) + Raspberry Pi server
/// (12.5 W max, 2 W idle) folded into one spec.
NodeSpec edge_template(std::string id);
NodeSpec cloud_template(std::string id, double capacity_mips);

double workload_of(DemandClass demand_class);

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Links of the standard topology: DSRC between every vehicle pair, WiFi
/// between each vehicle and its access point, WiFi between edge pairs and a
/// core link between each edge and cloud node (both directions). Vehicle i
/// (in vehicle order) attaches to edge floor(i * E / V). Energies filled from
/// the power model.
std::vector<Link> standard_links(const std::vector<NodeSpec>& nodes,
                                 const ModelOptions& options);

/// Recompute link energy_per_bit from the endpoint power coefficients.
void fill_link_energy(std::vector<Link>& links,
                      const std::vector<NodeSpec>& nodes,
                      const ModelOptions& options);

/// Assemble and validate a scenario. Missing links or routes are derived.
/// Throws ValidationError listing every violated rule.
Scenario assemble_scenario(std::vector<NodeSpec> nodes,
                           std::vector<DemandSpec> demands,
                           ModelOptions options,
                           std::optional<std::vector<Link>> links = {},
                           std::optional<RouteTable> routes = {});

/// Parking lot: 20 vehicles, 4 edge nodes, cloud pool; `request_count`
/// identical demands sourced at vehicles 0..request_count-1.
Scenario build_paper_scenario(DemandClass demand_class, int request_count,
                              const ModelOptions& options = {});

/// Number of cloud nodes the standard template creates for a total workload.
std::size_t cloud_node_count(double total_workload_mips,
                             const ModelOptions& options);

// ---------------------------------------------------------------------------
// Routing and validation
// ---------------------------------------------------------------------------

/// Deterministic fixed path computed from the scenario's links.
/// Throws UnreachableError when no path exists.
Path route(const Scenario& scenario, std::size_t src, std::size_t dst);
Path route(const Scenario& scenario, std::string_view src,
           std::string_view dst);

/// Every broken invariant, one human-readable entry each. Empty when valid.
std::vector<std::string> validate_scenario(const Scenario& scenario);

// ---------------------------------------------------------------------------
// Scenario documents
// ---------------------------------------------------------------------------

/// Parse and validate a JSON scenario document.
Scenario load_scenario(std::string_view text);
/// Serialize to the scenario document format (pretty printed, stable order).
std::string serialize_scenario(const Scenario& scenario);

}  // namespace vcloud
