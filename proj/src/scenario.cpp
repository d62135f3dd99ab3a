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

#include "vcloud/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>

#include "vcloud/numeric.hpp"
#include "vcloud/power.hpp"

namespace vcloud {

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

Scenario::Scenario(std::vector<NodeSpec> nodes, std::vector<Link> links,
                   std::vector<DemandSpec> demands, RouteTable routes,
                   ModelOptions options)
    : nodes_(std::move(nodes)),
      links_(std::move(links)),
      demands_(std::move(demands)),
      routes_(std::move(routes)),
      options_(options) {
  for (const auto& link : links_) {
    if (link.head >= nodes_.size() || link.tail >= nodes_.size()) {
      throw ValidationError("link " + link.id + " references a missing node");
    }
  }
  for (const auto& demand : demands_) {
    if (demand.source >= nodes_.size()) {
      throw ValidationError("demand " + demand.id + " references a missing node");
    }
  }
}

std::optional<std::size_t> Scenario::find_node(std::string_view id) const {
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    if (nodes_[n].id == id) return n;
  }
  return std::nullopt;
}

std::size_t Scenario::node_index(std::string_view id) const {
  if (auto n = find_node(id)) return *n;
  throw InputError("unknown node \"" + std::string(id) + "\"");
}

const Path& Scenario::route_between(std::size_t src, std::size_t dst) const {
  auto it = routes_.find({src, dst});
  if (it == routes_.end()) {
    const auto name = [&](std::size_t n) {
      return n < nodes_.size() ? nodes_[n].id : std::to_string(n);
    };
    throw UnreachableError("no route from " + name(src) + " to " + name(dst));
  }
  return it->second;
}

std::optional<std::size_t> Scenario::find_link(std::size_t head,
                                               std::size_t tail,
                                               InterfaceKind kind) const {
  for (std::size_t l = 0; l < links_.size(); ++l) {
    const auto& link = links_[l];
    if (link.head == head && link.tail == tail && link.kind == kind) return l;
  }
  return std::nullopt;
}

double Scenario::total_workload() const {
  double total = 0.0;
  for (const auto& d : demands_) total += d.workload_mips;
  return total;
}

double Scenario::total_capacity(Tier tier) const {
  double total = 0.0;
  for (const auto& n : nodes_) {
    if (n.tier == tier) total += n.capacity_mips;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Templates
// ---------------------------------------------------------------------------

NodeSpec vehicle_template(std::string id) {
  return NodeSpec{std::move(id), Tier::vehicle, 10.0, 5.0, 0.58, 0.21, 1600.0,
                  {{InterfaceKind::dsrc, kDsrcCapacityBps},
                   {InterfaceKind::wifi, kWifiCapacityBps}}};
}

NodeSpec edge_template(std::string id) {
  // 30 W of dynamic power: 10.5 W server, 19.5 W access point.
  return NodeSpec{std::move(id), Tier::edge, 37.5, 7.5, 0.35, 0.65, 3600.0,
                  {{InterfaceKind::wifi, kWifiCapacityBps},
                   {InterfaceKind::core, kCoreCapacityBps}}};
}

NodeSpec cloud_template(std::string id, double capacity_mips) {
  // 100 W of processing power per 10000 MIPS server.
  const double max_power = 201.0 + 100.0 * capacity_mips / 10000.0;
  return NodeSpec{std::move(id), Tier::cloud, max_power, 201.0, 1.0, 0.0,
                  capacity_mips, {{InterfaceKind::core, kCoreCapacityBps}}};
}

double workload_of(DemandClass demand_class) {
  switch (demand_class) {
    case DemandClass::small: return 2880.0;
    case DemandClass::medium: return 2 * 2880.0;
    case DemandClass::large: return 4 * 2880.0;
  }
  throw InputError("unknown demand class");
}

// ---------------------------------------------------------------------------
// Links
// ---------------------------------------------------------------------------

void fill_link_energy(std::vector<Link>& links,
                      const std::vector<NodeSpec>& nodes,
                      const ModelOptions& options) {
  std::vector<PowerParams> params;
  params.reserve(nodes.size());
  for (const auto& node : nodes) params.push_back(derive_power_params(node, options));
  for (auto& link : links) {
    const auto k = index_of(link.kind);
    link.energy_per_bit = params[link.head].tx_j_per_bit[k] +
                          params[link.tail].rx_j_per_bit[k];
  }
}

std::vector<Link> standard_links(const std::vector<NodeSpec>& nodes,
                                 const ModelOptions& options) {
  std::vector<std::size_t> vehicles, edges, clouds;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    switch (nodes[n].tier) {
      case Tier::vehicle: vehicles.push_back(n); break;
      case Tier::edge: edges.push_back(n); break;
      case Tier::cloud: clouds.push_back(n); break;
    }
  }

  std::vector<Link> links;
  auto connect = [&](std::size_t head, std::size_t tail, InterfaceKind kind) {
    const auto a = nodes[head].interface_capacity(kind);
    const auto b = nodes[tail].interface_capacity(kind);
    if (!a || !b) return;
    links.push_back(Link{nodes[head].id + "-" + nodes[tail].id + ":" +
                             std::string(to_string(kind)),
                         head, tail, kind, std::min(*a, *b), 0.0});
  };

  for (auto i : vehicles) {
    for (auto j : vehicles) {
      if (i != j) connect(i, j, InterfaceKind::dsrc);
    }
  }
  if (!edges.empty()) {
    for (std::size_t i = 0; i < vehicles.size(); ++i) {
      const auto ap = edges[i * edges.size() / vehicles.size()];
      connect(vehicles[i], ap, InterfaceKind::wifi);
      connect(ap, vehicles[i], InterfaceKind::wifi);
    }
  }
  for (auto a : edges) {
    for (auto b : edges) {
      if (a != b) connect(a, b, InterfaceKind::wifi);
    }
  }
  for (auto e : edges) {
    for (auto c : clouds) {
      connect(e, c, InterfaceKind::core);
      connect(c, e, InterfaceKind::core);
    }
  }
  fill_link_energy(links, nodes, options);
  return links;
}

// ---------------------------------------------------------------------------
// Routing
// ---------------------------------------------------------------------------

namespace {

Path make_path(const Scenario& s, std::vector<std::size_t> links) {
  Path path;
  path.links = std::move(links);
  for (std::size_t i = 0; i + 1 < path.links.size(); ++i) {
    path.intermediates.push_back(s.links()[path.links[i]].tail);
  }
  return path;
}

// Lowest-index edge node the vehicle has a WiFi uplink to.
std::optional<std::size_t> access_point(const Scenario& s, std::size_t vehicle) {
  std::optional<std::size_t> best;
  for (const auto& link : s.links()) {
    if (link.head == vehicle && link.kind == InterfaceKind::wifi &&
        s.nodes()[link.tail].tier == Tier::edge) {
      if (!best || link.tail < *best) best = link.tail;
    }
  }
  return best;
}

// Fewest hops, expanding neighbours in increasing node index.
std::optional<Path> shortest_path(const Scenario& s, std::size_t src,
                                  std::size_t dst) {
  const auto n = s.num_nodes();
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t l = 0; l < s.links().size(); ++l) out[s.links()[l].head].push_back(l);
  for (auto& ls : out) {
    std::stable_sort(ls.begin(), ls.end(), [&](std::size_t a, std::size_t b) {
      return s.links()[a].tail < s.links()[b].tail;
    });
  }
  std::vector<std::optional<std::size_t>> via(n);
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{src};
  seen[src] = true;
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    if (u == dst) break;
    for (auto l : out[u]) {
      const auto v = s.links()[l].tail;
      if (seen[v]) continue;
      seen[v] = true;
      via[v] = l;
      queue.push_back(v);
    }
  }
  if (!seen[dst]) return std::nullopt;
  std::vector<std::size_t> links;
  for (auto v = dst; v != src; v = s.links()[*via[v]].head) links.push_back(*via[v]);
  std::reverse(links.begin(), links.end());
  return make_path(s, std::move(links));
}

}  // namespace

Path route(const Scenario& s, std::size_t src, std::size_t dst) {
  const auto& nodes = s.nodes();
  if (src >= nodes.size() || dst >= nodes.size()) {
    throw InputError("route endpoint out of range");
  }
  auto unreachable = [&]() -> UnreachableError {
    return UnreachableError("no path from " + nodes[src].id + " to " + nodes[dst].id);
  };
  if (src == dst) return {};

  const Tier from = nodes[src].tier;
  const Tier to = nodes[dst].tier;
  if (from == Tier::vehicle) {
    if (to == Tier::vehicle) {
      if (auto l = s.find_link(src, dst, InterfaceKind::dsrc)) return make_path(s, {*l});
      throw unreachable();
    }
    if (to == Tier::edge) {
      if (auto l = s.find_link(src, dst, InterfaceKind::wifi)) return make_path(s, {*l});
    }
    const auto ap = access_point(s, src);
    if (!ap) throw unreachable();
    const auto up = *s.find_link(src, *ap, InterfaceKind::wifi);
    const auto kind = to == Tier::cloud ? InterfaceKind::core : InterfaceKind::wifi;
    if (auto l = s.find_link(*ap, dst, kind)) return make_path(s, {up, *l});
    throw unreachable();
  }
  if (from == Tier::edge && to != Tier::vehicle) {
    const auto kind = to == Tier::cloud ? InterfaceKind::core : InterfaceKind::wifi;
    if (auto l = s.find_link(src, dst, kind)) return make_path(s, {*l});
    throw unreachable();
  }
  if (auto path = shortest_path(s, src, dst)) return *path;
  throw unreachable();
}

Path route(const Scenario& scenario, std::string_view src, std::string_view dst) {
  return route(scenario, scenario.node_index(src), scenario.node_index(dst));
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

void check_node(const NodeSpec& n, std::vector<std::string>& out) {
  const auto where = "node " + n.id + ": ";
  auto fail = [&](const std::string& what) { out.push_back(where + what); };
  if (n.id.empty()) out.push_back("node with empty id");
  if (!(n.idle_power_w >= 0.0) || !(n.max_power_w >= 0.0)) {
    fail("powers must be non-negative");
  } else if (n.idle_power_w > n.max_power_w) {
    fail("idle_power " + format_sig(n.idle_power_w) + " W exceeds max_power " +
         format_sig(n.max_power_w) + " W");
  }
  if (!(n.processing_fraction >= 0.0 && n.processing_fraction <= 1.0) ||
      !(n.communication_fraction >= 0.0 && n.communication_fraction <= 1.0)) {
    fail("power fractions must lie in [0, 1]");
  } else if (n.processing_fraction + n.communication_fraction > 1.0 + 1e-12) {
    fail("processing_fraction + communication_fraction exceeds 1");
  }
  if (!(n.capacity_mips > 0.0) || !std::isfinite(n.capacity_mips)) {
    fail("capacity must be positive and finite");
  }
  for (const auto& iface : n.interfaces) {
    if (!(iface.capacity_bps > 0.0)) {
      fail(std::string(to_string(iface.kind)) + " interface capacity must be positive");
    }
  }
  auto require = [&](InterfaceKind kind) {
    if (!n.interface_capacity(kind)) {
      fail("missing " + std::string(to_string(kind)) + " interface");
    }
  };
  switch (n.tier) {
    case Tier::vehicle:
      require(InterfaceKind::dsrc);
      require(InterfaceKind::wifi);
      break;
    case Tier::edge: require(InterfaceKind::wifi); break;
    case Tier::cloud: require(InterfaceKind::core); break;
  }
}

// Returns an error string for the first broken rule of one route, if any.
std::optional<std::string> check_route(const Scenario& s, std::size_t src,
                                       std::size_t dst, const Path& path) {
  const auto& links = s.links();
  const auto name = "route " + s.nodes()[src].id + "->" + s.nodes()[dst].id + ": ";
  if (src == dst) {
    if (!path.empty()) return name + "self route must be empty";
    return std::nullopt;
  }
  if (path.empty()) return name + "empty route between distinct nodes";
  for (auto l : path.links) {
    if (l >= links.size()) return name + "unknown link";
  }
  if (links[path.links.front()].head != src) return name + "does not start at source";
  if (links[path.links.back()].tail != dst) return name + "does not end at destination";
  std::set<std::size_t> visited{src};
  std::vector<std::size_t> inner;
  for (std::size_t i = 0; i < path.links.size(); ++i) {
    const auto& link = links[path.links[i]];
    if (i > 0 && links[path.links[i - 1]].tail != link.head) {
      return name + "links " + links[path.links[i - 1]].id + " and " + link.id +
             " are not connected";
    }
    if (!visited.insert(link.tail).second) return name + "repeats node " + s.nodes()[link.tail].id;
    if (i + 1 < path.links.size()) inner.push_back(link.tail);
  }
  if (inner != path.intermediates) return name + "intermediate nodes do not match links";
  return std::nullopt;
}

}  // namespace

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> out;
  const auto& nodes = s.nodes();
  const auto& opt = s.options();

  if (!(opt.instructions_per_bit > 0.0)) out.push_back("options: instructions_per_bit must be positive");
  if (!(opt.cloud_path_energy_per_bit > 0.0)) out.push_back("options: cloud_path_energy_per_bit must be positive");
  if (!(opt.cloud_server_capacity > 0.0)) out.push_back("options: cloud_server_capacity must be positive");

  std::set<std::string> ids;
  std::vector<bool> node_ok(nodes.size(), true);
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    const auto before = out.size();
    if (!ids.insert(nodes[n].id).second) out.push_back("node " + nodes[n].id + ": duplicate id");
    check_node(nodes[n], out);
    node_ok[n] = out.size() == before;
  }

  std::vector<std::optional<PowerParams>> params(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (!node_ok[n]) continue;
    try {
      params[n] = derive_power_params(nodes[n], opt);
    } catch (const DerivationError& e) {
      out.push_back(e.what());
    }
  }

  std::set<std::string> link_ids;
  for (const auto& link : s.links()) {
    const auto where = "link " + link.id + ": ";
    if (!link_ids.insert(link.id).second) out.push_back(where + "duplicate id");
    if (link.head == link.tail) {
      out.push_back(where + "head equals tail");
      continue;
    }
    const auto a = nodes[link.head].interface_capacity(link.kind);
    const auto b = nodes[link.tail].interface_capacity(link.kind);
    if (!a || !b) {
      out.push_back(where + "endpoint lacks a " + std::string(to_string(link.kind)) + " interface");
      continue;
    }
    if (!approx_equal(link.capacity_bps, std::min(*a, *b))) {
      out.push_back(where + "capacity differs from endpoint interfaces");
    }
    if (!(link.energy_per_bit >= 0.0)) {
      out.push_back(where + "negative energy_per_bit");
    } else if (params[link.head] && params[link.tail]) {
      const auto k = index_of(link.kind);
      const double expect = params[link.head]->tx_j_per_bit[k] + params[link.tail]->rx_j_per_bit[k];
      if (!approx_equal(link.energy_per_bit, expect, 1e-9)) {
        out.push_back(where + "energy_per_bit inconsistent with endpoint power coefficients");
      }
    }
  }

  std::set<std::string> demand_ids;
  std::set<std::size_t> sources;
  for (const auto& d : s.demands()) {
    const auto where = "demand " + d.id + ": ";
    if (!demand_ids.insert(d.id).second) out.push_back(where + "duplicate id");
    if (nodes[d.source].tier != Tier::vehicle) out.push_back(where + "source is not a vehicle");
    if (!(d.workload_mips > 0.0) || !std::isfinite(d.workload_mips)) {
      out.push_back(where + "workload must be positive");
    } else if (opt.instructions_per_bit > 0.0 &&
               !approx_equal(d.traffic_bps, d.workload_mips * 1e6 / opt.instructions_per_bit)) {
      out.push_back(where + "traffic does not match workload / instructions_per_bit");
    }
    sources.insert(d.source);
  }

  for (auto src : sources) {
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      auto it = s.routes().find({src, n});
      if (it == s.routes().end()) {
        out.push_back("route " + nodes[src].id + "->" + nodes[n].id + ": missing");
        continue;
      }
      if (auto err = check_route(s, src, n, it->second)) out.push_back(*err);
    }
  }
  for (const auto& [key, path] : s.routes()) {
    if (key.first >= nodes.size() || key.second >= nodes.size()) {
      out.push_back("route references a missing node");
    } else if (!sources.count(key.first)) {
      if (auto err = check_route(s, key.first, key.second, path)) out.push_back(*err);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

Scenario assemble_scenario(std::vector<NodeSpec> nodes,
                           std::vector<DemandSpec> demands,
                           ModelOptions options,
                           std::optional<std::vector<Link>> links,
                           std::optional<RouteTable> routes) {
  // Power derivation needs sane node specs; report those first.
  std::vector<std::string> problems;
  for (const auto& n : nodes) check_node(n, problems);
  if (!problems.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ValidationError(msg);
  }

  auto link_list = links ? std::move(*links) : standard_links(nodes, options);
  Scenario draft(nodes, link_list, demands, {}, options);
  RouteTable table;
  if (routes) {
    table = std::move(*routes);
  } else {
    std::set<std::size_t> sources;
    for (const auto& d : draft.demands()) sources.insert(d.source);
    for (auto src : sources) {
      for (std::size_t n = 0; n < draft.num_nodes(); ++n) {
        try {
          table.emplace(RouteKey{src, n}, route(draft, src, n));
        } catch (const UnreachableError&) {
          problems.push_back("disconnected source " + draft.nodes()[src].id +
                             ": no path to " + draft.nodes()[n].id);
        }
      }
    }
  }
  Scenario scenario(std::move(nodes), std::move(link_list), std::move(demands),
                    std::move(table), options);
  for (auto& v : validate_scenario(scenario)) problems.push_back(std::move(v));
  if (!problems.empty()) {
    std::string msg = "invalid scenario:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ValidationError(msg);
  }
  return scenario;
}

std::size_t cloud_node_count(double total_workload_mips,
                             const ModelOptions& options) {
  if (options.cloud_provisioning == CloudProvisioning::single_pool) return 1;
  return static_cast<std::size_t>(
             std::ceil(total_workload_mips / options.cloud_server_capacity - 1e-12)) + 1;
}

Scenario build_paper_scenario(DemandClass demand_class, int request_count,
                              const ModelOptions& options) {
  constexpr int kVehicles = 20;
  constexpr int kEdges = 4;
  if (request_count < 1 || request_count > kVehicles) {
    throw InputError("request count must lie in 1.." + std::to_string(kVehicles));
  }
  if (!(options.cloud_server_capacity > 0.0) || !(options.instructions_per_bit > 0.0) ||
      !(options.cloud_path_energy_per_bit > 0.0)) {
    throw InputError("model options must be positive");
  }
  const double workload = workload_of(demand_class);
  const double total = workload * request_count;

  std::vector<NodeSpec> nodes;
  for (int i = 0; i < kVehicles; ++i) nodes.push_back(vehicle_template("v" + std::to_string(i)));
  for (int i = 0; i < kEdges; ++i) nodes.push_back(edge_template("e" + std::to_string(i)));
  const auto clouds = cloud_node_count(total, options);
  const double cloud_capacity =
      options.cloud_provisioning == CloudProvisioning::single_pool
          ? std::max(total, options.cloud_server_capacity)
          : options.cloud_server_capacity;
  for (std::size_t i = 0; i < clouds; ++i) {
    nodes.push_back(cloud_template("cloud" + std::to_string(i), cloud_capacity));
  }

  std::vector<DemandSpec> demands;
  for (int i = 0; i < request_count; ++i) {
    demands.push_back(DemandSpec{"d" + std::to_string(i), static_cast<std::size_t>(i),
                                 workload,
                                 traffic_for_workload(workload, options.instructions_per_bit)});
  }
  return assemble_scenario(std::move(nodes), std::move(demands), options);
}

}  // namespace vcloud
