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

// JSON scenario documents.
//
//   {"options": {...}, "nodes": [...], "links": [...], "demands": [...],
//    "routes": [{"source": "v0", "destination": "e2", "links": [...]}]}
//
// `links`, `routes`, `options` and demand `traffic_bps` may be omitted.

#include <initializer_list>
#include <set>
#include <string>

#include "json.hpp"
#include "vcloud/power.hpp"
#include "vcloud/scenario.hpp"

namespace vcloud {
namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

void check_keys(const ordered_json& obj, const std::string& path,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) fail(path, "expected an object");
  for (const char* key : required) {
    if (!obj.contains(key)) fail(path, std::string("missing key \"") + key + "\"");
  }
  std::set<std::string> known;
  for (const char* key : required) known.insert(key);
  for (const char* key : optional) known.insert(key);
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) fail(path, "unknown key \"" + key + "\"");
  }
}

double number(const ordered_json& obj, const char* key, const std::string& path) {
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  return v.get<double>();
}

std::string text(const ordered_json& obj, const char* key, const std::string& path) {
  const auto& v = obj.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

const ordered_json& array(const ordered_json& obj, const char* key,
                          const std::string& path) {
  const auto& v = obj.at(key);
  if (!v.is_array()) fail(path + "." + key, "expected an array");
  return v;
}

template <typename Fn>
auto parse_enum(Fn parse, const ordered_json& obj, const char* key,
                const std::string& path) {
  const auto value = text(obj, key, path);
  try {
    return parse(value);
  } catch (const InputError& e) {
    fail(path + "." + key, e.what());
  }
}

ModelOptions parse_options(const ordered_json& obj) {
  ModelOptions opt;
  const std::string path = "options";
  check_keys(obj, path, {},
             {"instructions_per_bit", "cloud_path_energy_per_bit",
              "cloud_provisioning", "cloud_server_capacity", "dsrc_medium"});
  if (obj.contains("instructions_per_bit")) {
    opt.instructions_per_bit = number(obj, "instructions_per_bit", path);
  }
  if (obj.contains("cloud_path_energy_per_bit")) {
    opt.cloud_path_energy_per_bit = number(obj, "cloud_path_energy_per_bit", path);
  }
  if (obj.contains("cloud_server_capacity")) {
    opt.cloud_server_capacity = number(obj, "cloud_server_capacity", path);
  }
  if (obj.contains("cloud_provisioning")) {
    opt.cloud_provisioning =
        parse_enum(parse_cloud_provisioning, obj, "cloud_provisioning", path);
  }
  if (obj.contains("dsrc_medium")) {
    opt.dsrc_medium = parse_enum(parse_dsrc_medium, obj, "dsrc_medium", path);
  }
  for (double v : {opt.instructions_per_bit, opt.cloud_path_energy_per_bit,
                   opt.cloud_server_capacity}) {
    if (!(v > 0.0)) fail(path, "numeric options must be positive");
  }
  return opt;
}

NodeSpec parse_node(const ordered_json& obj, const std::string& path) {
  check_keys(obj, path,
             {"id", "tier", "max_power_w", "idle_power_w", "processing_fraction",
              "communication_fraction", "capacity_mips", "interfaces"});
  NodeSpec node;
  node.id = text(obj, "id", path);
  node.tier = parse_enum(parse_tier, obj, "tier", path);
  node.max_power_w = number(obj, "max_power_w", path);
  node.idle_power_w = number(obj, "idle_power_w", path);
  node.processing_fraction = number(obj, "processing_fraction", path);
  node.communication_fraction = number(obj, "communication_fraction", path);
  node.capacity_mips = number(obj, "capacity_mips", path);
  const auto& ifaces = array(obj, "interfaces", path);
  for (std::size_t i = 0; i < ifaces.size(); ++i) {
    const auto where = path + ".interfaces[" + std::to_string(i) + "]";
    check_keys(ifaces[i], where, {"kind", "capacity_bps"});
    node.interfaces.push_back(
        {parse_enum(parse_interface_kind, ifaces[i], "kind", where),
         number(ifaces[i], "capacity_bps", where)});
  }
  return node;
}

std::size_t lookup(const std::vector<NodeSpec>& nodes, const std::string& id,
                   const std::string& path) {
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (nodes[n].id == id) return n;
  }
  fail(path, "unknown node \"" + id + "\"");
}

}  // namespace

Scenario load_scenario(std::string_view document) {
  ordered_json root;
  try {
    root = ordered_json::parse(document);
  } catch (const ordered_json::parse_error& e) {
    throw ValidationError(std::string("malformed scenario document: ") + e.what());
  }
  check_keys(root, "scenario", {"nodes", "demands"}, {"options", "links", "routes"});

  const ModelOptions options =
      root.contains("options") ? parse_options(root.at("options")) : ModelOptions{};

  std::vector<NodeSpec> nodes;
  const auto& node_list = array(root, "nodes", "scenario");
  for (std::size_t i = 0; i < node_list.size(); ++i) {
    nodes.push_back(parse_node(node_list[i], "nodes[" + std::to_string(i) + "]"));
  }

  std::vector<DemandSpec> demands;
  const auto& demand_list = array(root, "demands", "scenario");
  for (std::size_t i = 0; i < demand_list.size(); ++i) {
    const auto path = "demands[" + std::to_string(i) + "]";
    const auto& obj = demand_list[i];
    check_keys(obj, path, {"id", "source", "workload_mips"}, {"traffic_bps"});
    DemandSpec d;
    d.id = text(obj, "id", path);
    d.source = lookup(nodes, text(obj, "source", path), path + ".source");
    d.workload_mips = number(obj, "workload_mips", path);
    if (!(d.workload_mips >= 0.0)) fail(path + ".workload_mips", "must be positive");
    d.traffic_bps = obj.contains("traffic_bps")
                        ? number(obj, "traffic_bps", path)
                        : traffic_for_workload(d.workload_mips, options.instructions_per_bit);
    demands.push_back(std::move(d));
  }

  std::optional<std::vector<Link>> links;
  bool fill_energy = false;
  if (root.contains("links")) {
    links.emplace();
    const auto& list = array(root, "links", "scenario");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto path = "links[" + std::to_string(i) + "]";
      const auto& obj = list[i];
      check_keys(obj, path, {"id", "head", "tail", "kind"},
                 {"capacity_bps", "energy_per_bit"});
      Link link;
      link.id = text(obj, "id", path);
      link.head = lookup(nodes, text(obj, "head", path), path + ".head");
      link.tail = lookup(nodes, text(obj, "tail", path), path + ".tail");
      link.kind = parse_enum(parse_interface_kind, obj, "kind", path);
      if (obj.contains("capacity_bps")) {
        link.capacity_bps = number(obj, "capacity_bps", path);
      } else {
        const auto a = nodes[link.head].interface_capacity(link.kind);
        const auto b = nodes[link.tail].interface_capacity(link.kind);
        if (!a || !b) fail(path, "endpoint lacks a " + std::string(to_string(link.kind)) + " interface");
        link.capacity_bps = std::min(*a, *b);
      }
      if (obj.contains("energy_per_bit")) {
        link.energy_per_bit = number(obj, "energy_per_bit", path);
      } else {
        fill_energy = true;
      }
      links->push_back(std::move(link));
    }
  }

  std::optional<RouteTable> routes;
  if (root.contains("routes")) {
    if (!links) fail("routes", "explicit routes require explicit links");
    routes.emplace();
    const auto& list = array(root, "routes", "scenario");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto path = "routes[" + std::to_string(i) + "]";
      const auto& obj = list[i];
      check_keys(obj, path, {"source", "destination", "links"});
      const auto src = lookup(nodes, text(obj, "source", path), path + ".source");
      const auto dst = lookup(nodes, text(obj, "destination", path), path + ".destination");
      Path route_path;
      const auto& ids = array(obj, "links", path);
      for (std::size_t k = 0; k < ids.size(); ++k) {
        const auto where = path + ".links[" + std::to_string(k) + "]";
        if (!ids[k].is_string()) fail(where, "expected a link id");
        const auto id = ids[k].get<std::string>();
        std::optional<std::size_t> found;
        for (std::size_t l = 0; l < links->size(); ++l) {
          if ((*links)[l].id == id) found = l;
        }
        if (!found) fail(where, "unknown link \"" + id + "\"");
        route_path.links.push_back(*found);
      }
      for (std::size_t k = 0; k + 1 < route_path.links.size(); ++k) {
        route_path.intermediates.push_back((*links)[route_path.links[k]].tail);
      }
      if (!routes->emplace(RouteKey{src, dst}, std::move(route_path)).second) {
        fail(path, "duplicate route");
      }
    }
  }

  if (fill_energy) {
    try {
      fill_link_energy(*links, nodes, options);
    } catch (const DerivationError&) {
      // Node checks in assemble_scenario report the cause.
    }
  }
  return assemble_scenario(std::move(nodes), std::move(demands), options,
                           std::move(links), std::move(routes));
}

std::string serialize_scenario(const Scenario& s) {
  const auto& nodes = s.nodes();
  ordered_json root;
  const auto& opt = s.options();
  root["options"] = {
      {"instructions_per_bit", opt.instructions_per_bit},
      {"cloud_path_energy_per_bit", opt.cloud_path_energy_per_bit},
      {"cloud_provisioning", std::string(to_string(opt.cloud_provisioning))},
      {"cloud_server_capacity", opt.cloud_server_capacity},
      {"dsrc_medium", std::string(to_string(opt.dsrc_medium))},
  };

  auto& node_list = root["nodes"] = ordered_json::array();
  for (const auto& n : nodes) {
    ordered_json ifaces = ordered_json::array();
    for (const auto& iface : n.interfaces) {
      ifaces.push_back({{"kind", std::string(to_string(iface.kind))},
                        {"capacity_bps", iface.capacity_bps}});
    }
    node_list.push_back({{"id", n.id},
                         {"tier", std::string(to_string(n.tier))},
                         {"max_power_w", n.max_power_w},
                         {"idle_power_w", n.idle_power_w},
                         {"processing_fraction", n.processing_fraction},
                         {"communication_fraction", n.communication_fraction},
                         {"capacity_mips", n.capacity_mips},
                         {"interfaces", std::move(ifaces)}});
  }

  auto& link_list = root["links"] = ordered_json::array();
  for (const auto& l : s.links()) {
    link_list.push_back({{"id", l.id},
                         {"head", nodes[l.head].id},
                         {"tail", nodes[l.tail].id},
                         {"kind", std::string(to_string(l.kind))},
                         {"capacity_bps", l.capacity_bps},
                         {"energy_per_bit", l.energy_per_bit}});
  }

  auto& demand_list = root["demands"] = ordered_json::array();
  for (const auto& d : s.demands()) {
    demand_list.push_back({{"id", d.id},
                           {"source", nodes[d.source].id},
                           {"workload_mips", d.workload_mips},
                           {"traffic_bps", d.traffic_bps}});
  }

  auto& route_list = root["routes"] = ordered_json::array();
  for (const auto& [key, path] : s.routes()) {
    ordered_json ids = ordered_json::array();
    for (auto l : path.links) ids.push_back(s.links()[l].id);
    route_list.push_back({{"source", nodes[key.first].id},
                          {"destination", nodes[key.second].id},
                          {"links", std::move(ids)}});
  }
  return root.dump(2) + "\n";
}

}  // namespace vcloud
