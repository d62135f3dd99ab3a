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

#include "vcloud/model.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace vcloud {
namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "infeasible placement:";
  for (const auto& line : lines) {
    out += "\n  ";
    out += line;
  }
  return out;
}

}  // namespace

InfeasiblePlacementError::InfeasiblePlacementError(
    std::vector<std::string> violations)
    : std::runtime_error(join_lines(violations)),
      violations_(std::move(violations)) {}

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::vehicle: return "vehicle";
    case Tier::edge: return "edge";
    case Tier::cloud: return "cloud";
  }
  return "?";
}

std::string_view to_string(InterfaceKind kind) {
  switch (kind) {
    case InterfaceKind::dsrc: return "DSRC";
    case InterfaceKind::wifi: return "WiFi";
    case InterfaceKind::core: return "Core";
  }
  return "?";
}

std::string_view to_string(CloudProvisioning provisioning) {
  return provisioning == CloudProvisioning::per_server ? "per_server"
                                                       : "single_pool";
}

std::string_view to_string(DsrcMedium medium) {
  return medium == DsrcMedium::per_link ? "per_link" : "shared";
}

std::string_view to_string(DemandClass demand_class) {
  switch (demand_class) {
    case DemandClass::small: return "small";
    case DemandClass::medium: return "medium";
    case DemandClass::large: return "large";
  }
  return "?";
}

Tier parse_tier(std::string_view text) {
  const auto s = lower(text);
  if (s == "vehicle") return Tier::vehicle;
  if (s == "edge") return Tier::edge;
  if (s == "cloud") return Tier::cloud;
  throw InputError("unknown tier \"" + std::string(text) + "\"");
}

InterfaceKind parse_interface_kind(std::string_view text) {
  const auto s = lower(text);
  if (s == "dsrc") return InterfaceKind::dsrc;
  if (s == "wifi") return InterfaceKind::wifi;
  if (s == "core") return InterfaceKind::core;
  throw InputError("unknown interface kind \"" + std::string(text) + "\"");
}

CloudProvisioning parse_cloud_provisioning(std::string_view text) {
  const auto s = lower(text);
  if (s == "per_server") return CloudProvisioning::per_server;
  if (s == "single_pool") return CloudProvisioning::single_pool;
  throw InputError("unknown cloud provisioning \"" + std::string(text) +
                   "\" (expected per_server or single_pool)");
}

DsrcMedium parse_dsrc_medium(std::string_view text) {
  const auto s = lower(text);
  if (s == "per_link") return DsrcMedium::per_link;
  if (s == "shared") return DsrcMedium::shared;
  throw InputError("unknown DSRC medium \"" + std::string(text) +
                   "\" (expected per_link or shared)");
}

DemandClass parse_demand_class(std::string_view text) {
  const auto s = lower(text);
  if (s == "small") return DemandClass::small;
  if (s == "medium") return DemandClass::medium;
  if (s == "large") return DemandClass::large;
  throw InputError("unknown demand class \"" + std::string(text) +
                   "\" (expected small, medium or large)");
}

std::optional<double> NodeSpec::interface_capacity(InterfaceKind kind) const {
  for (const auto& iface : interfaces) {
    if (iface.kind == kind) return iface.capacity_bps;
  }
  return std::nullopt;
}

}  // namespace vcloud
