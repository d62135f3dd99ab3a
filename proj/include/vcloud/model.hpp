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

// Plain data types shared by the scenario, power and optimization layers.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vcloud {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Bad caller input (unknown demand class, non-positive rate, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scenario document or object that breaks a structural rule. The message
/// names the offending field path.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnreachableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when node power coefficients cannot be derived from a spec.
class DerivationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Placement or assignment that violates capacity, bandwidth or service
/// constraints. `violations()` lists each broken rule.
class InfeasiblePlacementError : public std::runtime_error {
 public:
  explicit InfeasiblePlacementError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A binary variable away from {0, 1} where an integral value is required.
class IntegralityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Enumerations
// ---------------------------------------------------------------------------

enum class Tier { vehicle, edge, cloud };
enum class InterfaceKind { dsrc, wifi, core };
enum class CloudProvisioning { per_server, single_pool };
enum class DsrcMedium { per_link, shared };
enum class DemandClass { small, medium, large };

inline constexpr std::size_t kInterfaceKinds = 3;

constexpr std::size_t index_of(InterfaceKind kind) {
  return static_cast<std::size_t>(kind);
}

std::string_view to_string(Tier tier);
std::string_view to_string(InterfaceKind kind);
std::string_view to_string(CloudProvisioning provisioning);
std::string_view to_string(DsrcMedium medium);
std::string_view to_string(DemandClass demand_class);

// Parsers throw InputError on unknown names.
Tier parse_tier(std::string_view text);
InterfaceKind parse_interface_kind(std::string_view text);
CloudProvisioning parse_cloud_provisioning(std::string_view text);
DsrcMedium parse_dsrc_medium(std::string_view text);
DemandClass parse_demand_class(std::string_view text);

// ---------------------------------------------------------------------------
// Specs
// ---------------------------------------------------------------------------

struct InterfaceSpec {
  InterfaceKind kind = InterfaceKind::wifi;
  double capacity_bps = 0.0;

  bool operator==(const InterfaceSpec&) const = default;
};

struct NodeSpec {
  std::string id;
  Tier tier = Tier::vehicle;
  double max_power_w = 0.0;
  double idle_power_w = 0.0;
  double processing_fraction = 0.0;
  double communication_fraction = 0.0;
  double capacity_mips = 0.0;
  std::vector<InterfaceSpec> interfaces;

  /// Capacity of the first interface of `kind`, if the node has one.
  std::optional<double> interface_capacity(InterfaceKind kind) const;

  bool operator==(const NodeSpec&) const = default;
};

/// Directed link. Endpoints are node indices into Scenario::nodes().
struct Link {
  std::string id;
  std::size_t head = 0;
  std::size_t tail = 0;
  InterfaceKind kind = InterfaceKind::wifi;
  double capacity_bps = 0.0;
  double energy_per_bit = 0.0;  // J/bit: head transmit + tail receive

  bool operator==(const Link&) const = default;
};

struct DemandSpec {
  std::string id;
  std::size_t source = 0;  // node index, always a vehicle
  double workload_mips = 0.0;
  double traffic_bps = 0.0;

  bool operator==(const DemandSpec&) const = default;
};

/// Fixed route: link indices in travel order plus the nodes strictly
/// between the endpoints.
struct Path {
  std::vector<std::size_t> links;
  std::vector<std::size_t> intermediates;

  bool empty() const { return links.empty(); }
  bool operator==(const Path&) const = default;
};

struct ModelOptions {
  double instructions_per_bit = 2000.0;
  double cloud_path_energy_per_bit = 5e-7;
  CloudProvisioning cloud_provisioning = CloudProvisioning::single_pool;
  double cloud_server_capacity = 10000.0;
  DsrcMedium dsrc_medium = DsrcMedium::per_link;

  bool operator==(const ModelOptions&) const = default;
};

}  // namespace vcloud
