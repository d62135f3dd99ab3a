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

#include "vcloud/power.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "vcloud/numeric.hpp"
#include "vcloud/scenario.hpp"

namespace vcloud {
namespace {

// Published (rounded) processing efficiencies and the raw specs they belong
// to. A spec matching one of these rows uses the published figure.
struct PublishedEfficiency {
  Tier tier;
  double max_power_w;
  double idle_power_w;
  double processing_fraction;
  double capacity_mips;
  double efficiency;
};

constexpr PublishedEfficiency kPublished[] = {
    {Tier::vehicle, 10.0, 5.0, 0.58, 1600.0, 550.0},
    {Tier::edge, 37.5, 7.5, 0.35, 3600.0, 340.0},
    {Tier::cloud, 301.0, 201.0, 1.0, 10000.0, 100.0},
};

std::optional<double> published_efficiency(const NodeSpec& spec) {
  for (const auto& row : kPublished) {
    if (row.tier == spec.tier && approx_equal(row.max_power_w, spec.max_power_w) &&
        approx_equal(row.idle_power_w, spec.idle_power_w) &&
        approx_equal(row.processing_fraction, spec.processing_fraction) &&
        approx_equal(row.capacity_mips, spec.capacity_mips)) {
      return row.efficiency;
    }
  }
  return std::nullopt;
}

bool exceeds(double value, double limit) {
  return value > limit + 1e-6 * std::max(1.0, std::abs(limit));
}

}  // namespace

PowerParams derive_power_params(const NodeSpec& spec,
                                const ModelOptions& options) {
  PowerParams params;
  params.node_id = spec.id;
  params.idle_w = spec.idle_power_w;

  const double dynamic_w = spec.max_power_w - spec.idle_power_w;
  const double processing_w = dynamic_w * spec.processing_fraction;
  if (!(processing_w > 0.0) || !(spec.capacity_mips > 0.0)) {
    throw DerivationError("node " + spec.id +
                          ": no positive processing power budget");
  }
  params.efficiency =
      published_efficiency(spec).value_or(spec.capacity_mips / processing_w);

  const double communication_w = dynamic_w * spec.communication_fraction;
  for (const auto& iface : spec.interfaces) {
    if (!(iface.capacity_bps > 0.0)) {
      throw DerivationError("node " + spec.id + ": " +
                            std::string(to_string(iface.kind)) +
                            " interface has zero capacity");
    }
    double coeff = 0.0;
    if (iface.kind == InterfaceKind::core) {
      // The core path (switches and routers up to the data centre) is
      // charged once, on the cloud side.
      coeff = spec.tier == Tier::cloud ? options.cloud_path_energy_per_bit : 0.0;
    } else {
      coeff = communication_w / iface.capacity_bps;
    }
    params.tx_j_per_bit[index_of(iface.kind)] = coeff;
    params.rx_j_per_bit[index_of(iface.kind)] = coeff;
  }
  return params;
}

std::vector<PowerParams> derive_power_params(const Scenario& scenario) {
  std::vector<PowerParams> out;
  out.reserve(scenario.num_nodes());
  for (const auto& node : scenario.nodes()) {
    out.push_back(derive_power_params(node, scenario.options()));
  }
  return out;
}

double traffic_for_workload(double workload_mips, double instructions_per_bit) {
  if (!(instructions_per_bit > 0.0)) {
    throw InputError("instructions_per_bit must be positive");
  }
  if (workload_mips < 0.0) throw InputError("workload must be non-negative");
  return workload_mips * 1e6 / instructions_per_bit;
}

double node_power(const PowerParams& params, bool active, double load_mips,
                  const KindRates& tx_bps, const KindRates& rx_bps) {
  if (load_mips < 0.0) throw InputError("negative load on " + params.node_id);
  if (!active) {
    const bool carries = std::any_of(tx_bps.begin(), tx_bps.end(),
                                     [](double r) { return r > 0.0; }) ||
                         std::any_of(rx_bps.begin(), rx_bps.end(),
                                     [](double r) { return r > 0.0; });
    if (load_mips > 0.0 || carries) {
      throw InputError("node " + params.node_id +
                       " is inactive but carries load or traffic");
    }
    return 0.0;
  }
  double watts = params.idle_w + load_mips / params.efficiency;
  for (std::size_t k = 0; k < kInterfaceKinds; ++k) {
    watts += tx_bps[k] * params.tx_j_per_bit[k] + rx_bps[k] * params.rx_j_per_bit[k];
  }
  return watts;
}

std::vector<std::string> placement_violations(const Scenario& scenario,
                                              const Placement& placement) {
  std::vector<std::string> out;
  const auto& nodes = scenario.nodes();
  const auto& demands = scenario.demands();
  std::vector<double> served(demands.size(), 0.0);
  std::vector<double> load(nodes.size(), 0.0);

  for (const auto& a : placement.allocations) {
    if (a.demand >= demands.size() || a.node >= nodes.size()) {
      out.push_back("allocation references unknown demand or node");
      continue;
    }
    if (a.mips < 0.0) {
      out.push_back("negative allocation of demand " + demands[a.demand].id +
                    " on " + nodes[a.node].id);
    }
    served[a.demand] += a.mips;
    load[a.node] += a.mips;
  }
  for (std::size_t d = 0; d < demands.size(); ++d) {
    const double w = demands[d].workload_mips;
    if (std::abs(served[d] - w) > 1e-6 * std::max(1.0, w)) {
      out.push_back("demand " + demands[d].id + ": served " +
                    format_sig(served[d]) + " of " + format_sig(w) + " MIPS");
    }
  }
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (exceeds(load[n], nodes[n].capacity_mips)) {
      out.push_back("node " + nodes[n].id + ": load " + format_sig(load[n]) +
                    " exceeds capacity " + format_sig(nodes[n].capacity_mips) +
                    " MIPS");
    }
  }

  // Link loads: full demand traffic towards every remote serving node.
  std::vector<double> link_load(scenario.links().size(), 0.0);
  for (std::size_t d = 0; d < demands.size() && d < placement.serving.size(); ++d) {
    const auto src = demands[d].source;
    for (auto n : placement.serving[d]) {
      if (n == src) continue;
      try {
        for (auto l : scenario.route_between(src, n).links) {
          link_load[l] += demands[d].traffic_bps;
        }
      } catch (const UnreachableError& e) {
        out.push_back(e.what());
      }
    }
  }
  const auto& links = scenario.links();
  double dsrc_total = 0.0;
  double dsrc_capacity = 0.0;
  for (std::size_t l = 0; l < links.size(); ++l) {
    if (links[l].kind == InterfaceKind::dsrc &&
        scenario.options().dsrc_medium == DsrcMedium::shared) {
      dsrc_total += link_load[l];
      dsrc_capacity = dsrc_capacity == 0.0
                          ? links[l].capacity_bps
                          : std::min(dsrc_capacity, links[l].capacity_bps);
      continue;
    }
    if (exceeds(link_load[l], links[l].capacity_bps)) {
      out.push_back("link " + links[l].id + ": traffic " +
                    format_sig(link_load[l]) + " exceeds capacity " +
                    format_sig(links[l].capacity_bps) + " bit/s");
    }
  }
  if (dsrc_total > 0.0 && exceeds(dsrc_total, dsrc_capacity)) {
    out.push_back("shared DSRC medium: traffic " + format_sig(dsrc_total) +
                  " exceeds capacity " + format_sig(dsrc_capacity) + " bit/s");
  }
  return out;
}

PowerReport evaluate_placement(const Scenario& scenario,
                               const Placement& placement) {
  // Serving and active sets are rederived so a hand-built placement cannot
  // skip relays.
  const Placement p = make_placement(placement.allocations, scenario);
  if (auto violations = placement_violations(scenario, p); !violations.empty()) {
    throw InfeasiblePlacementError(std::move(violations));
  }

  const auto params = derive_power_params(scenario);
  const auto& nodes = scenario.nodes();
  const auto& links = scenario.links();
  std::vector<KindRates> tx(nodes.size(), KindRates{});
  std::vector<KindRates> rx(nodes.size(), KindRates{});
  for (std::size_t d = 0; d < scenario.num_demands(); ++d) {
    const auto& demand = scenario.demands()[d];
    for (auto n : p.serving[d]) {
      if (n == demand.source) continue;
      for (auto l : scenario.route_between(demand.source, n).links) {
        tx[links[l].head][index_of(links[l].kind)] += demand.traffic_bps;
        rx[links[l].tail][index_of(links[l].kind)] += demand.traffic_bps;
      }
    }
  }

  PowerReport report;
  report.nodes.reserve(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    NodePower np;
    np.node_id = nodes[n].id;
    np.tier = nodes[n].tier;
    np.active = p.active[n];
    np.mips = p.mips_on(n);
    if (np.active) {
      np.idle_w = params[n].idle_w;
      np.processing_w = np.mips / params[n].efficiency;
      for (std::size_t k = 0; k < kInterfaceKinds; ++k) {
        np.communication_w += tx[n][k] * params[n].tx_j_per_bit[k] +
                              rx[n][k] * params[n].rx_j_per_bit[k];
      }
    }
    np.total_w = np.idle_w + np.processing_w + np.communication_w;

    auto& tier = report.tiers[static_cast<std::size_t>(np.tier)];
    tier.idle_w += np.idle_w;
    tier.processing_w += np.processing_w;
    tier.communication_w += np.communication_w;
    tier.total_w += np.total_w;
    tier.mips += np.mips;
    report.total_w += np.total_w;
    report.nodes.push_back(std::move(np));
  }
  return report;
}

Placement cloud_only_placement(const Scenario& scenario) {
  const auto& nodes = scenario.nodes();
  std::vector<std::size_t> clouds;
  std::vector<double> remaining;
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (nodes[n].tier == Tier::cloud) {
      clouds.push_back(n);
      remaining.push_back(nodes[n].capacity_mips);
    }
  }
  std::vector<Allocation> allocations;
  for (std::size_t d = 0; d < scenario.num_demands(); ++d) {
    double need = scenario.demands()[d].workload_mips;
    for (std::size_t c = 0; c < clouds.size() && need > 0.0; ++c) {
      const double take = std::min(need, remaining[c]);
      if (take <= 0.0) continue;
      allocations.push_back({d, clouds[c], take});
      remaining[c] -= take;
      need -= take;
    }
  }
  return make_placement(std::move(allocations), scenario);
}

PowerReport cloud_only_baseline(const Scenario& scenario) {
  return evaluate_placement(scenario, cloud_only_placement(scenario));
}

std::string power_report_json(const PowerReport& report) {
  using nlohmann::ordered_json;
  auto tier_json = [](const TierPower& t) {
    return ordered_json{{"idle_w", round_sig(t.idle_w)},
                        {"processing_w", round_sig(t.processing_w)},
                        {"communication_w", round_sig(t.communication_w)},
                        {"total_w", round_sig(t.total_w)},
                        {"mips", round_sig(t.mips)}};
  };
  ordered_json doc;
  doc["total_w"] = round_sig(report.total_w);
  doc["tiers"] = ordered_json{{"vehicle", tier_json(report.tier(Tier::vehicle))},
                              {"edge", tier_json(report.tier(Tier::edge))},
                              {"cloud", tier_json(report.tier(Tier::cloud))}};
  auto nodes = ordered_json::array();
  for (const auto& n : report.nodes) {
    nodes.push_back(ordered_json{{"id", n.node_id},
                                 {"tier", std::string(to_string(n.tier))},
                                 {"active", n.active},
                                 {"idle_w", round_sig(n.idle_w)},
                                 {"processing_w", round_sig(n.processing_w)},
                                 {"communication_w", round_sig(n.communication_w)},
                                 {"total_w", round_sig(n.total_w)},
                                 {"mips", round_sig(n.mips)}});
  }
  doc["nodes"] = std::move(nodes);
  return doc.dump(2);
}

}  // namespace vcloud
