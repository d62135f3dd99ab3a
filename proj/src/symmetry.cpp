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

#include <algorithm>
#include <map>
#include <numeric>

#include "vcloud/numeric.hpp"
#include "vcloud/solver.hpp"

namespace vcloud {
namespace {

using RowKey = std::vector<double>;

RowKey row_key(const Constraint& c, const std::vector<std::size_t>* perm) {
  std::vector<std::pair<std::size_t, double>> terms;
  terms.reserve(c.terms.size());
  for (const auto& t : c.terms) {
    terms.emplace_back(perm ? (*perm)[t.var] : t.var, round_sig(t.coef, 12));
  }
  std::sort(terms.begin(), terms.end());
  RowKey key{static_cast<double>(c.sense), round_sig(c.rhs, 12)};
  for (const auto& [v, a] : terms) {
    key.push_back(static_cast<double>(v));
    key.push_back(a);
  }
  return key;
}

class RowIndex {
 public:
  explicit RowIndex(const MilpProblem& p) : problem_(p) {
    for (const auto& c : p.constraints) ++rows_[row_key(c, nullptr)];
  }

  bool maps_onto_itself(const std::vector<std::size_t>& perm) const {
    const auto& vars = problem_.variables;
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const auto& a = vars[v];
      const auto& b = vars[perm[v]];
      if (a.kind != b.kind || a.lower != b.lower || !approx_equal(a.upper, b.upper, 1e-12) ||
          !approx_equal(a.cost, b.cost, 1e-12)) {
        return false;
      }
    }
    std::map<RowKey, int> seen;
    for (const auto& c : problem_.constraints) {
      auto key = row_key(c, &perm);
      auto it = rows_.find(key);
      if (it == rows_.end() || ++seen[key] > it->second) return false;
    }
    return true;
  }

 private:
  const MilpProblem& problem_;
  std::map<RowKey, int> rows_;
};

}  // namespace

std::vector<std::size_t> transposition(const MilpProblem& p, SymmetryClasses::Kind kind,
                                       std::size_t first, std::size_t second) {
  std::vector<std::size_t> node_perm(p.num_nodes), demand_perm(p.num_demands);
  std::iota(node_perm.begin(), node_perm.end(), 0);
  std::iota(demand_perm.begin(), demand_perm.end(), 0);
  if (kind == SymmetryClasses::Kind::node) {
    std::swap(node_perm[first], node_perm[second]);
  } else {
    std::swap(demand_perm[first], demand_perm[second]);
    const auto s1 = p.routing.demand_source[first];
    const auto s2 = p.routing.demand_source[second];
    std::swap(node_perm[s1], node_perm[s2]);
  }
  std::vector<std::size_t> perm(p.variables.size());
  for (std::size_t v = 0; v < perm.size(); ++v) {
    const auto& var = p.variables[v];
    switch (var.role) {
      case VarRole::x: perm[v] = p.x(demand_perm[var.demand], node_perm[var.node]); break;
      case VarRole::y: perm[v] = p.y(demand_perm[var.demand], node_perm[var.node]); break;
      case VarRole::a: perm[v] = p.a(node_perm[var.node]); break;
    }
  }
  return perm;
}

bool is_automorphism(const MilpProblem& problem, const std::vector<std::size_t>& perm) {
  return RowIndex(problem).maps_onto_itself(perm);
}

SymmetryClasses detect_symmetry(const MilpProblem& p) {
  const RowIndex index(p);
  SymmetryClasses out;
  using Kind = SymmetryClasses::Kind;

  std::vector<bool> is_source(p.num_nodes, false);
  for (auto s : p.routing.demand_source) is_source[s] = true;

  auto partition = [&](Kind kind, const std::vector<std::size_t>& items) {
    std::vector<std::vector<std::size_t>> groups;
    for (auto item : items) {
      bool placed = false;
      for (auto& g : groups) {
        if (index.maps_onto_itself(transposition(p, kind, g.front(), item))) {
          g.push_back(item);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back({item});
    }
    for (auto& g : groups) {
      if (g.size() > 1) out.classes.push_back({kind, std::move(g)});
    }
  };

  std::vector<std::size_t> free_nodes;
  for (std::size_t n = 0; n < p.num_nodes; ++n) {
    if (!is_source[n]) free_nodes.push_back(n);
  }
  partition(Kind::node, free_nodes);

  // Demand swaps carry their sources along; only one demand per source.
  std::vector<int> per_source(p.num_nodes, 0);
  for (auto s : p.routing.demand_source) ++per_source[s];
  std::vector<std::size_t> demands;
  for (std::size_t d = 0; d < p.num_demands; ++d) {
    if (per_source[p.routing.demand_source[d]] == 1) demands.push_back(d);
  }
  partition(Kind::demand, demands);
  return out;
}

}  // namespace vcloud
