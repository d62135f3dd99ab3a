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

// Best-bound branch-and-bound.
//
// One dual simplex tableau serves the whole tree: a node only rewrites the
// binary boxes that differ from the previous node and re-optimizes from the
// previous basis. Activation variables are branched on before serving
// variables. Branching is orbital: the zero child fixes the whole orbit of
// the branching variable under the node's symmetry stabilizer.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>

#include "vcloud/solver.hpp"

namespace vcloud {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::node_limit: return "node_limit";
    case SolveStatus::time_limit: return "time_limit";
  }
  return "?";
}

namespace {

constexpr double kFracTol = 1e-6;

struct Fix {
  std::uint32_t var;
  std::uint8_t value;
  bool branching;  // false for reduced-cost fixings
};

struct Node {
  std::vector<Fix> fixes;
  double bound = 0.0;
  long id = 0;
  int depth = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

bool lex_less(const std::vector<double>& a, const std::vector<double>& b,
              std::size_t from, std::size_t to) {
  for (std::size_t j = from; j < to; ++j) {
    if (a[j] != b[j]) return a[j] < b[j];
  }
  return false;
}

class Search {
 public:
  Search(const MilpProblem& problem, const BranchOptions& options)
      : p_(problem), opt_(options), start_(std::chrono::steady_clock::now()) {
    build_relaxation();
    if (opt_.orbital) symmetry_ = detect_symmetry(p_);
  }

  MilpSolution run();

 private:
  void build_relaxation();
  bool timed_out() const {
    if (opt_.time_limit_s <= 0.0) return false;
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    return dt.count() >= opt_.time_limit_s;
  }
  void apply(const std::vector<double>& lo, const std::vector<double>& hi);
  void apply_node(const Node& node);
  LpSolution<double> solve_lp();
  void consider(const Eigen::VectorXd& values);
  void consider_assignment(std::vector<double> values);
  void dive(const Node& node, const LpSolution<double>& start);
  std::vector<std::size_t> orbit(std::size_t var, const std::vector<int>& fixed);
  double cutoff() const {
    return incumbent_.empty() ? std::numeric_limits<double>::infinity()
                              : incumbent_obj_ - opt_.absolute_gap;
  }

  const MilpProblem& p_;
  BranchOptions opt_;
  std::chrono::steady_clock::time_point start_;
  std::optional<DualSimplex<double>> lp_;
  std::vector<std::size_t> binaries_;
  std::vector<double> root_lo_, root_hi_;  // per variable
  std::vector<double> cur_lo_, cur_hi_;
  SymmetryClasses symmetry_;
  std::vector<double> incumbent_;
  double incumbent_obj_ = 0.0;
  SolveStats stats_;
  bool infeasible_root_ = false;
};

void Search::build_relaxation() {
  const auto n = p_.variables.size();
  root_lo_.resize(n);
  root_hi_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    root_lo_[j] = p_.variables[j].lower;
    root_hi_[j] = p_.variables[j].upper;
    if (p_.variables[j].kind == VarKind::binary) binaries_.push_back(j);
  }

  // Singleton rows become bounds; rows that can never bind are dropped.
  std::vector<const Constraint*> kept;
  for (const auto& c : p_.constraints) {
    if (c.terms.size() == 1 && c.terms.front().coef != 0.0) {
      const auto& t = c.terms.front();
      const double v = c.rhs / t.coef;
      const bool upper = (c.sense == Sense::le) == (t.coef > 0);
      if (c.sense == Sense::eq) {
        root_lo_[t.var] = std::max(root_lo_[t.var], v);
        root_hi_[t.var] = std::min(root_hi_[t.var], v);
      } else if (upper) {
        root_hi_[t.var] = std::min(root_hi_[t.var], v);
      } else {
        root_lo_[t.var] = std::max(root_lo_[t.var], v);
      }
      continue;
    }
    if (c.sense == Sense::le) {
      double max_act = 0.0;
      for (const auto& t : c.terms) {
        max_act += t.coef * (t.coef > 0 ? root_hi_[t.var] : root_lo_[t.var]);
      }
      if (max_act <= c.rhs) continue;
    }
    kept.push_back(&c);
  }
  for (auto j : binaries_) {
    root_lo_[j] = std::ceil(root_lo_[j] - kFracTol);
    root_hi_[j] = std::floor(root_hi_[j] + kFracTol);
    if (root_lo_[j] > root_hi_[j]) infeasible_root_ = true;
  }

  // Rounded covering rows: sum_n ceil(M_n / Q) y(d,n) >= ceil(w_d / Q).
  std::vector<Constraint> cover;
  if (opt_.cover_rows) {
    for (std::size_t d = 0; d < p_.num_demands; ++d) {
      const double w = p_.routing.demand_workload[d];
      double q = 0.0;
      for (std::size_t nd = 0; nd < p_.num_nodes; ++nd) {
        const double m = root_hi_[p_.x(d, nd)];
        if (m < w * (1.0 - 1e-12)) q = std::max(q, m);
      }
      if (q <= 0.0) q = w;
      Constraint c{{}, Sense::ge, std::ceil(w / q - 1e-9), "cover"};
      for (std::size_t nd = 0; nd < p_.num_nodes; ++nd) {
        const double m = root_hi_[p_.x(d, nd)];
        if (m <= 0.0) continue;
        c.terms.push_back({p_.y(d, nd), std::ceil(m / q - 1e-9)});
      }
      cover.push_back(std::move(c));
    }
    for (const auto& c : cover) kept.push_back(&c);
  }

  // Dual fixing: a free binary that costs nothing and only ever relaxes its
  // rows can sit at one.
  std::vector<bool> relaxes(n, true);
  for (const auto* c : kept) {
    for (const auto& t : c->terms) {
      if (c->sense == Sense::eq || (c->sense == Sense::le) == (t.coef > 0)) relaxes[t.var] = false;
    }
  }
  for (auto j : binaries_) {
    if (relaxes[j] && p_.variables[j].cost == 0.0 && root_hi_[j] == 1.0) root_lo_[j] = 1.0;
  }

  LpModel<double> lp;
  const auto m = static_cast<Eigen::Index>(kept.size());
  lp.A = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(n));
  lp.b.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& c = *kept[i];
    double scale = 0.0;
    for (const auto& t : c.terms) scale = std::max(scale, std::abs(t.coef));
    if (scale == 0.0) scale = 1.0;
    for (const auto& t : c.terms) lp.A(i, t.var) += t.coef / scale;
    lp.b(i) = c.rhs / scale;
    lp.sense.push_back(c.sense);
  }
  lp.cost.resize(n);
  lp.lower.resize(n);
  lp.upper.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    lp.cost(j) = p_.variables[j].cost;
    lp.lower(j) = root_lo_[j];
    lp.upper(j) = std::max(root_lo_[j], root_hi_[j]);
  }
  if (!infeasible_root_) lp_.emplace(lp);
  cur_lo_.assign(root_lo_.begin(), root_lo_.end());
  cur_hi_.resize(n);
  for (std::size_t j = 0; j < n; ++j) cur_hi_[j] = std::max(root_lo_[j], root_hi_[j]);
}

void Search::apply(const std::vector<double>& lo, const std::vector<double>& hi) {
  for (auto j : binaries_) {
    if (lo[j] != cur_lo_[j] || hi[j] != cur_hi_[j]) {
      cur_lo_[j] = lo[j];
      cur_hi_[j] = hi[j];
      lp_->set_bounds(static_cast<Eigen::Index>(j), lo[j], hi[j]);
    }
  }
}

void Search::apply_node(const Node& node) {
  std::vector<double> lo = root_lo_, hi = root_hi_;
  for (const auto& f : node.fixes) lo[f.var] = hi[f.var] = f.value;
  apply(lo, hi);
}

LpSolution<double> Search::solve_lp() {
  auto sol = lp_->solve();
  stats_.lp_iterations += sol.iterations;
  return sol;
}

void Search::consider_assignment(std::vector<double> values) {
  if (!constraint_violations(p_, values, 1e-6).empty()) return;
  const double obj = objective_value(p_, values);
  const auto ys = p_.num_demands * p_.num_nodes;
  const bool better =
      incumbent_.empty() || obj < incumbent_obj_ - 1e-9 ||
      (obj <= incumbent_obj_ + 1e-9 && lex_less(values, incumbent_, ys, 2 * ys));
  if (better) {
    incumbent_ = std::move(values);
    incumbent_obj_ = obj;
  }
}

// Canonical assignment from the x part of an LP point.
void Search::consider(const Eigen::VectorXd& values) {
  std::vector<double> v(values.data(), values.data() + values.size());
  for (std::size_t d = 0; d < p_.num_demands; ++d) {
    for (std::size_t n = 0; n < p_.num_nodes; ++n) {
      auto& x = v[p_.x(d, n)];
      if (x < 0.0) x = 0.0;
    }
  }
  try {
    const Placement placement = extract_placement(p_, [&] {
      // Binaries are irrelevant to the x-derived placement; zero them so the
      // integrality check passes.
      auto w = v;
      for (auto j : binaries_) w[j] = 0.0;
      return w;
    }());
    consider_assignment(assignment_from_placement(p_, placement));
  } catch (const InfeasiblePlacementError&) {
  }
}

std::vector<std::size_t> Search::orbit(std::size_t var, const std::vector<int>& fixed) {
  std::vector<std::size_t> fixed_vars;
  for (std::size_t j = 0; j < fixed.size(); ++j) {
    if (fixed[j] >= 0) fixed_vars.push_back(j);
  }
  auto preserves = [&](const std::vector<std::size_t>& perm) {
    for (auto j : fixed_vars) {
      if (fixed[perm[j]] != fixed[j]) return false;
    }
    return true;
  };
  std::vector<std::vector<std::size_t>> gens;
  for (const auto& cls : symmetry_.classes) {
    std::vector<std::vector<std::size_t>> groups;
    for (auto m : cls.members) {
      bool placed = false;
      for (auto& g : groups) {
        if (preserves(transposition(p_, cls.kind, g.front(), m))) {
          g.push_back(m);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back({m});
    }
    for (const auto& g : groups) {
      for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        gens.push_back(transposition(p_, cls.kind, g[i], g[i + 1]));
      }
    }
  }
  std::vector<std::size_t> out{var};
  std::vector<bool> seen(p_.variables.size(), false);
  seen[var] = true;
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& g : gens) {
      const auto u = g[out[k]];
      if (!seen[u]) {
        seen[u] = true;
        out.push_back(u);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Repeatedly round up the largest fractional activation (then serving)
// variable and re-solve, offering every LP point as an incumbent.
void Search::dive(const Node& node, const LpSolution<double>& start) {
  std::vector<double> lo = root_lo_, hi = root_hi_;
  for (const auto& f : node.fixes) lo[f.var] = hi[f.var] = f.value;
  Eigen::VectorXd x = start.values;
  const auto ys = p_.num_demands * p_.num_nodes;
  for (std::size_t step = 0; step < binaries_.size(); ++step) {
    std::optional<std::size_t> pick;
    double best = -1.0;
    for (int pass = 0; pass < 2 && !pick; ++pass) {
      const std::size_t from = pass == 0 ? 2 * ys : ys;
      const std::size_t to = pass == 0 ? 2 * ys + p_.num_nodes : 2 * ys;
      for (std::size_t j = from; j < to; ++j) {
        const double v = x(static_cast<Eigen::Index>(j));
        if (lo[j] == hi[j] || v < kFracTol || v > 1.0 - kFracTol) continue;
        if (v > best) {
          best = v;
          pick = j;
        }
      }
    }
    if (!pick) break;
    lo[*pick] = hi[*pick] = 1.0;
    apply(lo, hi);
    const auto sol = solve_lp();
    if (sol.status != LpStatus::optimal || sol.objective >= cutoff()) break;
    x = sol.values;
    consider(x);
  }
}

MilpSolution Search::run() {
  MilpSolution out;
  if (opt_.warm_start) consider_assignment(*opt_.warm_start);

  std::priority_queue<Node, std::vector<Node>, NodeOrder> queue;
  long next_id = 0;
  if (!infeasible_root_) queue.push(Node{{}, -std::numeric_limits<double>::infinity(), next_id++, 0});

  SolveStatus status = SolveStatus::optimal;
  double open_bound = std::numeric_limits<double>::infinity();
  std::vector<int> fixed(p_.variables.size(), -1);

  std::optional<Node> plunge;
  auto best_open = [&] {
    double b = queue.empty() ? std::numeric_limits<double>::infinity() : queue.top().bound;
    if (plunge) b = std::min(b, plunge->bound);
    return b;
  };
  while (plunge || !queue.empty()) {
    if (plunge && plunge->bound >= cutoff()) plunge.reset();
    if (!plunge && (queue.empty() || queue.top().bound >= cutoff())) break;
    if ((opt_.node_limit > 0 && stats_.nodes >= opt_.node_limit) || timed_out()) {
      status = timed_out() ? SolveStatus::time_limit : SolveStatus::node_limit;
      open_bound = best_open();
      break;
    }
    Node node;
    if (plunge) {
      node = std::move(*plunge);
      plunge.reset();
    } else {
      node = queue.top();
      queue.pop();
    }

    apply_node(node);
    const auto sol = solve_lp();
    ++stats_.nodes;
    if (sol.status != LpStatus::optimal) continue;
    if (std::isfinite(node.bound)) {
      stats_.max_bound_drop = std::max(stats_.max_bound_drop, node.bound - sol.objective);
    }
    const double z = std::max(sol.objective, std::isfinite(node.bound) ? node.bound : sol.objective);
    consider(sol.values);
    if (z >= cutoff()) continue;

    if (node.depth == 0 || (opt_.dive_every > 0 && stats_.nodes % opt_.dive_every == 0)) {
      dive(node, sol);
      apply_node(node);
      if (z >= cutoff()) continue;
    }

    // Reduced-cost fixing against the incumbent.
    std::vector<Fix> fixes = node.fixes;
    if (!incumbent_.empty()) {
      const double room = incumbent_obj_ - sol.objective;
      for (auto j : binaries_) {
        if (cur_lo_[j] == cur_hi_[j]) continue;
        const double rc = sol.reduced_costs(static_cast<Eigen::Index>(j));
        const double v = sol.values(static_cast<Eigen::Index>(j));
        if (v <= kFracTol && rc > room + 1e-9) {
          fixes.push_back({static_cast<std::uint32_t>(j), 0, false});
        } else if (v >= 1.0 - kFracTol && -rc > room + 1e-9) {
          fixes.push_back({static_cast<std::uint32_t>(j), 1, false});
        }
      }
    }

    // Branching variable: most fractional activation, then serving.
    const auto ys = p_.num_demands * p_.num_nodes;
    std::optional<std::size_t> pick;
    for (int pass = 0; pass < 2 && !pick; ++pass) {
      const std::size_t from = pass == 0 ? 2 * ys : ys;
      const std::size_t to = pass == 0 ? 2 * ys + p_.num_nodes : 2 * ys;
      double best = kFracTol;
      for (std::size_t j = from; j < to; ++j) {
        const double v = sol.values(static_cast<Eigen::Index>(j));
        const double frac = std::min(v - std::floor(v), std::ceil(v) - v);
        if (frac > best) {
          best = frac;
          pick = j;
        }
      }
    }
    if (!pick) continue;  // integral: already offered as incumbent

    std::vector<std::size_t> zero_set{*pick};
    if (opt_.orbital && !symmetry_.classes.empty()) {
      std::fill(fixed.begin(), fixed.end(), -1);
      for (const auto& f : node.fixes) {
        if (f.branching) fixed[f.var] = f.value;
      }
      zero_set = orbit(*pick, fixed);
    }

    Node one{fixes, z, next_id++, node.depth + 1};
    one.fixes.push_back({static_cast<std::uint32_t>(*pick), 1, true});
    Node zero{std::move(fixes), z, next_id++, node.depth + 1};
    for (auto j : zero_set) {
      if (cur_lo_[j] == cur_hi_[j]) continue;
      zero.fixes.push_back({static_cast<std::uint32_t>(j), 0, true});
    }
    if (opt_.plunge) {
      plunge = std::move(one);
    } else {
      queue.push(std::move(one));
    }
    queue.push(std::move(zero));
  }

  if (status == SolveStatus::optimal) {
    stats_.best_bound = incumbent_.empty() ? 0.0 : incumbent_obj_;
  } else {
    stats_.best_bound = std::min(open_bound, incumbent_.empty()
                                                 ? std::numeric_limits<double>::infinity()
                                                 : incumbent_obj_);
  }
  const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - start_;
  stats_.wall_ms = dt.count();
  out.stats = stats_;
  if (incumbent_.empty()) {
    out.status = status == SolveStatus::optimal ? SolveStatus::infeasible : status;
    return out;
  }
  out.status = status;
  out.values = incumbent_;
  out.objective = objective_value(p_, incumbent_);
  out.placement = extract_placement(p_, incumbent_);
  return out;
}

}  // namespace

MilpSolution branch_and_bound(const MilpProblem& problem, const BranchOptions& options) {
  Search search(problem, options);
  return search.run();
}

}  // namespace vcloud
