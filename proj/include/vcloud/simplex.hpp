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

// Bounded dual simplex on a dense Tucker tableau.
//
// Every row gets a slack, A z + s = b, whose bounds come from the row sense
// and the row's activity range. With every variable boxed, any basis is made
// dual feasible by parking each nonbasic variable at the bound matching the
// sign of its reduced cost, so no phase one is needed and a solved tableau is
// a valid warm start after arbitrary bound changes.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "vcloud/model.hpp"

namespace vcloud {

enum class Sense { le, eq, ge };
enum class LpStatus { optimal, infeasible, unbounded };

std::string_view to_string(Sense sense);
std::string_view to_string(LpStatus status);

template <typename Scalar>
struct LpModel {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix A;  // rows x cols
  Vector b;
  std::vector<Sense> sense;
  Vector cost;
  Vector lower;
  Vector upper;

  Eigen::Index rows() const { return A.rows(); }
  Eigen::Index cols() const { return A.cols(); }
};

template <typename Scalar>
struct LpSolution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  LpStatus status = LpStatus::infeasible;
  Vector values;          // structural variables
  Vector reduced_costs;   // zero for basic variables
  Scalar objective = 0;
  long iterations = 0;
};

template <typename Scalar>
struct SimplexOptions {
  Scalar primal_tol = Scalar(1e-9);
  Scalar dual_tol = Scalar(1e-9);
  Scalar pivot_tol = Scalar(1e-9);
  int stall_limit = 50;          // non-improving pivots before Bland's rule
  int refactor_every = 500;
  long max_iterations = 0;       // 0: 50 * (rows + cols) + 1000
  /// Stand-in for infinite bounds; a solution resting on one is unbounded.
  Scalar artificial_bound = Scalar(1e9);
};

template <typename Scalar>
class DualSimplex {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit DualSimplex(const LpModel<Scalar>& model,
                       SimplexOptions<Scalar> options = {})
      : opt_(options), m_(model.rows()), n_(model.cols()) {
    if (model.b.size() != m_ || static_cast<Eigen::Index>(model.sense.size()) != m_ ||
        model.cost.size() != n_ || model.lower.size() != n_ || model.upper.size() != n_) {
      throw InputError("LP model dimensions disagree");
    }
    full_.resize(m_, n_ + m_);
    full_.leftCols(n_) = model.A;
    full_.rightCols(m_).setIdentity();
    rows_.resize(m_);
    cols_.resize(n_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (model.A(i, j) != 0) {
          rows_[i].push_back(j);
          cols_[j].push_back(i);
        }
      }
    }
    rhs_ = model.b;
    cost_ = Vector::Zero(n_ + m_);
    cost_.head(n_) = model.cost;
    lower_.resize(n_ + m_);
    upper_.resize(n_ + m_);
    artificial_.assign(n_ + m_, false);
    for (Eigen::Index j = 0; j < n_; ++j) {
      lower_(j) = model.lower(j);
      upper_(j) = model.upper(j);
      if (!std::isfinite(static_cast<double>(lower_(j)))) {
        lower_(j) = -opt_.artificial_bound;
        artificial_[j] = true;
      }
      if (!std::isfinite(static_cast<double>(upper_(j)))) {
        upper_(j) = opt_.artificial_bound;
        artificial_[j] = true;
      }
    }
    sense_ = model.sense;
    for (Eigen::Index i = 0; i < m_; ++i) update_slack_bounds(i);

    basic_.resize(m_);
    nonbasic_.resize(n_);
    where_.resize(n_ + m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      where_[n_ + i] = i;
    }
    for (Eigen::Index k = 0; k < n_; ++k) {
      nonbasic_[k] = k;
      where_[k] = -(k + 1);
    }
    value_ = Vector::Zero(n_ + m_);
    refactor();
  }

  Eigen::Index rows() const { return m_; }
  Eigen::Index cols() const { return n_; }
  Scalar lower(Eigen::Index j) const { return lower_(j); }
  Scalar upper(Eigen::Index j) const { return upper_(j); }

  /// Change the box of a structural variable. Slack boxes follow.
  void set_bounds(Eigen::Index j, Scalar lo, Scalar hi) {
    if (lower_(j) == lo && upper_(j) == hi) return;
    lower_(j) = lo;
    upper_(j) = hi;
    changed_.push_back(j);
  }

  /// Re-optimize from the current basis.
  LpSolution<Scalar> solve() {
    if (!apply_bound_changes()) return infeasible(0);
    const long limit = opt_.max_iterations > 0 ? opt_.max_iterations
                                               : 50 * (m_ + n_) + 1000;
    long iterations = 0;
    int stalled = 0;
    bool bland = false;
    Scalar last = objective();
    bool refreshed = false;

    for (;;) {
      const Eigen::Index r = choose_leaving(bland);
      if (r < 0) {
        if (!refreshed && residual() > opt_.primal_tol * 100) {
          refactor();
          refreshed = true;
          continue;
        }
        return optimal(iterations);
      }
      const Eigen::Index q = choose_entering(r, bland);
      if (q < 0) {
        if (!refreshed && pivots_since_refactor_ > 0) {
          refactor();
          refreshed = true;
          continue;
        }
        return infeasible(iterations);
      }
      refreshed = false;
      pivot(r, q);
      ++iterations;
      if (++pivots_since_refactor_ >= opt_.refactor_every) refactor();
      const Scalar now = objective();
      if (now > last + opt_.dual_tol * std::max(Scalar(1), std::abs(last))) {
        last = now;
        stalled = 0;
        bland = false;
      } else if (++stalled >= opt_.stall_limit) {
        bland = true;
      }
      if (iterations >= limit) {
        throw SolverError("dual simplex: iteration limit " + std::to_string(limit) +
                          " reached (" + std::to_string(m_) + " rows, " +
                          std::to_string(n_) + " columns)");
      }
    }
  }

  /// Current objective c^T z.
  Scalar objective() const { return cost_.dot(value_); }

 private:
  // Slack s = b - a^T x lies within [b - max activity, b - min activity]
  // intersected with the sign the row sense demands.
  void update_slack_bounds(Eigen::Index i) {
    Scalar lo_act = 0, hi_act = 0;
    for (auto j : rows_[i]) {
      const Scalar a = full_(i, j);
      if (a > 0) {
        lo_act += a * lower_(j);
        hi_act += a * upper_(j);
      } else {
        lo_act += a * upper_(j);
        hi_act += a * lower_(j);
      }
    }
    Scalar lo = rhs_(i) - hi_act;
    Scalar hi = rhs_(i) - lo_act;
    switch (sense_[i]) {
      case Sense::le: lo = std::max(lo, Scalar(0)); break;
      case Sense::ge: hi = std::min(hi, Scalar(0)); break;
      case Sense::eq:
        lo = std::max(lo, Scalar(0));
        hi = std::min(hi, Scalar(0));
        break;
    }
    // Activity rounding can leave a hairline gap on tight rows.
    const Scalar slop = opt_.primal_tol * std::max(Scalar(1), std::abs(rhs_(i)));
    if (lo > hi && lo - hi <= slop) lo = hi;
    lower_(n_ + i) = lo;
    upper_(n_ + i) = hi;
  }

  // Parks a nonbasic variable at the bound its reduced cost asks for.
  void park(Eigen::Index k) {
    const auto j = nonbasic_[k];
    Scalar target;
    if (reduced_(k) > opt_.dual_tol) {
      target = lower_(j);
    } else if (reduced_(k) < -opt_.dual_tol) {
      target = upper_(j);
    } else {
      target = value_(j) == upper_(j) ? upper_(j) : lower_(j);
    }
    const Scalar delta = target - value_(j);
    if (delta == 0) return;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar a = tableau_(i, k);
      if (a != 0) value_(basic_[i]) -= a * delta;
    }
    value_(j) = target;
  }

  bool apply_bound_changes() {
    if (changed_.empty()) return true;
    std::vector<Eigen::Index> touched;
    std::vector<bool> row_seen(m_, false);
    for (auto j : changed_) {
      touched.push_back(j);
      for (auto i : cols_[j]) {
        if (!row_seen[i]) {
          row_seen[i] = true;
          update_slack_bounds(i);
          touched.push_back(n_ + i);
        }
      }
    }
    changed_.clear();
    bool ok = true;
    for (auto j : touched) {
      if (lower_(j) > upper_(j)) ok = false;
      if (where_[j] < 0) {
        const Eigen::Index k = -where_[j] - 1;
        // Force a move even when already at a bound value that is now stale.
        if (value_(j) != lower_(j) && value_(j) != upper_(j)) {
          const Scalar target = reduced_(k) < -opt_.dual_tol ? upper_(j) : lower_(j);
          const Scalar delta = target - value_(j);
          for (Eigen::Index i = 0; i < m_; ++i) {
            const Scalar a = tableau_(i, k);
            if (a != 0) value_(basic_[i]) -= a * delta;
          }
          value_(j) = target;
        }
        park(k);
      }
    }
    return ok;
  }

  // Recompute tableau, basic values and reduced costs from the original data.
  void refactor() {
    pivots_since_refactor_ = 0;
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> B(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) B.col(i) = full_.col(basic_[i]);
    Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(B);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> N(m_, n_);
    for (Eigen::Index k = 0; k < n_; ++k) N.col(k) = full_.col(nonbasic_[k]);
    tableau_ = lu.solve(N);
    if (!tableau_.allFinite()) {
      throw SolverError("dual simplex: singular basis during refactorization");
    }
    Vector cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) cb(i) = cost_(basic_[i]);
    reduced_ = Vector(n_);
    Vector xn(n_);
    for (Eigen::Index k = 0; k < n_; ++k) {
      const auto j = nonbasic_[k];
      reduced_(k) = cost_(j) - cb.dot(tableau_.col(k));
      if (reduced_(k) > opt_.dual_tol) {
        value_(j) = lower_(j);
      } else if (reduced_(k) < -opt_.dual_tol) {
        value_(j) = upper_(j);
      } else if (value_(j) != upper_(j)) {
        value_(j) = lower_(j);
      }
      xn(k) = value_(j);
    }
    const Vector beta = lu.solve(rhs_) - tableau_ * xn;
    for (Eigen::Index i = 0; i < m_; ++i) value_(basic_[i]) = beta(i);
  }

  // Largest |A x + s - b| over rows.
  Scalar residual() const {
    Scalar worst = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      Scalar act = value_(n_ + i) - rhs_(i);
      for (auto j : rows_[i]) act += full_(i, j) * value_(j);
      worst = std::max(worst, std::abs(act) / std::max(Scalar(1), std::abs(rhs_(i))));
    }
    return worst;
  }

  Scalar violation(Eigen::Index i) const {
    const auto j = basic_[i];
    const Scalar v = value_(j);
    const Scalar tol_lo = opt_.primal_tol * std::max(Scalar(1), std::abs(lower_(j)));
    const Scalar tol_hi = opt_.primal_tol * std::max(Scalar(1), std::abs(upper_(j)));
    if (v < lower_(j) - tol_lo) return lower_(j) - v;
    if (v > upper_(j) + tol_hi) return v - upper_(j);
    return 0;
  }

  Eigen::Index choose_leaving(bool bland) const {
    Eigen::Index best = -1;
    Scalar best_v = 0;
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar v = violation(i);
      if (v <= 0) continue;
      if (bland) {
        if (best < 0 || basic_[i] < basic_[best]) best = i;
      } else if (v > best_v || (v == best_v && basic_[i] < basic_[best])) {
        best = i;
        best_v = v;
      }
    }
    return best;
  }

  Eigen::Index choose_entering(Eigen::Index r, bool bland) const {
    const auto leaving = basic_[r];
    const bool increase = value_(leaving) < lower_(leaving);
    Eigen::Index best = -1;
    Scalar best_ratio = 0, best_alpha = 0;
    for (Eigen::Index k = 0; k < n_; ++k) {
      const auto j = nonbasic_[k];
      if (lower_(j) == upper_(j)) continue;
      const Scalar alpha = tableau_(r, k);
      if (std::abs(alpha) < opt_.pivot_tol) continue;
      const bool at_lower = value_(j) == lower_(j);
      // beta_r moves by -alpha per unit increase of z_j.
      const bool ok = increase ? (at_lower ? alpha < 0 : alpha > 0)
                               : (at_lower ? alpha > 0 : alpha < 0);
      if (!ok) continue;
      const Scalar slack = std::max(Scalar(0), at_lower ? reduced_(k) : -reduced_(k));
      const Scalar ratio = slack / std::abs(alpha);
      bool take = best < 0 || ratio < best_ratio - opt_.dual_tol;
      if (!take && ratio <= best_ratio + opt_.dual_tol) {
        take = bland ? j < nonbasic_[best]
                     : (std::abs(alpha) > best_alpha ||
                        (std::abs(alpha) == best_alpha && j < nonbasic_[best]));
      }
      if (take) {
        best = k;
        best_ratio = ratio;
        best_alpha = std::abs(alpha);
      }
    }
    return best;
  }

  void pivot(Eigen::Index r, Eigen::Index q) {
    const auto leaving = basic_[r];
    const auto entering = nonbasic_[q];
    const Scalar target = value_(leaving) < lower_(leaving) ? lower_(leaving) : upper_(leaving);
    const Scalar p = tableau_(r, q);
    const Scalar delta = (value_(leaving) - target) / p;

    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar a = tableau_(i, q);
      if (a != 0) value_(basic_[i]) -= a * delta;
    }
    value_(entering) += delta;
    value_(leaving) = target;

    const Scalar dq = reduced_(q);
    if (dq != 0) reduced_ -= (dq / p) * tableau_.row(r).transpose();
    reduced_(q) = -dq / p;

    const Vector col = tableau_.col(q);
    tableau_.row(r) /= p;
    tableau_(r, q) = Scalar(1) / p;
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (i == r) continue;
      const Scalar f = col(i);
      if (f == 0) continue;
      tableau_.row(i) -= f * tableau_.row(r);
      tableau_(i, q) = -f / p;
    }
    basic_[r] = entering;
    nonbasic_[q] = leaving;
    where_[entering] = r;
    where_[leaving] = -(q + 1);
  }

  LpSolution<Scalar> optimal(long iterations) const {
    LpSolution<Scalar> out;
    out.status = LpStatus::optimal;
    out.iterations = iterations;
    out.values = value_.head(n_);
    out.reduced_costs = Vector::Zero(n_);
    for (Eigen::Index k = 0; k < n_; ++k) {
      if (nonbasic_[k] < n_) out.reduced_costs(nonbasic_[k]) = reduced_(k);
    }
    out.objective = objective();
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (artificial_[j] &&
          std::abs(value_(j)) >= opt_.artificial_bound * Scalar(0.999999)) {
        out.status = LpStatus::unbounded;
      }
    }
    return out;
  }

  LpSolution<Scalar> infeasible(long iterations) const {
    LpSolution<Scalar> out;
    out.status = LpStatus::infeasible;
    out.iterations = iterations;
    out.values = Vector::Zero(n_);
    out.reduced_costs = Vector::Zero(n_);
    out.objective = std::numeric_limits<Scalar>::infinity();
    return out;
  }

  SimplexOptions<Scalar> opt_;
  Eigen::Index m_, n_;
  Matrix full_;  // [A | I]
  std::vector<std::vector<Eigen::Index>> rows_;  // structural nonzeros per row
  std::vector<std::vector<Eigen::Index>> cols_;  // rows per structural column
  Vector rhs_, cost_, lower_, upper_;
  std::vector<Sense> sense_;
  std::vector<bool> artificial_;
  std::vector<Eigen::Index> basic_;     // per row
  std::vector<Eigen::Index> nonbasic_;  // per tableau column
  std::vector<Eigen::Index> where_;     // row if basic, -(column + 1) if not
  std::vector<Eigen::Index> changed_;
  Matrix tableau_;  // B^-1 N
  Vector reduced_;  // per tableau column
  Vector value_;    // all n + m variables
  int pivots_since_refactor_ = 0;
};

/// One-shot LP solve.
template <typename Scalar>
LpSolution<Scalar> solve_lp(const LpModel<Scalar>& model,
                            SimplexOptions<Scalar> options = {}) {
  for (Eigen::Index j = 0; j < model.cols(); ++j) {
    if (model.lower(j) > model.upper(j)) {
      LpSolution<Scalar> out;
      out.values = LpSolution<Scalar>::Vector::Zero(model.cols());
      out.reduced_costs = out.values;
      out.objective = std::numeric_limits<Scalar>::infinity();
      return out;
    }
  }
  DualSimplex<Scalar> simplex(model, options);
  return simplex.solve();
}

}  // namespace vcloud
