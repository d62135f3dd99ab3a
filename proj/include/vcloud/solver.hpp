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

// Branch-and-bound over the placement MILP and a brute-force oracle.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcloud/milp.hpp"
#include "vcloud/placement.hpp"
#include "vcloud/scenario.hpp"

namespace vcloud {

enum class SolveStatus { optimal, infeasible, node_limit, time_limit };

std::string_view to_string(SolveStatus status);

struct SolveStats {
  long nodes = 0;          // LP relaxations solved in the tree
  long lp_iterations = 0;  // simplex pivots, heuristics included
  double wall_ms = 0.0;
  double best_bound = 0.0;
  /// Largest drop of a child LP bound below its parent's.
  double max_bound_drop = 0.0;
};

struct MilpSolution {
  SolveStatus status = SolveStatus::infeasible;
  Placement placement;
  std::vector<double> values;  // canonical assignment
  double objective = 0.0;
  SolveStats stats;

  bool has_incumbent() const { return !values.empty(); }
  double gap() const { return objective - stats.best_bound; }
};

struct BranchOptions {
  double absolute_gap = 1e-6;
  double time_limit_s = 0.0;  // 0: none
  long node_limit = 0;        // 0: none
  bool orbital = true;
  /// Continue with the one-child of the node just branched on before
  /// returning to the best open node.
  bool plunge = true;
  /// Per-demand rounded covering rows added to the relaxation.
  bool cover_rows = true;
  /// Diving heuristic every this many nodes (0: root only).
  int dive_every = 64;
  std::optional<std::vector<double>> warm_start;
};

MilpSolution branch_and_bound(const MilpProblem& problem,
                              const BranchOptions& options = {});

/// Enumeration limit for the oracle: demands * nodes.
inline constexpr std::size_t kOracleMaxPairs = 18;

/// Minimum power over every serving pattern, each with its processing split
/// solved as an LP. Works from the scenario alone. Throws InputError when
/// demands * nodes exceeds kOracleMaxPairs.
MilpSolution exhaustive_oracle(const Scenario& scenario);

// ---------------------------------------------------------------------------
// Symmetry
// ---------------------------------------------------------------------------

/// Classes of interchangeable nodes or demands. Swapping any two members of a
/// class (a demand swap also swaps the two sources) maps the problem onto
/// itself.
struct SymmetryClasses {
  enum class Kind { node, demand };
  struct Class {
    Kind kind;
    std::vector<std::size_t> members;
  };
  std::vector<Class> classes;
};

SymmetryClasses detect_symmetry(const MilpProblem& problem);

/// Variable permutation swapping two members of a class.
std::vector<std::size_t> transposition(const MilpProblem& problem,
                                       SymmetryClasses::Kind kind,
                                       std::size_t first, std::size_t second);

/// True when `perm` maps variables and rows of the problem onto themselves.
bool is_automorphism(const MilpProblem& problem,
                     const std::vector<std::size_t>& perm);

}  // namespace vcloud
