// Copyright 2026 The esskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Spatial branch-and-bound for box-bounded QCQPs with complementarity
// pairs. Nodes are explored best-bound first, most recent first on ties.

#ifndef ESSKIT_GLOBAL_SOLVER_H_
#define ESSKIT_GLOBAL_SOLVER_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "esskit/mccormick.h"
#include "esskit/quad_program.h"

namespace esskit {

enum class SolveStatus {
  kOptimal,
  kInfeasible,
  kGapLimit,
  kNodeLimit,
  kTimeLimit,
};

std::string ToString(SolveStatus status);

struct SolverConfig {
  double gap_tol = 1e-7;   // absolute
  double feas_tol = 1e-6;  // for accepting incumbents
  int64_t max_nodes = 200000;
  double time_limit_s = std::numeric_limits<double>::infinity();
  bool rlt = true;
  bool obbt = true;
  bool polish = true;
  int polish_iterations = 100;
  int polish_budget = 400;
  // Print one line per node to stderr. Also enabled by ESS_TRACE=1.
  bool trace = false;
};

struct Solution {
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_solution = false;
  Eigen::VectorXd x;
  double objective = 0.0;  // at x, in the program's own sense
  // Proven range for the optimum in the program's own sense.
  double lower_bound = -std::numeric_limits<double>::infinity();
  double upper_bound = std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  int64_t nodes = 0;
  int64_t unresolved_leaves = 0;
  double wall_time_s = 0.0;
};

struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
};

enum class BranchKind { kNone, kComplementarity, kSpatial };

struct BranchDecision {
  BranchKind kind = BranchKind::kNone;
  int pair = -1;  // complementarity pair index
  int var = -1;   // spatial split variable
  double value = 0.0;
  int product = -1;
};

bool PairResolved(const QuadProgram& p, const Box& box, int pair);

// Picks the branching rule for a node whose relaxation solution (z, w) is
// `point`.
BranchDecision ChooseBranch(const QuadProgram& p, const ProductSet& products,
                            const Box& box, const Eigen::VectorXd& point,
                            double feas_tol);

// First child: the left side of the split (or z_a = 0); second: the right
// side (or z_b = 0).
std::pair<Box, Box> ApplyBranch(const QuadProgram& p, const Box& box,
                                const BranchDecision& decision);

// Optimization-based bound tightening on the quadratic variables using the
// linear constraints. Returns false when the box is proven empty.
bool TightenBounds(const QuadProgram& p, const ProductSet& products, Box* box);

// Local search from `start`: fixes the smaller side of each complementarity
// pair, then runs sequential linear programming inside a trust region.
// Returns the best point found that is feasible within feas_tol.
std::optional<Eigen::VectorXd> Polish(const QuadProgram& p, const Box& box,
                                      const Eigen::VectorXd& start,
                                      int max_iterations, double feas_tol);

// Throws std::invalid_argument if the program fails Validate().
Solution SolveGlobal(const QuadProgram& p, const SolverConfig& config = {});

}  // namespace esskit

#endif  // ESSKIT_GLOBAL_SOLVER_H_
