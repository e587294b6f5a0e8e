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

// Dense bounded-variable primal simplex for the small LPs that arise as
// branch-and-bound relaxations.

#ifndef ESSKIT_LP_H_
#define ESSKIT_LP_H_

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace esskit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// lo <= sum coef * x <= hi. Either side may be infinite; lo == hi is an
// equality.
struct LinearRow {
  std::vector<std::pair<int, double>> coefs;
  double lo = -kInf;
  double hi = kInf;
};

struct LinearProgram {
  int num_vars = 0;
  Eigen::VectorXd lo;    // finite
  Eigen::VectorXd hi;    // finite
  Eigen::VectorXd cost;  // minimized
  std::vector<LinearRow> rows;

  explicit LinearProgram(int n = 0)
      : num_vars(n),
        lo(Eigen::VectorXd::Zero(n)),
        hi(Eigen::VectorXd::Zero(n)),
        cost(Eigen::VectorXd::Zero(n)) {}

  void AddRow(std::vector<std::pair<int, double>> coefs, double lo_val,
              double hi_val) {
    rows.push_back({std::move(coefs), lo_val, hi_val});
  }
};

enum class LpStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kNumericalError,
  kIterationLimit,
};

std::string ToString(LpStatus status);

struct LpOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-10;
  int max_iterations = 0;  // 0: 50 * (rows + columns)
  // Pivots without strict progress before falling back to Bland's rule.
  int degenerate_switch = 50;
};

struct LpResult {
  LpStatus status = LpStatus::kNumericalError;
  Eigen::VectorXd x;
  double objective = 0.0;
  int iterations = 0;
};

// Minimizes cost^T x. Throws std::invalid_argument on infinite or crossed
// variable bounds.
LpResult SolveLp(const LinearProgram& lp, const LpOptions& options = {});

// Same program with the objective negated.
LpResult MaximizeLp(LinearProgram lp, const LpOptions& options = {});

}  // namespace esskit

#endif  // ESSKIT_LP_H_
