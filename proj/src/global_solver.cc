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

#include "esskit/global_solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <queue>
#include <set>
#include <vector>

#include "esskit/lp.h"

namespace esskit {
namespace {

constexpr double kZeroTol = 1e-12;
constexpr double kSpatialTol = 1e-9;
constexpr double kMinWidth = 1e-9;
constexpr double kObbtSlack = 1e-9;

bool FixedAtZero(const Box& box, int v) {
  return std::abs(box.lo(v)) <= kZeroTol && std::abs(box.hi(v)) <= kZeroTol;
}

// Sign turning the program objective into a minimization.
double MinScale(const QuadProgram& p) {
  switch (p.sense) {
    case ObjectiveSense::kMinimize:
      return 1.0;
    case ObjectiveSense::kMaximize:
      return -1.0;
    case ObjectiveSense::kFeasibility:
      return 0.0;
  }
  return 0.0;
}

void AddLinearRows(const QuadProgram& p, LinearProgram* lp) {
  for (const LinearConstraint& lc : p.linear) {
    const double l = lc.sense == Sense::kLessEqual ? -kInf : lc.rhs;
    const double u = lc.sense == Sense::kGreaterEqual ? kInf : lc.rhs;
    lp->AddRow(lc.coefs, l, u);
  }
}

const char* KindName(BranchKind kind) {
  switch (kind) {
    case BranchKind::kNone:
      return "leaf";
    case BranchKind::kComplementarity:
      return "complementarity";
    case BranchKind::kSpatial:
      return "spatial";
  }
  return "?";
}

struct Node {
  Box box;
  double bound = -kInf;
  int depth = 0;
  int64_t id = 0;
  bool tightened = false;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id < b.id;
  }
};

}  // namespace

std::string ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kGapLimit:
      return "gap_limit";
    case SolveStatus::kNodeLimit:
      return "node_limit";
    case SolveStatus::kTimeLimit:
      return "time_limit";
  }
  return "unknown";
}

bool PairResolved(const QuadProgram& p, const Box& box, int pair) {
  const auto [a, b] = p.complementarity[pair];
  return FixedAtZero(box, a) || FixedAtZero(box, b);
}

BranchDecision ChooseBranch(const QuadProgram& p, const ProductSet& products,
                            const Box& box, const Eigen::VectorXd& point,
                            double feas_tol) {
  BranchDecision d;
  const int num_pairs = static_cast<int>(p.complementarity.size());

  // Rule 1: most violated complementarity pair.
  double worst = feas_tol;
  for (int k = 0; k < num_pairs; ++k) {
    if (PairResolved(p, box, k)) continue;
    const auto [a, b] = p.complementarity[k];
    if (std::min(std::abs(point(a)), std::abs(point(b))) <= feas_tol) continue;
    const double viol = std::abs(point(a) * point(b));
    if (viol > worst) {
      worst = viol;
      d.kind = BranchKind::kComplementarity;
      d.pair = k;
    }
  }
  if (d.kind != BranchKind::kNone) return d;

  int product = -1;
  const double gap = MaxProductGap(products, point, &product);
  if (gap <= kSpatialTol) return d;

  // Rule 2: resolve the remaining pairs before splitting space.
  double potential = -1.0;
  for (int k = 0; k < num_pairs; ++k) {
    if (PairResolved(p, box, k)) continue;
    const auto [a, b] = p.complementarity[k];
    const double v = std::max(std::abs(box.lo(a)), std::abs(box.hi(a))) *
                     std::max(std::abs(box.lo(b)), std::abs(box.hi(b)));
    if (v > potential) {
      potential = v;
      d.kind = BranchKind::kComplementarity;
      d.pair = k;
    }
  }
  if (d.kind != BranchKind::kNone) return d;

  // Rule 3: split the wider factor of the worst product.
  const Product& pr = products.products[product];
  const double wi = box.hi(pr.i) - box.lo(pr.i);
  const double wj = box.hi(pr.j) - box.lo(pr.j);
  const int v = wj > wi ? pr.j : pr.i;
  const double width = std::max(wi, wj);
  if (width < kMinWidth) return d;
  const double lo = box.lo(v) + 0.2 * width;
  const double hi = box.hi(v) - 0.2 * width;
  d.kind = BranchKind::kSpatial;
  d.var = v;
  d.product = product;
  d.value = std::clamp(point(v), lo, hi);
  return d;
}

std::pair<Box, Box> ApplyBranch(const QuadProgram& p, const Box& box,
                                const BranchDecision& decision) {
  Box left = box;
  Box right = box;
  if (decision.kind == BranchKind::kComplementarity) {
    const auto [a, b] = p.complementarity[decision.pair];
    left.lo(a) = left.hi(a) = 0.0;
    right.lo(b) = right.hi(b) = 0.0;
  } else if (decision.kind == BranchKind::kSpatial) {
    left.hi(decision.var) = decision.value;
    right.lo(decision.var) = decision.value;
  }
  return {std::move(left), std::move(right)};
}

bool TightenBounds(const QuadProgram& p, const ProductSet& products, Box* box) {
  if (products.quad_vars.empty()) return true;
  LinearProgram lp(p.num_vars);
  lp.lo = box->lo;
  lp.hi = box->hi;
  AddLinearRows(p, &lp);
  for (int v : products.quad_vars) {
    if (!(box->hi(v) > box->lo(v))) continue;
    for (int dir : {1, -1}) {
      lp.cost.setZero();
      lp.cost(v) = dir;
      const LpResult r = SolveLp(lp);
      if (r.status == LpStatus::kInfeasible) return false;
      if (r.status != LpStatus::kOptimal) continue;
      if (dir > 0) {
        box->lo(v) = std::min(box->hi(v), std::max(box->lo(v), r.x(v) - kObbtSlack));
      } else {
        box->hi(v) = std::max(box->lo(v), std::min(box->hi(v), r.x(v) + kObbtSlack));
      }
      lp.lo(v) = box->lo(v);
      lp.hi(v) = box->hi(v);
    }
  }
  return true;
}

std::optional<Eigen::VectorXd> Polish(const QuadProgram& p, const Box& box,
                                      const Eigen::VectorXd& start,
                                      int max_iterations, double feas_tol) {
  const int n = p.num_vars;
  Eigen::VectorXd lo = box.lo;
  Eigen::VectorXd hi = box.hi;
  for (int k = 0; k < static_cast<int>(p.complementarity.size()); ++k) {
    if (PairResolved(p, box, k)) continue;
    const auto [a, b] = p.complementarity[k];
    const int v = std::abs(start(a)) < std::abs(start(b)) ? a : b;
    if (lo(v) <= 0.0 && hi(v) >= 0.0) lo(v) = hi(v) = 0.0;
  }
  const double scale = MinScale(p);
  Eigen::VectorXd z = start.cwiseMax(lo).cwiseMin(hi);
  double radius = (hi - lo).maxCoeff();
  if (!(radius > 0.0)) radius = 1.0;

  std::optional<Eigen::VectorXd> best;
  double best_value = kInf;
  auto consider = [&](const Eigen::VectorXd& c) {
    if (!p.IsFeasible(c, feas_tol)) return false;
    const double v = scale * p.ObjectiveValue(c);
    if (best && v >= best_value - 1e-12) return false;
    best = c;
    best_value = v;
    return true;
  };
  consider(z);
  if (best && scale == 0.0) return best;

  for (int it = 0; it < max_iterations && radius >= 1e-9; ++it) {
    LinearProgram lp(n);
    lp.lo = lo.cwiseMax((z.array() - radius).matrix());
    lp.hi = hi.cwiseMin((z.array() + radius).matrix());
    lp.cost = scale * p.objective.Gradient(z);
    AddLinearRows(p, &lp);
    for (const QuadConstraint& qc : p.quadratic) {
      const Eigen::VectorXd g = qc.form.Gradient(z);
      const double rhs = qc.rhs - qc.form.Evaluate(z) + g.dot(z);
      std::vector<std::pair<int, double>> coefs;
      for (int j = 0; j < n; ++j) {
        if (g(j) != 0.0) coefs.push_back({j, g(j)});
      }
      const double l = qc.sense == Sense::kLessEqual ? -kInf : rhs;
      const double u = qc.sense == Sense::kGreaterEqual ? kInf : rhs;
      lp.AddRow(std::move(coefs), l, u);
    }
    const LpResult r = SolveLp(lp);
    if (r.status != LpStatus::kOptimal) {
      radius *= 0.25;
      continue;
    }
    const Eigen::VectorXd& y = r.x;
    const double step = (y - z).lpNorm<Eigen::Infinity>();
    if (consider(y)) {
      if (scale == 0.0) return best;
      z = y;
      if (step < 1e-10) break;
      continue;
    }
    if (!best) {
      if (step < 1e-10) break;
      z = y;
      continue;
    }
    if (step < 1e-10) break;
    radius = 0.5 * std::min(radius, step);
  }
  return best;
}

Solution SolveGlobal(const QuadProgram& p, const SolverConfig& config) {
  p.Validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  const char* env = std::getenv("ESS_TRACE");
  const bool trace = config.trace || (env != nullptr && std::strcmp(env, "1") == 0);
  const double scale = MinScale(p);
  const ProductSet products = CollectProducts(p, config.rlt);

  Solution sol;
  double incumbent = kInf;
  auto offer = [&](const Eigen::VectorXd& z) {
    if (!p.IsFeasible(z, config.feas_tol)) return;
    const double v = scale * p.ObjectiveValue(z);
    if (v < incumbent) {
      incumbent = v;
      sol.x = z;
      sol.has_solution = true;
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  int64_t next_id = 0;
  Node root;
  root.box = {p.lo, p.hi};
  root.id = next_id++;
  open.push(root);

  std::set<std::vector<bool>> polished_patterns;
  int polish_runs = 0;
  double unresolved_bound = kInf;
  bool stopped = false;

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= incumbent - config.gap_tol) continue;
    if (sol.nodes >= config.max_nodes) {
      sol.status = SolveStatus::kNodeLimit;
      open.push(std::move(node));
      stopped = true;
      break;
    }
    if (elapsed() > config.time_limit_s) {
      sol.status = SolveStatus::kTimeLimit;
      open.push(std::move(node));
      stopped = true;
      break;
    }
    ++sol.nodes;
    const bool is_root = node.id == 0;

    if (config.obbt && !node.tightened) {
      bool all_resolved = true;
      for (int k = 0; k < static_cast<int>(p.complementarity.size()); ++k) {
        if (!PairResolved(p, node.box, k)) {
          all_resolved = false;
          break;
        }
      }
      if (is_root || all_resolved) {
        if (!TightenBounds(p, products, &node.box)) {
          if (trace) {
            std::fprintf(stderr, "node %lld depth %d infeasible (bounds)\n",
                         static_cast<long long>(node.id), node.depth);
          }
          continue;
        }
        node.tightened = all_resolved;
      }
    }

    const Relaxation rel = McCormickRelax(p, products, node.box.lo, node.box.hi);
    const LpResult lp = SolveLp(rel.lp);
    if (lp.status == LpStatus::kInfeasible) {
      if (trace) {
        std::fprintf(stderr, "node %lld depth %d infeasible\n",
                     static_cast<long long>(node.id), node.depth);
      }
      continue;
    }

    BranchDecision decision;
    if (lp.status != LpStatus::kOptimal) {
      // Fall back to bisecting the widest variable without a new bound.
      int widest = -1;
      double width = kMinWidth;
      for (int v = 0; v < p.num_vars; ++v) {
        if (node.box.hi(v) - node.box.lo(v) > width) {
          width = node.box.hi(v) - node.box.lo(v);
          widest = v;
        }
      }
      if (widest < 0) {
        ++sol.unresolved_leaves;
        unresolved_bound = std::min(unresolved_bound, node.bound);
        continue;
      }
      decision.kind = BranchKind::kSpatial;
      decision.var = widest;
      decision.value = 0.5 * (node.box.lo(widest) + node.box.hi(widest));
    } else {
      node.bound = std::max(node.bound, lp.objective + rel.objective_offset);
      const Eigen::VectorXd z = lp.x.head(p.num_vars);
      offer(z);

      bool polish_now = false;
      if (config.polish && polish_runs < config.polish_budget) {
        if (is_root) {
          polish_now = true;
        } else if (!p.complementarity.empty()) {
          std::vector<bool> pattern;
          bool complementary = true;
          for (const auto& [a, b] : p.complementarity) {
            if (std::min(std::abs(z(a)), std::abs(z(b))) > config.feas_tol) {
              complementary = false;
              break;
            }
            pattern.push_back(std::abs(z(a)) <= std::abs(z(b)));
          }
          polish_now = complementary && polished_patterns.insert(pattern).second;
        }
      }
      if (polish_now) {
        ++polish_runs;
        if (auto polished = Polish(p, node.box, z, config.polish_iterations,
                                   config.feas_tol)) {
          offer(*polished);
        }
      }

      if (node.bound >= incumbent - config.gap_tol) {
        if (trace) {
          std::fprintf(stderr, "node %lld depth %d bound %.9g incumbent %.9g fathomed\n",
                       static_cast<long long>(node.id), node.depth, node.bound, incumbent);
        }
        continue;
      }
      decision = ChooseBranch(p, products, node.box, lp.x, config.feas_tol);
    }

    if (trace) {
      std::fprintf(stderr, "node %lld depth %d bound %.9g incumbent %.9g %s",
                   static_cast<long long>(node.id), node.depth, node.bound, incumbent,
                   KindName(decision.kind));
      if (decision.kind == BranchKind::kComplementarity) {
        std::fprintf(stderr, " pair %d", decision.pair);
      } else if (decision.kind == BranchKind::kSpatial) {
        std::fprintf(stderr, " var %d at %.9g", decision.var, decision.value);
      }
      std::fprintf(stderr, "\n");
    }

    if (decision.kind == BranchKind::kNone) {
      ++sol.unresolved_leaves;
      unresolved_bound = std::min(unresolved_bound, node.bound);
      continue;
    }
    auto [left, right] = ApplyBranch(p, node.box, decision);
    for (Box* b : {&left, &right}) {
      Node child;
      child.box = std::move(*b);
      child.bound = node.bound;
      child.depth = node.depth + 1;
      child.id = next_id++;
      child.tightened =
          node.tightened && decision.kind == BranchKind::kSpatial;
      open.push(std::move(child));
    }
  }

  double bound = std::min(incumbent, unresolved_bound);
  if (stopped) {
    std::priority_queue<Node, std::vector<Node>, NodeOrder> rest = open;
    while (!rest.empty()) {
      bound = std::min(bound, rest.top().bound);
      rest.pop();
    }
  } else if (sol.has_solution) {
    sol.status = unresolved_bound < incumbent - config.gap_tol
                     ? SolveStatus::kGapLimit
                     : SolveStatus::kOptimal;
  } else {
    sol.status = sol.unresolved_leaves > 0 ? SolveStatus::kGapLimit
                                           : SolveStatus::kInfeasible;
  }

  if (sol.has_solution) sol.objective = p.ObjectiveValue(sol.x);
  if (p.sense == ObjectiveSense::kMaximize) {
    sol.lower_bound = sol.has_solution ? sol.objective : -kInf;
    sol.upper_bound = -bound;
  } else if (p.sense == ObjectiveSense::kMinimize) {
    sol.lower_bound = bound;
    sol.upper_bound = sol.has_solution ? sol.objective : kInf;
  } else {
    sol.lower_bound = sol.upper_bound = 0.0;
  }
  sol.gap = sol.has_solution ? std::max(0.0, sol.upper_bound - sol.lower_bound) : kInf;
  sol.wall_time_s = elapsed();
  return sol;
}

}  // namespace esskit
