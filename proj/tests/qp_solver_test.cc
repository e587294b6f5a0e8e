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

#include <cmath>
#include <fstream>
#include <string>

#include "doctest.h"
#include "esskit/generators.h"
#include "esskit/global_solver.h"
#include "esskit/mccormick.h"
#include "esskit/quad_program.h"
#include "json.hpp"
#include "test_util.h"

namespace esskit {
namespace {

QuadProgram Box1D(double q) {
  QuadProgram p;
  p.AddVariable("x", -1.0, 1.0);
  p.Finalize();
  p.sense = ObjectiveSense::kMinimize;
  p.objective.Q(0, 0) = q;
  return p;
}

struct SuiteInstance {
  QuadProgram program;
  double oracle = 0.0;
  Eigen::VectorXd oracle_point;
};

std::vector<SuiteInstance> LoadSuite() {
  std::ifstream in(testing::DataPath("qcqp_suite.json"));
  REQUIRE(in.good());
  const nlohmann::json j = nlohmann::json::parse(in);
  std::vector<SuiteInstance> out;
  for (const auto& inst : j.at("instances")) {
    const int n = inst.at("n");
    SuiteInstance s;
    QuadProgram& p = s.program;
    for (int i = 0; i < n; ++i) p.AddVariable("x" + std::to_string(i), 0.0, 1.0);
    p.Finalize();
    p.sense = ObjectiveSense::kMinimize;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) p.objective.Q(r, c) = inst.at("Q")[r][c].get<double>();
      p.objective.c(r) = inst.at("c")[r].get<double>();
    }
    QuadConstraint qc{QuadraticForm(n)};
    qc.form.AddProduct(inst.at("a"), inst.at("b"), 1.0);
    for (int i = 0; i < n; ++i) qc.form.c(i) = inst.at("lin")[i].get<double>();
    qc.sense = inst.at("sense") == "<=" ? Sense::kLessEqual : Sense::kGreaterEqual;
    qc.rhs = inst.at("rhs");
    p.quadratic.push_back(qc);
    s.oracle = inst.at("oracle_value");
    s.oracle_point.resize(n);
    for (int i = 0; i < n; ++i) s.oracle_point(i) = inst.at("oracle_point")[i].get<double>();
    out.push_back(std::move(s));
  }
  return out;
}

double RootBound(const QuadProgram& p, bool rlt) {
  const ProductSet ps = CollectProducts(p, rlt);
  const Relaxation rel = McCormickRelax(p, ps, p.lo, p.hi);
  const LpResult r = SolveLp(rel.lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  return r.objective + rel.objective_offset;
}

TEST_CASE("convex one-dimensional minimum") {
  const Solution s = SolveGlobal(Box1D(1.0));
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(0.0).scale(1.0).epsilon(1e-7));
  CHECK(std::abs(s.x(0)) <= 1e-3);
}

TEST_CASE("concave minimum sits at the lower vertex") {
  const Solution s = SolveGlobal(Box1D(-1.0));
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(s.x(0) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("maximization and linear constraints") {
  // max x^2 + y^2 subject to x + y <= 1.5 on [0, 1]^2: value 1.25.
  QuadProgram p;
  p.AddVariable("x", 0.0, 1.0);
  p.AddVariable("y", 0.0, 1.0);
  p.Finalize();
  p.sense = ObjectiveSense::kMaximize;
  p.objective.Q = Eigen::MatrixXd::Identity(2, 2);
  p.linear.push_back({{{0, 1.0}, {1, 1.0}}, Sense::kLessEqual, 1.5});
  const Solution s = SolveGlobal(p);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(1.25).epsilon(1e-7));
}

TEST_CASE("infeasible quadratic constraint") {
  // x^2 + y^2 >= 3 cannot hold on the unit box.
  QuadProgram p;
  p.AddVariable("x", 0.0, 1.0);
  p.AddVariable("y", 0.0, 1.0);
  p.Finalize();
  p.sense = ObjectiveSense::kFeasibility;
  QuadConstraint qc{QuadraticForm(2)};
  qc.form.Q = Eigen::MatrixXd::Identity(2, 2);
  qc.rhs = 3.0;
  p.quadratic.push_back(qc);
  const Solution s = SolveGlobal(p);
  CHECK(s.status == SolveStatus::kInfeasible);
  CHECK_FALSE(s.has_solution);
}

TEST_CASE("complementarity is enforced") {
  // max x + y with x * y = 0 as a complementarity pair: one of them is zero.
  QuadProgram p;
  p.AddVariable("x", 0.0, 1.0);
  p.AddVariable("y", 0.0, 2.0);
  p.Finalize();
  p.sense = ObjectiveSense::kMaximize;
  p.objective.c << 1.0, 1.0;
  p.complementarity.push_back({0, 1});
  const Solution s = SolveGlobal(p);
  REQUIRE(s.status == SolveStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(s.x(0) * s.x(1) <= 1e-9);
}

TEST_CASE("node limit is reported") {
  SolverConfig cfg;
  cfg.max_nodes = 1;
  cfg.polish = false;
  cfg.obbt = false;
  QuadProgram p = LoadSuite()[4].program;
  const Solution s = SolveGlobal(p, cfg);
  CHECK((s.status == SolveStatus::kNodeLimit || s.status == SolveStatus::kOptimal));
  CHECK(s.nodes <= 1);
}

TEST_CASE("McCormick envelope is tight at a corner") {
  QuadProgram p;
  p.AddVariable("x", 0.0, 1.0);
  p.AddVariable("y", 0.0, 1.0);
  p.Finalize();
  p.sense = ObjectiveSense::kMinimize;
  p.objective.AddProduct(0, 1, 1.0);
  const ProductSet ps = CollectProducts(p, false);
  REQUIRE(ps.products.size() == 1);
  Eigen::VectorXd lo(2), hi(2);
  lo << 1.0, 1.0;
  hi << 1.0, 1.0;
  Relaxation rel = McCormickRelax(p, ps, lo, hi);
  const int w = ps.lp_index(0);
  rel.lp.cost.setZero();
  rel.lp.cost(w) = 1.0;
  CHECK(SolveLp(rel.lp).objective == doctest::Approx(1.0));
  CHECK(MaximizeLp(rel.lp).objective == doctest::Approx(1.0));
}

TEST_CASE("McCormick relaxation contains every feasible lifted point") {
  PortableRng rng(5);
  for (const SuiteInstance& inst : LoadSuite()) {
    const QuadProgram& p = inst.program;
    const ProductSet ps = CollectProducts(p, true);
    for (int k = 0; k < 30; ++k) {
      Eigen::VectorXd lo(p.num_vars), hi(p.num_vars), z(p.num_vars);
      for (int i = 0; i < p.num_vars; ++i) {
        const double a = rng.Uniform01(), b = rng.Uniform01();
        lo(i) = std::min(a, b);
        hi(i) = std::max(a, b);
        z(i) = lo(i) + (hi(i) - lo(i)) * rng.Uniform01();
      }
      const Relaxation rel = McCormickRelax(p, ps, lo, hi);
      const Eigen::VectorXd lift = LiftPoint(ps, z);
      double worst = 0.0;
      for (const LinearRow& row : rel.lp.rows) {
        double v = 0.0;
        for (const auto& [j, a] : row.coefs) v += a * lift(j);
        worst = std::max({worst, row.lo - v, v - row.hi});
      }
      for (int j = 0; j < rel.lp.num_vars; ++j) {
        worst = std::max({worst, rel.lp.lo(j) - lift(j), lift(j) - rel.lp.hi(j)});
      }
      // The lifted constraint row holds only when z itself is feasible.
      if (p.IsFeasible(z, 1e-12)) CHECK(worst <= 1e-9);
      const double relaxed = rel.lp.cost.dot(lift) + rel.objective_offset;
      CHECK(relaxed == doctest::Approx(p.ObjectiveValue(z)).epsilon(1e-9));
    }
  }
}

TEST_CASE("complementarity branching picks the most violated pair") {
  QuadProgram p;
  for (int j = 0; j < 4; ++j) p.AddVariable("x" + std::to_string(j), 0.0, 1.0);
  for (int j = 0; j < 4; ++j) p.AddVariable("s" + std::to_string(j), 0.0, 1.0);
  p.Finalize();
  for (int j = 0; j < 4; ++j) p.complementarity.push_back({j, 4 + j});
  const ProductSet ps = CollectProducts(p, false);
  const Box box{p.lo, p.hi};
  Eigen::VectorXd point = Eigen::VectorXd::Zero(8);
  point(1) = 0.3;
  point(5) = 0.3;  // 0.09
  point(3) = 0.5;
  point(7) = 0.4;  // 0.2
  const BranchDecision d = ChooseBranch(p, ps, box, point, 1e-6);
  REQUIRE(d.kind == BranchKind::kComplementarity);
  CHECK(d.pair == 3);
  const auto [left, right] = ApplyBranch(p, box, d);
  CHECK(left.hi(3) == 0.0);
  CHECK(left.hi(7) == 1.0);
  CHECK(right.hi(7) == 0.0);
  CHECK(right.hi(3) == 1.0);
  CHECK(PairResolved(p, left, 3));
  CHECK_FALSE(PairResolved(p, box, 3));
}

TEST_CASE("spatial branching splits the wider factor") {
  QuadProgram p;
  p.AddVariable("x1", 0.0, 1.0);
  p.AddVariable("x2", 0.0, 2.0);
  p.Finalize();
  p.sense = ObjectiveSense::kMinimize;
  p.objective.AddProduct(0, 1, 1.0);
  const ProductSet ps = CollectProducts(p, false);
  const Box box{p.lo, p.hi};
  Eigen::VectorXd point(3);
  point << 0.5, 0.5, 0.15;  // w - x1 x2 = -0.1
  const BranchDecision d = ChooseBranch(p, ps, box, point, 1e-6);
  REQUIRE(d.kind == BranchKind::kSpatial);
  CHECK(d.var == 1);
  CHECK(d.value == doctest::Approx(0.5));
  const auto [left, right] = ApplyBranch(p, box, d);
  CHECK(left.hi(1) == doctest::Approx(0.5));
  CHECK(right.lo(1) == doctest::Approx(0.5));

  point(2) = 0.25;
  CHECK(ChooseBranch(p, ps, box, point, 1e-6).kind == BranchKind::kNone);
}

TEST_CASE("random QCQP suite matches the brute-force optimum") {
  int index = 0;
  for (const SuiteInstance& inst : LoadSuite()) {
    CAPTURE(index);
    const Solution s = SolveGlobal(inst.program);
    REQUIRE(s.status == SolveStatus::kOptimal);
    CHECK(std::abs(s.objective - inst.oracle) <= 1e-4);
    CHECK(inst.program.IsFeasible(s.x, 1e-6));
    CHECK(RootBound(inst.program, false) <= inst.oracle + 1e-9);
    CHECK(RootBound(inst.program, true) <= inst.oracle + 1e-9);
    ++index;
  }
}

}  // namespace
}  // namespace esskit
