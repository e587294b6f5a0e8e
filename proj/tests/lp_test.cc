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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "esskit/generators.h"
#include "esskit/lp.h"
#include "esskit/sequence_form.h"
#include "test_util.h"

namespace esskit {
namespace {

LinearProgram UnitBox(int n) {
  LinearProgram lp(n);
  lp.hi.setOnes();
  return lp;
}

// Every pure plan of a game, by enumerating one action per infoset.
std::vector<Vec> PurePlans(const GameTree& tree, const SequenceForm& sf) {
  const int k = tree.NumInfosets(1);
  std::vector<int> choice(k, 0);
  std::vector<Vec> out;
  while (true) {
    out.push_back(BehavioralToRealization(tree, sf, PureStrategy(tree, 1, choice)));
    int i = 0;
    while (i < k && ++choice[i] == static_cast<int>(tree.infoset(1, i).actions.size())) {
      choice[i++] = 0;
    }
    if (i == k) break;
  }
  return out;
}

TEST_CASE("maximize x + y on the unit box under x + y <= 1") {
  LinearProgram lp = UnitBox(2);
  lp.cost << 1.0, 1.0;
  lp.AddRow({{0, 1.0}, {1, 1.0}}, -kInf, 1.0);
  const LpResult r = MaximizeLp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.x.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("infeasible system") {
  LinearProgram lp(1);
  lp.lo(0) = -10.0;
  lp.hi(0) = 10.0;
  lp.AddRow({{0, 1.0}}, 2.0, kInf);
  lp.AddRow({{0, 1.0}}, -kInf, 1.0);
  CHECK(SolveLp(lp).status == LpStatus::kInfeasible);
}

TEST_CASE("crossed row bounds are infeasible and crossed variable bounds throw") {
  LinearProgram lp = UnitBox(1);
  lp.AddRow({{0, 1.0}}, 1.0, 0.5);
  CHECK(SolveLp(lp).status == LpStatus::kInfeasible);
  LinearProgram bad = UnitBox(1);
  bad.lo(0) = 2.0;
  CHECK_THROWS_AS(SolveLp(bad), std::invalid_argument);
  LinearProgram inf = UnitBox(1);
  inf.hi(0) = kInf;
  CHECK_THROWS_AS(SolveLp(inf), std::invalid_argument);
}

TEST_CASE("equality rows and upper-bounded optimum") {
  // min -x0 - 2 x1 - 3 x2, x0 + x1 + x2 = 1.5, x in [0, 1]^3.
  LinearProgram lp = UnitBox(3);
  lp.cost << -1.0, -2.0, -3.0;
  lp.AddRow({{0, 1.0}, {1, 1.0}, {2, 1.0}}, 1.5, 1.5);
  const LpResult r = SolveLp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(r.x(2) == doctest::Approx(1.0));
  CHECK(r.x(1) == doctest::Approx(0.5));
}

TEST_CASE("degenerate vertex does not cycle") {
  // A classic cycling example for Dantzig pricing without safeguards.
  LinearProgram lp(4);
  lp.hi.setConstant(1e3);
  lp.cost << -0.75, 150.0, -0.02, 6.0;
  lp.AddRow({{0, 0.25}, {1, -60.0}, {2, -0.04}, {3, 9.0}}, -kInf, 0.0);
  lp.AddRow({{0, 0.5}, {1, -90.0}, {2, -0.02}, {3, 3.0}}, -kInf, 0.0);
  lp.AddRow({{2, 1.0}}, -kInf, 1.0);
  const LpResult r = SolveLp(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-0.05).epsilon(1e-9));
}

TEST_CASE("sequence-form polytope vertices are pure plans") {
  for (const GameTree& tree : {CancerGame(), RandomSignalGame(3, 2, 4).tree}) {
    const SequenceForm sf = testing::SymmetricForm(tree);
    const std::vector<Vec> pure = PurePlans(tree, sf);
    LinearProgram lp(sf.d());
    lp.hi.setOnes();
    for (int r = 0; r < sf.rows(); ++r) {
      std::vector<std::pair<int, double>> coefs;
      for (int j = 0; j < sf.d(); ++j) {
        if (sf.E(r, j) != 0.0) coefs.push_back({j, sf.E(r, j)});
      }
      lp.AddRow(coefs, sf.e(r), sf.e(r));
    }
    lp.cost.setOnes();
    REQUIRE(SolveLp(lp).status == LpStatus::kOptimal);
    PortableRng rng(17);
    for (int k = 0; k < 50; ++k) {
      for (int j = 0; j < sf.d(); ++j) lp.cost(j) = rng.Uniform(-1.0, 1.0);
      const LpResult r = SolveLp(lp);
      REQUIRE(r.status == LpStatus::kOptimal);
      double best = std::numeric_limits<double>::infinity();
      for (const Vec& v : pure) best = std::min(best, lp.cost.dot(v));
      CHECK(r.objective == doctest::Approx(best).epsilon(1e-10));
      double closest = std::numeric_limits<double>::infinity();
      for (const Vec& v : pure) closest = std::min(closest, (r.x - v).cwiseAbs().maxCoeff());
      CHECK(closest <= 1e-9);
    }
  }
}

TEST_CASE("random feasible LPs agree with their known feasible point") {
  PortableRng rng(99);
  for (int k = 0; k < 40; ++k) {
    const int n = 3 + k % 6;
    const int m = 2 + k % 5;
    LinearProgram lp(n);
    Vec z(n);
    for (int j = 0; j < n; ++j) {
      lp.lo(j) = -1.0;
      lp.hi(j) = 1.0;
      z(j) = rng.Uniform(-0.9, 0.9);
      lp.cost(j) = rng.Uniform(-1.0, 1.0);
    }
    for (int i = 0; i < m; ++i) {
      std::vector<std::pair<int, double>> coefs;
      double v = 0.0;
      for (int j = 0; j < n; ++j) {
        const double a = rng.Uniform(-1.0, 1.0);
        coefs.push_back({j, a});
        v += a * z(j);
      }
      if (i % 3 == 0) {
        lp.AddRow(coefs, v, v);
      } else {
        lp.AddRow(coefs, -kInf, v + rng.Uniform01());
      }
    }
    const LpResult r = SolveLp(lp);
    REQUIRE(r.status == LpStatus::kOptimal);
    CHECK(r.objective <= lp.cost.dot(z) + 1e-9);
    for (const LinearRow& row : lp.rows) {
      double v = 0.0;
      for (const auto& [j, a] : row.coefs) v += a * r.x(j);
      CHECK(v >= row.lo - 1e-8);
      CHECK(v <= row.hi + 1e-8);
    }
  }
}

}  // namespace
}  // namespace esskit
