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
#include <string>

#include "doctest.h"
#include "esskit/game_io.h"
#include "esskit/generators.h"
#include "esskit/sequence_form.h"
#include "esskit/symmetry.h"
#include "test_util.h"

namespace esskit {
namespace {

int Column(const GameTree& tree, const SequenceForm& sf, const std::string& label) {
  for (int j = 0; j < sf.d(); ++j) {
    if (sf.space.Label(tree, j) == label) return j;
  }
  FAIL("no sequence " << label);
  return -1;
}

BehavioralStrategy RandomBehavioral(const GameTree& tree, int player, PortableRng& rng) {
  BehavioralStrategy s = UniformStrategy(tree, player);
  for (auto& dist : s.probs) {
    double sum = 0.0;
    for (double& p : dist) {
      // Some exact zeros exercise unreached subtrees.
      p = rng.Uniform01() < 0.15 ? 0.0 : rng.Uniform01();
      sum += p;
    }
    if (sum == 0.0) {
      dist[0] = 1.0;
      sum = 1.0;
    }
    for (double& p : dist) p /= sum;
  }
  return s;
}

TEST_CASE("rock-paper-scissors sequence form") {
  const GameTree t = ReadGameFile(testing::DataPath("rps.efg"));
  const SequenceForm sf = testing::SymmetricForm(t);
  CHECK(sf.symmetric);
  CHECK(sf.d() == 4);
  CHECK(sf.rows() == 2);
  CHECK(sf.E(0, 0) == 1.0);
  CHECK(sf.e(0) == 1.0);
  CHECK(sf.e(1) == 0.0);
  const int r = Column(t, sf, "move:R");
  const int p = Column(t, sf, "move:P");
  CHECK(sf.A(r, p) == 0.0);
  CHECK(sf.A(p, r) == 1.0);
  CHECK(sf.A(r, r) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK((sf.B - sf.A.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const Vec x = BehavioralToRealization(t, sf, UniformStrategy(t, 1));
  CHECK(Payoff(sf, x, x) == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("cancer payoff entry folds chance over both states") {
  const GameTree t = CancerGame();
  const SequenceForm sf = testing::SymmetricForm(t);
  CHECK(sf.d() == 7);
  CHECK(sf.rows() == 3);
  const int fav_p = Column(t, sf, "fav:P");
  // Low state: 0.5 * 0.8 * 0.8 * 0.8. High state: 0.5 * 0.2 * 0.2 * 0.1.
  CHECK(sf.A(fav_p, fav_p) == doctest::Approx(0.258).epsilon(1e-14));
}

TEST_CASE("realization plans satisfy the flow constraints") {
  PortableRng rng(11);
  const GameTree t = RandomSignalGame(3, 3, 5).tree;
  const SequenceForm sf = testing::SymmetricForm(t);
  for (int k = 0; k < 20; ++k) {
    const Vec x = BehavioralToRealization(t, sf, RandomBehavioral(t, 1, rng));
    CHECK((sf.E * x - sf.e).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK(x.minCoeff() >= 0.0);
  }
}

TEST_CASE("behavioral round trip on reached infosets") {
  PortableRng rng(3);
  const GameTree t = CancerGame();
  const SequenceForm sf = testing::SymmetricForm(t);
  for (int k = 0; k < 20; ++k) {
    const BehavioralStrategy s = RandomBehavioral(t, 1, rng);
    const Vec x = BehavioralToRealization(t, sf, s);
    const BehavioralView v = RealizationToBehavioral(t, sf, x);
    for (size_t is = 0; is < s.probs.size(); ++is) {
      if (v.unreached[is]) continue;
      for (size_t a = 0; a < s.probs[is].size(); ++a) {
        CHECK(v.strategy.probs[is][a] == doctest::Approx(s.probs[is][a]).epsilon(1e-12));
      }
    }
  }
}

// The sequence-form bilinear payoff must agree with direct tree traversal.
TEST_CASE("sequence-form payoff equals tree payoff") {
  PortableRng rng(2026);
  int draws = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const GameTree t = seed == 0 ? CancerGame()
                                 : RandomSignalGame(2 + seed % 3, 2 + seed % 4, seed).tree;
    const SymmetryCheck sym = CheckSymmetry(t);
    REQUIRE(sym.map);
    const SequenceForm sf = BuildSequenceForm(t, *sym.map);
    for (int k = 0; k < 10; ++k, ++draws) {
      const BehavioralStrategy s1 = RandomBehavioral(t, 1, rng);
      const BehavioralStrategy s2 = RandomBehavioral(t, 1, rng);
      const Vec x = BehavioralToRealization(t, sf, s1);
      const Vec y = BehavioralToRealization(t, sf, s2);
      const auto [u1, u2] = TreePayoff(t, s1, MirrorStrategy(*sym.map, s2));
      CHECK(std::abs(Payoff(sf, x, y) - u1) <= 1e-10);
      CHECK(std::abs(x.dot(sf.B * y) - u2) <= 1e-10);
    }
  }
  CHECK(draws == 100);
}

TEST_CASE("noise perturbs the labeled entries only") {
  const GameTree t = CancerGame();
  const SymmetryCheck sym = CheckSymmetry(t);
  const SequenceForm base = BuildSequenceForm(t, *sym.map);
  const NoiseTable noise = {{"fav:P", "unfav:R", 1e-4}};
  const SequenceForm noisy = BuildSequenceForm(t, *sym.map, &noise);
  const int i = Column(t, base, "fav:P");
  const int j = Column(t, base, "unfav:R");
  Mat diff = noisy.A - base.A;
  CHECK(diff(i, j) == doctest::Approx(1e-4).epsilon(1e-12));
  diff(i, j) = 0.0;
  CHECK(diff.cwiseAbs().maxCoeff() == 0.0);
  CHECK((noisy.B - noisy.A.transpose()).cwiseAbs().maxCoeff() == 0.0);
  const NoiseTable bad = {{"fav:Z", "fav:P", 1e-4}};
  CHECK_THROWS_AS(BuildSequenceForm(t, *sym.map, &bad), SequenceFormError);
}

TEST_CASE("asymmetric games are refused by the symmetric builder") {
  const GameTree t = ParseGame(
      "game g\nplayers 2\nnode r player 1 infoset a { x:p y:q }\n"
      "node p player 2 infoset b { u:t1 v:t2 w:t5 }\n"
      "node q player 2 infoset b { u:t3 v:t4 w:t6 }\n"
      "node t1 terminal 1 0\nnode t2 terminal 0 0\nnode t5 terminal 0 0\n"
      "node t3 terminal 0 0\nnode t4 terminal 0 1\nnode t6 terminal 0 0\nroot r\n");
  CHECK_FALSE(CheckSymmetry(t));
}

}  // namespace
}  // namespace esskit
