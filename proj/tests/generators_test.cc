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
#include <numeric>

#include "doctest.h"
#include "esskit/game_io.h"
#include "esskit/generators.h"
#include "esskit/symmetry.h"
#include "test_util.h"

namespace esskit {
namespace {

int CountKind(const GameTree& t, NodeKind kind) {
  int n = 0;
  for (const Node& node : t.nodes()) n += node.kind == kind;
  return n;
}

TEST_CASE("cancer game structure") {
  const GameTree t = CancerGame();
  CHECK(t.name() == "cancer");
  CHECK(CountKind(t, NodeKind::kChance) == 7);
  CHECK(CountKind(t, NodeKind::kDecision) == 8 + 24);
  CHECK(CountKind(t, NodeKind::kTerminal) == 72);
  CHECK(t.NumInfosets(1) == 2);
  CHECK(t.NumInfosets(2) == 2);
  CHECK(t.infoset(1, 0).actions == std::vector<std::string>{"P", "R", "Q"});
  CHECK(CheckSymmetry(t));
  CHECK_FALSE(ValidatePerfectRecall(t).has_value());
}

TEST_CASE("cancer game payoffs and chance weights") {
  const GameTree t = CancerGame();
  const int pp = *t.FindNode("low_fav_fav_P_P");
  CHECK(t.node(pp).u1 == 0.8);
  CHECK(t.node(pp).u2 == 0.8);
  CHECK(t.ChanceReach(pp) == doctest::Approx(0.32).epsilon(1e-15));
  const Node& rq = t.node(*t.FindNode("high_fav_fav_R_Q"));
  CHECK(rq.u1 == 0.2);
  CHECK(rq.u2 == 0.2);
}

TEST_CASE("default channel") {
  const SignalChannel two = SignalChannelDefault(2);
  CHECK(two.rows == std::vector<std::vector<double>>{{0.8, 0.2}, {0.2, 0.8}});
  for (int S = 3; S <= 6; ++S) {
    const SignalChannel ch = SignalChannelDefault(S);
    REQUIRE(ch.rows.size() == 2);
    for (const auto& row : ch.rows) {
      CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    }
    for (int s = 0; s + 1 < S; ++s) {
      CHECK(ch.rows[0][s] > ch.rows[0][s + 1]);
      CHECK(ch.rows[1][s] == ch.rows[0][S - 1 - s]);
    }
  }
  CHECK_THROWS_AS(SignalChannelDefault(1), std::invalid_argument);
}

TEST_CASE("random games have the signal-game shape") {
  for (auto [S, A] : {std::pair{2, 3}, std::pair{3, 2}, std::pair{5, 6}}) {
    const GeneratedGame g = RandomSignalGame(S, A, 0);
    const SequenceForm sf = testing::SymmetricForm(g.tree, &g.noise);
    CHECK(sf.d() == 1 + S * A);
    CHECK(g.tree.NumInfosets(1) == S);
    CHECK(CountKind(g.tree, NodeKind::kTerminal) == 2 * S * S * A * A);
    CHECK(g.tree.name() == "signal_S" + std::to_string(S) + "_A" + std::to_string(A) + "_seed0");
  }
}

TEST_CASE("random games are deterministic per seed") {
  const GeneratedGame a = RandomSignalGame(3, 3, 42);
  const GeneratedGame b = RandomSignalGame(3, 3, 42);
  CHECK(a.tree == b.tree);
  CHECK(SerializeGame(a.tree) == SerializeGame(b.tree));
  REQUIRE(a.noise.size() == b.noise.size());
  for (size_t k = 0; k < a.noise.size(); ++k) CHECK(a.noise[k].value == b.noise[k].value);
  const GeneratedGame c = RandomSignalGame(3, 3, 43);
  CHECK_FALSE(a.tree == c.tree);
}

TEST_CASE("random payoffs are uniform on [-1, 1] and noise is small") {
  const GeneratedGame g = RandomSignalGame(2, 6, 7, 1e-4);
  for (const auto& m : g.spec.payoff) {
    CHECK(m.cwiseAbs().maxCoeff() <= 1.0);
  }
  CHECK_FALSE(g.noise.empty());
  for (const NoiseEntry& n : g.noise) CHECK(std::abs(n.value) <= 1e-4);
  const GeneratedGame quiet = RandomSignalGame(2, 6, 7, 0.0);
  for (const NoiseEntry& n : quiet.noise) CHECK(n.value == 0.0);
}

// The payoff matrix of a generated game, re-derived by folding chance by hand.
TEST_CASE("sequence-form payoff re-derivation") {
  const GeneratedGame g = RandomSignalGame(2, 3, 5, 0.0);
  const SequenceForm sf = testing::SymmetricForm(g.tree);
  const SignalGameSpec& spec = g.spec;
  const int A = spec.num_actions;
  for (int s1 = 0; s1 < spec.num_signals; ++s1) {
    for (int s2 = 0; s2 < spec.num_signals; ++s2) {
      for (int a = 0; a < A; ++a) {
        for (int b = 0; b < A; ++b) {
          double expected = 0.0;
          for (int st = 0; st < 2; ++st) {
            expected += spec.prior[st] * spec.channel.rows[st][s1] *
                        spec.channel.rows[st][s2] * spec.payoff[st](a, b);
          }
          CHECK(sf.A(1 + s1 * A + a, 1 + s2 * A + b) ==
                doctest::Approx(expected).epsilon(1e-14));
        }
      }
    }
  }
}

TEST_CASE("signal game parameter validation") {
  SignalGameSpec spec = CancerSpec();
  CHECK_NOTHROW(spec.Validate());
  spec.prior = {0.6, 0.6};
  CHECK_THROWS_AS(spec.Validate(), std::invalid_argument);
  spec = CancerSpec();
  spec.channel.rows[0] = {0.5, 0.6};
  CHECK_THROWS_AS(spec.Validate(), std::invalid_argument);
  spec = CancerSpec();
  spec.action_names.pop_back();
  CHECK_THROWS_AS(spec.Validate(), std::invalid_argument);
}

TEST_CASE("portable RNG is reproducible") {
  PortableRng a(123), b(123);
  for (int k = 0; k < 100; ++k) {
    const double u = a.Uniform01();
    CHECK(u == b.Uniform01());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  // First output of mt19937_64 with the default seed.
  PortableRng c(5489);
  CHECK(c.Next() == 14514284786278117030ull);
}

}  // namespace
}  // namespace esskit
