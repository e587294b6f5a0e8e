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

#include <string>

#include "doctest.h"
#include "esskit/game_io.h"
#include "esskit/game_tree.h"
#include "esskit/generators.h"
#include "esskit/symmetry.h"
#include "test_util.h"

namespace esskit {
namespace {

constexpr char kMatchingPennies[] = R"(game pennies
players 2
node root player 1 infoset a { H:h T:t }
node h player 2 infoset b { H:hh T:ht }
node t player 2 infoset b { H:th T:tt }
node hh terminal 1 -1
node ht terminal -1 1
node th terminal -1 1
node tt terminal 1 -1
root root
)";

// Player 1 forgets whether they played L or R before the second move.
constexpr char kForgetful[] = R"(game forgetful
players 2
node root player 1 infoset first { L:l R:r }
node l player 1 infoset second { a:la b:lb }
node r player 1 infoset second { a:ra b:rb }
node la terminal 1 0
node lb terminal 0 0
node ra terminal 0 0
node rb terminal 0 1
root root
)";

TEST_CASE("parse rock-paper-scissors") {
  const GameTree t = ReadGameFile(testing::DataPath("rps.efg"));
  CHECK(t.name() == "rps");
  CHECK(t.num_nodes() == 13);
  CHECK(t.NumInfosets(1) == 1);
  CHECK(t.NumInfosets(2) == 1);
  CHECK(t.infoset(2, 0).members.size() == 3);
  CHECK(t.Terminals().size() == 9);
  const Node& rr = t.node(*t.FindNode("rr"));
  CHECK(rr.u1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("serialization round trips") {
  for (const GameTree& t : {ReadGameFile(testing::DataPath("rps.efg")),
                            ReadGameFile(testing::DataPath("hawk_dove.efg")),
                            CancerGame(), RandomSignalGame(3, 2, 7).tree}) {
    const std::string text = SerializeGame(t);
    const GameTree back = ParseGame(text);
    CHECK(back == t);
    CHECK(SerializeGame(back) == text);
  }
}

TEST_CASE("parse errors carry a location") {
  const std::string bad = "game g\nplayers 2\nnode root player 3 infoset a { x:y }\n";
  try {
    ParseGame(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(ParseGame("game g\nplayers 2\nroot r\n"), GameError);
  CHECK_THROWS_AS(ParseGame("game g\nplayers 3\n"), ParseError);
}

TEST_CASE("structural violations are rejected") {
  SUBCASE("chance probabilities must sum to one") {
    CHECK_THROWS_AS(ParseGame("game g\nplayers 2\nnode c chance { a:0.5 b:0.4 }\n"
                              "node a terminal 0 0\nnode b terminal 0 0\nroot c\n"),
                    GameError);
  }
  SUBCASE("dangling child") {
    CHECK_THROWS_AS(ParseGame("game g\nplayers 2\nnode c chance { a:1 }\nroot c\n"),
                    GameError);
  }
  SUBCASE("infoset members disagree on actions") {
    CHECK_THROWS_AS(
        ParseGame("game g\nplayers 2\nnode r player 1 infoset a { x:p y:q }\n"
                  "node p player 2 infoset b { u:t1 v:t2 }\n"
                  "node q player 2 infoset b { u:t3 w:t4 }\n"
                  "node t1 terminal 0 0\nnode t2 terminal 0 0\n"
                  "node t3 terminal 0 0\nnode t4 terminal 0 0\nroot r\n"),
        GameError);
  }
}

TEST_CASE("perfect recall") {
  CHECK_FALSE(ValidatePerfectRecall(ParseGame(kMatchingPennies)).has_value());
  CHECK_FALSE(ValidatePerfectRecall(CancerGame()).has_value());
  const GameTree forgetful = ParseGame(kForgetful);
  const auto violation = ValidatePerfectRecall(forgetful);
  REQUIRE(violation.has_value());
  CHECK(violation->player == 1);
  CHECK(forgetful.infoset(1, violation->infoset).name == "second");
  CHECK(violation->Describe(forgetful).find("second") != std::string::npos);
}

TEST_CASE("tree payoff of mixed strategies") {
  const GameTree t = ReadGameFile(testing::DataPath("rps.efg"));
  const auto [u1, u2] = TreePayoff(t, UniformStrategy(t, 1), UniformStrategy(t, 2));
  CHECK(u1 == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
  CHECK(u2 == doctest::Approx(5.0 / 9.0).epsilon(1e-14));
  const auto [r1, r2] = TreePayoff(t, PureStrategy(t, 1, {0}), PureStrategy(t, 2, {1}));
  CHECK(r1 == 0.0);
  CHECK(r2 == 1.0);
}

TEST_CASE("behavioral strategies are validated") {
  const GameTree t = ReadGameFile(testing::DataPath("rps.efg"));
  BehavioralStrategy s = UniformStrategy(t, 1);
  s.probs[0] = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(CheckBehavioral(t, s), GameError);
  s.probs[0] = {1.2, -0.2, 0.0};
  CHECK_THROWS_AS(CheckBehavioral(t, s), GameError);
}

TEST_CASE("symmetry detection") {
  CHECK(CheckSymmetry(ReadGameFile(testing::DataPath("rps.efg"))));
  CHECK(CheckSymmetry(ReadGameFile(testing::DataPath("hawk_dove.efg"))));
  CHECK(CheckSymmetry(CancerGame()));
  const SymmetryCheck pennies = CheckSymmetry(ParseGame(kMatchingPennies));
  CHECK_FALSE(pennies);
  CHECK_FALSE(pennies.report.reason.empty());
}

TEST_CASE("swapping players twice is the identity") {
  const GameTree t = CancerGame();
  CHECK(t.SwapPlayers().SwapPlayers() == t);
}

}  // namespace
}  // namespace esskit
