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

#include "esskit/symmetry.h"

#include <cmath>
#include <map>
#include <utility>

namespace esskit {
namespace {

using Seq = std::pair<int, int>;  // (infoset, action); (-1, -1) is empty
constexpr Seq kEmptySeq{-1, -1};

SymmetryCheck Fail(std::string reason, int a = -1, int b = -1) {
  SymmetryCheck out;
  out.report = {std::move(reason), a, b};
  return out;
}

Seq LastOrEmpty(const std::vector<Seq>& h) {
  return h.empty() ? kEmptySeq : h.back();
}

}  // namespace

SymmetryCheck CheckSymmetry(const GameTree& tree) {
  const int c1 = tree.NumInfosets(1);
  if (c1 != tree.NumInfosets(2)) {
    return Fail("players have different numbers of infosets (" +
                std::to_string(c1) + " vs " +
                std::to_string(tree.NumInfosets(2)) + ")");
  }
  SymmetryMap map;
  map.infoset_map.assign(c1, -1);
  map.infoset_inverse.assign(c1, -1);
  for (int i = 0; i < c1; ++i) {
    const Infoset& is = tree.infoset(1, i);
    const auto j = tree.FindInfoset(2, is.name);
    if (!j) {
      return Fail("player-1 infoset '" + is.name + "' has no player-2 twin",
                  is.members.front());
    }
    const Infoset& twin = tree.infoset(2, *j);
    if (twin.actions != is.actions) {
      return Fail("infoset '" + is.name + "' has different actions for the two players",
                  is.members.front(), twin.members.front());
    }
    map.infoset_map[i] = *j;
    map.infoset_inverse[*j] = i;
  }

  const auto hist1 = OwnHistories(tree, 1);
  const auto hist2 = OwnHistories(tree, 2);
  auto to_frame1 = [&](Seq s) {
    return s == kEmptySeq ? s : Seq{map.infoset_inverse[s.first], s.second};
  };

  // Parent sequences must correspond under the infoset pairing.
  for (int i = 0; i < c1; ++i) {
    const Infoset& is = tree.infoset(1, i);
    const Infoset& twin = tree.infoset(2, map.infoset_map[i]);
    const Seq p1 = LastOrEmpty(hist1[is.members.front()]);
    const Seq p2 = to_frame1(LastOrEmpty(hist2[twin.members.front()]));
    if (p1 != p2) {
      return Fail("infoset '" + is.name +
                      "' is reached by different parent sequences for the two players",
                  is.members.front(), twin.members.front());
    }
  }

  std::map<std::pair<Seq, Seq>, std::vector<int>> groups;
  const std::vector<int> terminals = tree.Terminals();
  for (int z : terminals) {
    groups[{LastOrEmpty(hist1[z]), to_frame1(LastOrEmpty(hist2[z]))}].push_back(z);
  }
  map.node_map.assign(tree.num_nodes(), -1);
  for (int z : terminals) {
    const Seq a = LastOrEmpty(hist1[z]);
    const Seq b = to_frame1(LastOrEmpty(hist2[z]));
    const auto& own = groups[{a, b}];
    auto it = groups.find({b, a});
    if (it == groups.end() || it->second.size() != own.size()) {
      return Fail("terminal '" + tree.node(z).name +
                      "' has no mirror terminal under the player swap",
                  z);
    }
    size_t rank = 0;
    while (own[rank] != z) ++rank;
    const int mirror = it->second[rank];
    if (std::abs(tree.ChanceReach(z) - tree.ChanceReach(mirror)) >
        kProbabilityTolerance) {
      return Fail("chance probabilities differ between terminal '" +
                      tree.node(z).name + "' and its mirror '" +
                      tree.node(mirror).name + "'",
                  z, mirror);
    }
    if (std::abs(tree.node(z).u1 - tree.node(mirror).u2) > kPayoffTolerance) {
      return Fail("payoff u1 at terminal '" + tree.node(z).name +
                      "' differs from u2 at mirror terminal '" +
                      tree.node(mirror).name + "'",
                  z, mirror);
    }
    map.node_map[z] = mirror;
  }
  SymmetryCheck out;
  out.map = std::move(map);
  return out;
}

}  // namespace esskit
