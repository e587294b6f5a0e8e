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

#ifndef ESSKIT_SYMMETRY_H_
#define ESSKIT_SYMMETRY_H_

#include <optional>
#include <string>
#include <vector>

#include "esskit/game_tree.h"

namespace esskit {

// Player-swapping automorphism of a game tree under canonical labeling.
//
// Infosets are paired by identical id and identical action list. Terminals
// are grouped by the pair (player-1 sequence, player-2 sequence) that reaches
// them; the k-th terminal (preorder) of group (a, b) maps to the k-th terminal
// of group (b, a). Decision nodes have no node-level image: in a tree where
// player 1 moves before player 2 the two players' nodes sit at different
// depths, so the automorphism acts on infosets, sequences and terminal
// histories instead.
struct SymmetryMap {
  std::vector<int> infoset_map;      // player-1 infoset -> player-2 infoset
  std::vector<int> infoset_inverse;  // player-2 infoset -> player-1 infoset
  std::vector<int> node_map;         // terminal -> terminal; -1 elsewhere

  bool operator==(const SymmetryMap&) const = default;
};

struct AsymmetryReport {
  std::string reason;
  int node_a = -1;
  int node_b = -1;
};

struct SymmetryCheck {
  std::optional<SymmetryMap> map;
  AsymmetryReport report;

  explicit operator bool() const { return map.has_value(); }
};

// Requires a valid tree with perfect recall.
SymmetryCheck CheckSymmetry(const GameTree& tree);

}  // namespace esskit

#endif  // ESSKIT_SYMMETRY_H_
