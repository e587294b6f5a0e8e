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

#ifndef ESSKIT_GAME_TREE_H_
#define ESSKIT_GAME_TREE_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace esskit {

inline constexpr double kProbabilityTolerance = 1e-12;
inline constexpr double kPayoffTolerance = 1e-12;

enum class NodeKind { kDecision, kChance, kTerminal };

// Thrown when a game tree violates one of its structural invariants.
class GameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node {
  std::string name;
  NodeKind kind = NodeKind::kTerminal;
  // Decision nodes: owner (1 or 2), index into the owner's infoset table and
  // the child reached by each action (same order as the infoset's actions).
  int player = 0;
  int infoset = -1;
  std::vector<int> children;
  // Chance nodes: probability of each child.
  std::vector<double> probs;
  // Terminal nodes.
  double u1 = 0.0;
  double u2 = 0.0;
  int parent = -1;
  // Index of this node within its parent's children.
  int branch = -1;

  bool operator==(const Node&) const = default;
};

struct Infoset {
  int player = 0;
  std::string name;
  std::vector<std::string> actions;
  std::vector<int> members;

  bool operator==(const Infoset&) const = default;
};

// A finite two-player extensive-form game. Immutable after Build(): nodes are
// indexed in document order and infosets in order of first declaration.
class GameTree {
 public:
  GameTree() = default;

  // Validates and freezes a tree. Fills parent links and infoset membership.
  // Throws GameError on any structural violation.
  static GameTree Build(std::string name, std::vector<Node> nodes, int root,
                        std::vector<Infoset> infosets1,
                        std::vector<Infoset> infosets2);

  const std::string& name() const { return name_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int i) const { return nodes_.at(i); }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int root() const { return root_; }

  // player is 1 or 2.
  const std::vector<Infoset>& infosets(int player) const {
    return infosets_.at(player - 1);
  }
  const Infoset& infoset(int player, int index) const {
    return infosets(player).at(index);
  }
  int NumInfosets(int player) const {
    return static_cast<int>(infosets(player).size());
  }
  std::optional<int> FindInfoset(int player, const std::string& name) const;
  std::optional<int> FindNode(const std::string& name) const;

  // Node indices in canonical preorder (children visited in stored order).
  std::vector<int> Preorder() const;
  std::vector<int> Terminals() const;

  // Product of chance probabilities on the path from the root to `node`.
  double ChanceReach(int node) const;

  // Same tree with the owners of every decision node exchanged and each
  // terminal payoff pair swapped.
  GameTree SwapPlayers() const;

  bool operator==(const GameTree&) const = default;

 private:
  std::string name_;
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<std::vector<Infoset>> infosets_ = {{}, {}};
};

// A distribution over actions at every infoset of one player.
struct BehavioralStrategy {
  int player = 1;
  std::vector<std::vector<double>> probs;
};

// Throws GameError if `sigma` does not cover every infoset of its player or
// some distribution is not a probability vector within 1e-12.
void CheckBehavioral(const GameTree& tree, const BehavioralStrategy& sigma);

BehavioralStrategy UniformStrategy(const GameTree& tree, int player);

// Pure strategy choosing action `choice[i]` at infoset i.
BehavioralStrategy PureStrategy(const GameTree& tree, int player,
                                const std::vector<int>& choice);

// Expected payoffs (u1, u2) by full traversal of the tree.
std::pair<double, double> TreePayoff(const GameTree& tree,
                                     const BehavioralStrategy& sigma1,
                                     const BehavioralStrategy& sigma2);

struct RecallViolation {
  int player = 0;
  int infoset = -1;
  int node_a = -1;
  int node_b = -1;
  // The two divergent own-histories, rendered as "infoset:action/...".
  std::string history_a;
  std::string history_b;

  std::string Describe(const GameTree& tree) const;
};

// Empty on success; otherwise the first infoset (in player, index order)
// whose members disagree on their owner's own (infoset, action) history.
std::optional<RecallViolation> ValidatePerfectRecall(const GameTree& tree);

// A player's own (infoset, action) history at each node, root first.
std::vector<std::vector<std::pair<int, int>>> OwnHistories(
    const GameTree& tree, int player);

}  // namespace esskit

#endif  // ESSKIT_GAME_TREE_H_
