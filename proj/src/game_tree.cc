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

#include "esskit/game_tree.h"

#include <cmath>
#include <set>
#include <sstream>

namespace esskit {
namespace {

std::string FormatNumber(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

}  // namespace

GameTree GameTree::Build(std::string name, std::vector<Node> nodes, int root,
                         std::vector<Infoset> infosets1,
                         std::vector<Infoset> infosets2) {
  GameTree tree;
  tree.name_ = std::move(name);
  tree.nodes_ = std::move(nodes);
  tree.root_ = root;
  tree.infosets_ = {std::move(infosets1), std::move(infosets2)};
  const int n = tree.num_nodes();
  if (root < 0 || root >= n) throw GameError("root index out of range");

  for (int p = 0; p < 2; ++p) {
    for (Infoset& is : tree.infosets_[p]) {
      is.player = p + 1;
      is.members.clear();
      std::set<std::string> seen;
      for (const std::string& a : is.actions) {
        if (!seen.insert(a).second) {
          throw GameError("infoset '" + is.name + "' repeats action '" + a +
                          "'");
        }
      }
    }
  }

  for (Node& node : tree.nodes_) {
    node.parent = -1;
    node.branch = -1;
  }
  for (int i = 0; i < n; ++i) {
    Node& node = tree.nodes_[i];
    switch (node.kind) {
      case NodeKind::kTerminal:
        if (!node.children.empty()) {
          throw GameError("terminal node '" + node.name + "' has children");
        }
        break;
      case NodeKind::kChance: {
        if (node.children.empty()) {
          throw GameError("chance node '" + node.name + "' has no children");
        }
        if (node.probs.size() != node.children.size()) {
          throw GameError("chance node '" + node.name +
                          "' has mismatched probabilities");
        }
        double sum = 0.0;
        for (double pr : node.probs) {
          if (!(pr >= 0.0 && pr <= 1.0)) {
            throw GameError("chance node '" + node.name +
                            "' has probability outside [0,1]");
          }
          sum += pr;
        }
        if (std::abs(sum - 1.0) > kProbabilityTolerance) {
          throw GameError("chance probabilities sum to " + FormatNumber(sum) +
                          " at node '" + node.name + "'");
        }
        break;
      }
      case NodeKind::kDecision: {
        if (node.player != 1 && node.player != 2) {
          throw GameError("decision node '" + node.name +
                          "' has invalid player");
        }
        auto& table = tree.infosets_[node.player - 1];
        if (node.infoset < 0 || node.infoset >= static_cast<int>(table.size())) {
          throw GameError("decision node '" + node.name +
                          "' references unknown infoset");
        }
        Infoset& is = table[node.infoset];
        if (is.actions.size() != node.children.size() || is.actions.empty()) {
          throw GameError("inconsistent action lists in infoset '" + is.name +
                          "' at node '" + node.name + "'");
        }
        is.members.push_back(i);
        break;
      }
    }
    for (int b = 0; b < static_cast<int>(node.children.size()); ++b) {
      const int c = node.children[b];
      if (c < 0 || c >= n) {
        throw GameError("node '" + node.name + "' has dangling child");
      }
      if (c == root) {
        throw GameError("root '" + tree.nodes_[root].name +
                        "' appears as a child of '" + node.name + "'");
      }
      Node& child = tree.nodes_[c];
      if (child.parent != -1) {
        throw GameError("node '" + child.name + "' has more than one parent");
      }
      child.parent = i;
      child.branch = b;
    }
  }
  for (int p = 0; p < 2; ++p) {
    for (const Infoset& is : tree.infosets_[p]) {
      if (is.members.empty()) {
        throw GameError("infoset '" + is.name + "' of player " +
                        std::to_string(p + 1) + " has no nodes");
      }
    }
  }
  // Single parent everywhere plus full reachability rules out cycles.
  if (static_cast<int>(tree.Preorder().size()) != n) {
    throw GameError("tree has nodes unreachable from the root");
  }
  return tree;
}

std::optional<int> GameTree::FindInfoset(int player,
                                         const std::string& name) const {
  const auto& table = infosets(player);
  for (int i = 0; i < static_cast<int>(table.size()); ++i) {
    if (table[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<int> GameTree::FindNode(const std::string& name) const {
  for (int i = 0; i < num_nodes(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<int> GameTree::Preorder() const {
  std::vector<int> order;
  if (root_ < 0) return order;
  std::vector<int> stack = {root_};
  std::vector<char> seen(nodes_.size(), 0);
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (seen[v]) continue;
    seen[v] = 1;
    order.push_back(v);
    const auto& ch = nodes_[v].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return order;
}

std::vector<int> GameTree::Terminals() const {
  std::vector<int> out;
  for (int v : Preorder()) {
    if (nodes_[v].kind == NodeKind::kTerminal) out.push_back(v);
  }
  return out;
}

double GameTree::ChanceReach(int node) const {
  double reach = 1.0;
  for (int v = node; nodes_.at(v).parent >= 0; v = nodes_[v].parent) {
    const Node& parent = nodes_[nodes_[v].parent];
    if (parent.kind == NodeKind::kChance) reach *= parent.probs[nodes_[v].branch];
  }
  return reach;
}

GameTree GameTree::SwapPlayers() const {
  std::vector<Node> nodes = nodes_;
  for (Node& node : nodes) {
    if (node.kind == NodeKind::kDecision) node.player = 3 - node.player;
    if (node.kind == NodeKind::kTerminal) std::swap(node.u1, node.u2);
  }
  return Build(name_, std::move(nodes), root_, infosets_[1], infosets_[0]);
}

void CheckBehavioral(const GameTree& tree, const BehavioralStrategy& sigma) {
  const int player = sigma.player;
  if (player != 1 && player != 2) throw GameError("strategy has invalid player");
  if (static_cast<int>(sigma.probs.size()) != tree.NumInfosets(player)) {
    throw GameError("strategy for player " + std::to_string(player) +
                    " is missing infosets");
  }
  for (int i = 0; i < tree.NumInfosets(player); ++i) {
    const auto& dist = sigma.probs[i];
    const Infoset& is = tree.infoset(player, i);
    if (dist.size() != is.actions.size()) {
      throw GameError("strategy has wrong action count at infoset '" +
                      is.name + "'");
    }
    double sum = 0.0;
    for (double p : dist) {
      if (p < -kProbabilityTolerance) {
        throw GameError("negative probability at infoset '" + is.name + "'");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw GameError("distribution at infoset '" + is.name + "' sums to " +
                      FormatNumber(sum));
    }
  }
}

BehavioralStrategy UniformStrategy(const GameTree& tree, int player) {
  BehavioralStrategy s;
  s.player = player;
  for (const Infoset& is : tree.infosets(player)) {
    s.probs.emplace_back(is.actions.size(), 1.0 / is.actions.size());
  }
  return s;
}

BehavioralStrategy PureStrategy(const GameTree& tree, int player,
                                const std::vector<int>& choice) {
  BehavioralStrategy s;
  s.player = player;
  for (int i = 0; i < tree.NumInfosets(player); ++i) {
    std::vector<double> dist(tree.infoset(player, i).actions.size(), 0.0);
    dist.at(choice.at(i)) = 1.0;
    s.probs.push_back(std::move(dist));
  }
  return s;
}

std::pair<double, double> TreePayoff(const GameTree& tree,
                                     const BehavioralStrategy& sigma1,
                                     const BehavioralStrategy& sigma2) {
  if (sigma1.player != 1 || sigma2.player != 2) {
    throw GameError("TreePayoff expects a player-1 and a player-2 strategy");
  }
  CheckBehavioral(tree, sigma1);
  CheckBehavioral(tree, sigma2);
  double u1 = 0.0, u2 = 0.0;
  struct Frame {
    int node;
    double reach;
  };
  std::vector<Frame> stack = {{tree.root(), 1.0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const Node& node = tree.node(f.node);
    switch (node.kind) {
      case NodeKind::kTerminal:
        u1 += f.reach * node.u1;
        u2 += f.reach * node.u2;
        break;
      case NodeKind::kChance:
        for (size_t b = 0; b < node.children.size(); ++b) {
          stack.push_back({node.children[b], f.reach * node.probs[b]});
        }
        break;
      case NodeKind::kDecision: {
        const auto& dist = (node.player == 1 ? sigma1 : sigma2).probs[node.infoset];
        for (size_t b = 0; b < node.children.size(); ++b) {
          if (dist[b] != 0.0) {
            stack.push_back({node.children[b], f.reach * dist[b]});
          }
        }
        break;
      }
    }
  }
  return {u1, u2};
}

std::vector<std::vector<std::pair<int, int>>> OwnHistories(
    const GameTree& tree, int player) {
  std::vector<std::vector<std::pair<int, int>>> hist(tree.num_nodes());
  for (int v : tree.Preorder()) {
    const Node& node = tree.node(v);
    for (size_t b = 0; b < node.children.size(); ++b) {
      auto h = hist[v];
      if (node.kind == NodeKind::kDecision && node.player == player) {
        h.emplace_back(node.infoset, static_cast<int>(b));
      }
      hist[node.children[b]] = std::move(h);
    }
  }
  return hist;
}

std::string RecallViolation::Describe(const GameTree& tree) const {
  return "player " + std::to_string(player) + " infoset '" +
         tree.infoset(player, infoset).name + "': node '" +
         tree.node(node_a).name + "' has history [" + history_a +
         "] but node '" + tree.node(node_b).name + "' has history [" +
         history_b + "]";
}

std::optional<RecallViolation> ValidatePerfectRecall(const GameTree& tree) {
  for (int player = 1; player <= 2; ++player) {
    const auto hist = OwnHistories(tree, player);
    auto render = [&](const std::vector<std::pair<int, int>>& h) {
      std::string s;
      for (const auto& [is, a] : h) {
        if (!s.empty()) s += "/";
        const Infoset& info = tree.infoset(player, is);
        s += info.name + ":" + info.actions[a];
      }
      return s;
    };
    for (int i = 0; i < tree.NumInfosets(player); ++i) {
      const auto& members = tree.infoset(player, i).members;
      for (size_t k = 1; k < members.size(); ++k) {
        if (hist[members[k]] != hist[members[0]]) {
          RecallViolation v;
          v.player = player;
          v.infoset = i;
          v.node_a = members[0];
          v.node_b = members[k];
          v.history_a = render(hist[members[0]]);
          v.history_b = render(hist[members[k]]);
          return v;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace esskit
