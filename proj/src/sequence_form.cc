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

#include "esskit/sequence_form.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace esskit {

int SequenceSpace::max_depth() const {
  int depth = 0;
  for (const Sequence& s : seqs) depth = std::max(depth, s.depth);
  return depth;
}

std::string SequenceSpace::Label(const GameTree& tree, int seq) const {
  const Sequence& s = seqs.at(seq);
  if (s.infoset < 0) return "";
  const Infoset& is = tree.infoset(player, s.infoset);
  return is.name + ":" + is.actions[s.action];
}

SequenceSpace BuildSequenceSpace(const GameTree& tree, int player) {
  SequenceSpace space;
  space.player = player;
  const int c = tree.NumInfosets(player);
  space.infoset_row.assign(c, -1);
  space.parent_seq.assign(c, -1);
  space.action_seqs.assign(c, {});
  space.node_seq.assign(tree.num_nodes(), 0);
  space.seqs.push_back({});

  for (int v : tree.Preorder()) {
    const Node& node = tree.node(v);
    if (node.kind != NodeKind::kDecision) {
      for (int ch : node.children) space.node_seq[ch] = space.node_seq[v];
      continue;
    }
    if (node.player != player) {
      for (int ch : node.children) space.node_seq[ch] = space.node_seq[v];
      continue;
    }
    const int is = node.infoset;
    if (space.infoset_row[is] < 0) {
      space.row_infoset.push_back(is);
      space.infoset_row[is] = static_cast<int>(space.row_infoset.size());
      space.parent_seq[is] = space.node_seq[v];
      const int depth = space.seqs[space.node_seq[v]].depth + 1;
      for (int a = 0; a < static_cast<int>(node.children.size()); ++a) {
        space.action_seqs[is].push_back(space.size());
        space.seqs.push_back({is, a, depth});
      }
    }
    for (int a = 0; a < static_cast<int>(node.children.size()); ++a) {
      space.node_seq[node.children[a]] = space.action_seqs[is][a];
    }
  }

  const int d = space.size();
  const int rows = space.num_infosets() + 1;
  space.E = Mat::Zero(rows, d);
  space.e = Vec::Zero(rows);
  space.E(0, 0) = 1.0;
  space.e(0) = 1.0;
  for (int r = 1; r < rows; ++r) {
    const int is = space.row_infoset[r - 1];
    space.E(r, space.parent_seq[is]) = -1.0;
    for (int col : space.action_seqs[is]) space.E(r, col) = 1.0;
  }
  return space;
}

PayoffMatrices BuildPayoffMatrices(const GameTree& tree,
                                   const SequenceSpace& s1,
                                   const SequenceSpace& s2) {
  PayoffMatrices pm;
  pm.A = Mat::Zero(s1.size(), s2.size());
  pm.B = Mat::Zero(s1.size(), s2.size());
  for (int z : tree.Terminals()) {
    const double reach = tree.ChanceReach(z);
    const int i = s1.node_seq[z];
    const int j = s2.node_seq[z];
    pm.A(i, j) += reach * tree.node(z).u1;
    pm.B(i, j) += reach * tree.node(z).u2;
  }
  return pm;
}

SequenceForm BuildSequenceForm(const GameTree& tree, const SymmetryMap& sym,
                               const NoiseTable* noise) {
  SequenceSpace s1 = BuildSequenceSpace(tree, 1);
  const SequenceSpace s2 = BuildSequenceSpace(tree, 2);
  if (s1.size() != s2.size() || s1.num_infosets() != s2.num_infosets()) {
    throw SequenceFormError("players have different sequence counts");
  }
  const int d = s1.size();

  // Column of each player-2 sequence in the player-1 frame.
  std::vector<int> perm(d, 0);
  for (int j = 1; j < d; ++j) {
    const auto& seq = s2.seqs[j];
    perm[j] = s1.action_seqs.at(sym.infoset_inverse.at(seq.infoset)).at(seq.action);
  }
  Mat F = Mat::Zero(s1.E.rows(), d);
  F(0, 0) = 1.0;
  for (int r = 1; r < s2.E.rows(); ++r) {
    const int is1 = sym.infoset_inverse[s2.row_infoset[r - 1]];
    for (int j = 0; j < d; ++j) F(s1.infoset_row[is1], perm[j]) = s2.E(r, j);
  }
  if (F != s1.E) {
    throw SequenceFormError("player-2 constraint matrix differs from E under the symmetry map");
  }

  const PayoffMatrices pm = BuildPayoffMatrices(tree, s1, s2);
  SequenceForm sf;
  sf.A = Mat::Zero(d, d);
  sf.B = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      sf.A(i, perm[j]) = pm.A(i, j);
      sf.B(i, perm[j]) = pm.B(i, j);
    }
  }
  const double asym = (sf.B - sf.A.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) {
    throw SequenceFormError("B differs from A^T by " + std::to_string(asym));
  }

  if (noise != nullptr) {
    std::map<std::string, int> by_label;
    for (int i = 1; i < d; ++i) by_label[s1.Label(tree, i)] = i;
    for (const NoiseEntry& n : *noise) {
      auto r = by_label.find(n.row);
      auto c = by_label.find(n.col);
      if (r == by_label.end() || c == by_label.end()) {
        throw SequenceFormError("noise entry references unknown sequence '" +
                                (r == by_label.end() ? n.row : n.col) + "'");
      }
      sf.A(r->second, c->second) += n.value;
      sf.B(c->second, r->second) += n.value;
    }
  }
  sf.E = s1.E;
  sf.e = s1.e;
  sf.space = std::move(s1);
  sf.symmetric = true;
  return sf;
}

double Payoff(const SequenceForm& sf, const Vec& x, const Vec& y) {
  if (x.size() != sf.A.rows() || y.size() != sf.A.cols()) {
    throw std::invalid_argument("plan dimension does not match the sequence form");
  }
  return x.dot(sf.A * y);
}

Vec BehavioralToRealization(const SequenceSpace& space,
                            const BehavioralStrategy& sigma) {
  if (sigma.player != space.player ||
      static_cast<int>(sigma.probs.size()) != space.num_infosets()) {
    throw GameError("behavioral strategy does not cover every infoset");
  }
  Vec x = Vec::Zero(space.size());
  x(0) = 1.0;
  // Rows are in preorder, so a parent sequence is filled before its children.
  for (int is : space.row_infoset) {
    const double w = x(space.parent_seq[is]);
    const auto& dist = sigma.probs[is];
    if (dist.size() != space.action_seqs[is].size()) {
      throw GameError("behavioral strategy has wrong action count");
    }
    for (size_t a = 0; a < dist.size(); ++a) {
      x(space.action_seqs[is][a]) = w * dist[a];
    }
  }
  return x;
}

Vec BehavioralToRealization(const GameTree& tree, const SequenceForm& sf,
                            const BehavioralStrategy& sigma) {
  CheckBehavioral(tree, sigma);
  return BehavioralToRealization(sf.space, sigma);
}

BehavioralView RealizationToBehavioral(const GameTree& tree,
                                       const SequenceSpace& space,
                                       const Vec& x) {
  if (space.num_infosets() != tree.NumInfosets(space.player)) {
    throw std::invalid_argument("sequence space does not belong to this game");
  }
  BehavioralView view;
  view.strategy.player = space.player;
  view.strategy.probs.resize(space.num_infosets());
  view.unreached.assign(space.num_infosets(), false);
  for (int is = 0; is < space.num_infosets(); ++is) {
    const auto& cols = space.action_seqs[is];
    const double w = x(space.parent_seq[is]);
    std::vector<double> dist(cols.size(), 1.0 / cols.size());
    if (w > 1e-12) {
      double sum = 0.0;
      for (size_t a = 0; a < cols.size(); ++a) {
        dist[a] = std::max(0.0, x(cols[a]) / w);
        sum += dist[a];
      }
      if (sum > 0.0) {
        for (double& p : dist) p /= sum;
      } else {
        std::fill(dist.begin(), dist.end(), 1.0 / cols.size());
      }
    } else {
      view.unreached[is] = true;
    }
    view.strategy.probs[is] = std::move(dist);
  }
  return view;
}

BehavioralView RealizationToBehavioral(const GameTree& tree,
                                       const SequenceForm& sf, const Vec& x) {
  if (x.size() != sf.d()) {
    throw std::invalid_argument("plan dimension does not match the sequence form");
  }
  return RealizationToBehavioral(tree, sf.space, x);
}

BehavioralStrategy MirrorStrategy(const SymmetryMap& sym,
                                  const BehavioralStrategy& sigma) {
  BehavioralStrategy out;
  out.player = 3 - sigma.player;
  out.probs.resize(sigma.probs.size());
  const auto& to_other = sigma.player == 1 ? sym.infoset_map : sym.infoset_inverse;
  for (size_t i = 0; i < sigma.probs.size(); ++i) {
    out.probs.at(to_other.at(i)) = sigma.probs[i];
  }
  return out;
}

}  // namespace esskit
