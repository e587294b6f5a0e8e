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

#ifndef ESSKIT_SEQUENCE_FORM_H_
#define ESSKIT_SEQUENCE_FORM_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "esskit/game_tree.h"
#include "esskit/symmetry.h"

namespace esskit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// The sequences of one player. Column 0 is the empty sequence; the remaining
// columns are (infoset, action) pairs in order of first appearance in a
// preorder walk of the tree. E has one row for the empty infoset followed by
// one row per infoset in the same order.
struct SequenceSpace {
  struct Sequence {
    int infoset = -1;
    int action = -1;
    int depth = 0;  // number of own actions
  };

  int player = 1;
  std::vector<Sequence> seqs;
  std::vector<int> row_infoset;           // E row (>= 1) -> infoset
  std::vector<int> infoset_row;           // infoset -> E row
  std::vector<int> parent_seq;            // infoset -> parent sequence column
  std::vector<std::vector<int>> action_seqs;  // infoset -> column per action
  std::vector<int> node_seq;              // node -> player's sequence there
  Mat E;
  Vec e;

  int size() const { return static_cast<int>(seqs.size()); }
  int num_infosets() const { return static_cast<int>(row_infoset.size()); }
  int max_depth() const;
  // "infoset:action", or "" for the empty sequence.
  std::string Label(const GameTree& tree, int seq) const;
};

SequenceSpace BuildSequenceSpace(const GameTree& tree, int player);

// A[i][j] (B[i][j]) sums u1 (u2) times chance reach over the terminals reached
// by player-1 sequence i of `s1` and player-2 sequence j of `s2`.
struct PayoffMatrices {
  Mat A;
  Mat B;
};
PayoffMatrices BuildPayoffMatrices(const GameTree& tree,
                                   const SequenceSpace& s1,
                                   const SequenceSpace& s2);

// Additive perturbation of sequence-form payoffs, keyed by sequence labels
// in the player-1 frame. Applied as A += N and B += N^T so the game stays
// symmetric.
struct NoiseEntry {
  std::string row;
  std::string col;
  double value = 0.0;
};
using NoiseTable = std::vector<NoiseEntry>;

// Sequence form of a symmetric game with player-2 sequences expressed in the
// player-1 frame through the symmetry map, so that F = E, f = e, B = A^T.
struct SequenceForm {
  SequenceSpace space;
  Mat E;
  Vec e;
  Mat A;
  Mat B;
  bool symmetric = false;

  int d() const { return static_cast<int>(A.rows()); }
  int rows() const { return static_cast<int>(E.rows()); }
};

class SequenceFormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds both players' sequence spaces independently, maps player 2 through
// the infoset pairing and verifies F = E and B = A^T within 1e-10.
SequenceForm BuildSequenceForm(const GameTree& tree, const SymmetryMap& sym,
                               const NoiseTable* noise = nullptr);

// x^T A y.
double Payoff(const SequenceForm& sf, const Vec& x, const Vec& y);

Vec BehavioralToRealization(const SequenceSpace& space,
                            const BehavioralStrategy& sigma);
Vec BehavioralToRealization(const GameTree& tree, const SequenceForm& sf,
                            const BehavioralStrategy& sigma);

struct BehavioralView {
  BehavioralStrategy strategy;
  std::vector<bool> unreached;  // per infoset
};
BehavioralView RealizationToBehavioral(const GameTree& tree,
                                       const SequenceSpace& space,
                                       const Vec& x);
BehavioralView RealizationToBehavioral(const GameTree& tree,
                                       const SequenceForm& sf, const Vec& x);

// The same strategy expressed for the other player through the infoset
// pairing of `sym`.
BehavioralStrategy MirrorStrategy(const SymmetryMap& sym,
                                  const BehavioralStrategy& sigma);

}  // namespace esskit

#endif  // ESSKIT_SEQUENCE_FORM_H_
