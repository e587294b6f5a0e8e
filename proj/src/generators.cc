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

#include "esskit/generators.h"

#include <cmath>
#include <stdexcept>

#include "esskit/symmetry.h"

namespace esskit {

SignalChannel SignalChannelDefault(int S) {
  if (S < 2) throw std::invalid_argument("at least two signals are required");
  SignalChannel ch;
  if (S == 2) {
    ch.rows = {{0.8, 0.2}, {0.2, 0.8}};
    return ch;
  }
  std::vector<double> low(S);
  double sum = 0.0;
  for (int s = 0; s < S; ++s) {
    low[s] = std::pow(0.8, s);
    sum += low[s];
  }
  for (double& w : low) w /= sum;
  ch.rows = {low, std::vector<double>(low.rbegin(), low.rend())};
  return ch;
}

void SignalGameSpec::Validate() const {
  const int S = num_signals;
  const int A = num_actions;
  if (S < 2 || A < 2) throw std::invalid_argument("S and A must be at least 2");
  if (std::abs(prior[0] + prior[1] - 1.0) > 1e-12) {
    throw std::invalid_argument("state prior must sum to 1");
  }
  if (channel.rows.size() != 2) throw std::invalid_argument("channel needs two rows");
  for (const auto& row : channel.rows) {
    if (static_cast<int>(row.size()) != S) {
      throw std::invalid_argument("channel row has wrong length");
    }
    double sum = 0.0;
    for (double w : row) {
      if (w < 0.0) throw std::invalid_argument("negative channel probability");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("channel row does not sum to 1");
    }
  }
  for (const auto& m : payoff) {
    if (m.rows() != A || m.cols() != A) {
      throw std::invalid_argument("payoff matrix must be A x A");
    }
  }
  if (static_cast<int>(signal_names.size()) != S ||
      static_cast<int>(action_names.size()) != A || state_names.size() != 2) {
    throw std::invalid_argument("name lists do not match S and A");
  }
}

GameTree BuildSignalGame(const SignalGameSpec& spec, const std::string& name) {
  spec.Validate();
  const int S = spec.num_signals;
  const int A = spec.num_actions;
  std::vector<Node> nodes;
  auto add = [&](Node n) {
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  };
  std::vector<Infoset> is1(S);
  std::vector<Infoset> is2(S);
  for (int s = 0; s < S; ++s) {
    is1[s] = {1, spec.signal_names[s], spec.action_names, {}};
    is2[s] = {2, spec.signal_names[s], spec.action_names, {}};
  }

  Node root;
  root.name = "nature";
  root.kind = NodeKind::kChance;
  const int root_id = add(root);
  for (int k = 0; k < 2; ++k) {
    const std::string sk = spec.state_names[k];
    Node c1;
    c1.name = sk;
    c1.kind = NodeKind::kChance;
    const int c1_id = add(c1);
    nodes[root_id].children.push_back(c1_id);
    nodes[root_id].probs.push_back(spec.prior[k]);
    for (int s1 = 0; s1 < S; ++s1) {
      const std::string p1 = sk + "_" + spec.signal_names[s1];
      Node c2;
      c2.name = p1;
      c2.kind = NodeKind::kChance;
      const int c2_id = add(c2);
      nodes[c1_id].children.push_back(c2_id);
      nodes[c1_id].probs.push_back(spec.channel.rows[k][s1]);
      for (int s2 = 0; s2 < S; ++s2) {
        const std::string p2 = p1 + "_" + spec.signal_names[s2];
        Node d1;
        d1.name = p2;
        d1.kind = NodeKind::kDecision;
        d1.player = 1;
        d1.infoset = s1;
        const int d1_id = add(d1);
        nodes[c2_id].children.push_back(d1_id);
        nodes[c2_id].probs.push_back(spec.channel.rows[k][s2]);
        for (int a1 = 0; a1 < A; ++a1) {
          const std::string p3 = p2 + "_" + spec.action_names[a1];
          Node d2;
          d2.name = p3;
          d2.kind = NodeKind::kDecision;
          d2.player = 2;
          d2.infoset = s2;
          const int d2_id = add(d2);
          nodes[d1_id].children.push_back(d2_id);
          for (int a2 = 0; a2 < A; ++a2) {
            Node z;
            z.name = p3 + "_" + spec.action_names[a2];
            z.kind = NodeKind::kTerminal;
            z.u1 = spec.payoff[k](a1, a2);
            z.u2 = spec.payoff[k](a2, a1);
            const int z_id = add(z);
            nodes[d2_id].children.push_back(z_id);
          }
        }
      }
    }
  }
  return GameTree::Build(name, std::move(nodes), root_id, std::move(is1), std::move(is2));
}

SignalGameSpec CancerSpec() {
  SignalGameSpec spec;
  spec.num_signals = 2;
  spec.num_actions = 3;
  spec.channel = SignalChannelDefault(2);
  spec.payoff[0] = Eigen::MatrixXd(3, 3);
  spec.payoff[0] << 0.8, 0.8, 0.8,
                    0.4, 0.5, 0.5,
                    0.4, 0.5, 0.5;
  spec.payoff[1] = Eigen::MatrixXd(3, 3);
  spec.payoff[1] << 0.1, 0.1, 0.1,
                    0.1, 0.6, 0.2,
                    0.1, 0.2, 0.6;
  spec.signal_names = {"fav", "unfav"};
  spec.action_names = {"P", "R", "Q"};
  return spec;
}

GameTree CancerGame() { return BuildSignalGame(CancerSpec(), "cancer"); }

GeneratedGame RandomSignalGame(int S, int A, uint64_t seed, double eps_n) {
  if (S < 2 || A < 2) throw std::invalid_argument("S and A must be at least 2");
  GeneratedGame g;
  g.seed = seed;
  SignalGameSpec& spec = g.spec;
  spec.num_signals = S;
  spec.num_actions = A;
  spec.channel = SignalChannelDefault(S);
  spec.noise = eps_n;
  for (int s = 0; s < S; ++s) spec.signal_names.push_back("s" + std::to_string(s));
  for (int a = 0; a < A; ++a) spec.action_names.push_back("a" + std::to_string(a));

  PortableRng rng(seed);
  for (int k = 0; k < 2; ++k) {
    spec.payoff[k] = Eigen::MatrixXd(A, A);
    for (int i = 0; i < A; ++i) {
      for (int j = 0; j < A; ++j) spec.payoff[k](i, j) = rng.Uniform(-1.0, 1.0);
    }
  }
  g.tree = BuildSignalGame(spec, "signal_S" + std::to_string(S) + "_A" +
                                     std::to_string(A) + "_seed" + std::to_string(seed));
  if (eps_n > 0.0) {
    const SymmetryCheck sym = CheckSymmetry(g.tree);
    const SequenceForm sf = BuildSequenceForm(g.tree, *sym.map);
    for (int i = 0; i < sf.d(); ++i) {
      for (int j = 0; j < sf.d(); ++j) {
        if (sf.A(i, j) == 0.0) continue;
        g.noise.push_back({sf.space.Label(g.tree, i), sf.space.Label(g.tree, j),
                           rng.Uniform(-eps_n, eps_n)});
      }
    }
  }
  return g;
}

}  // namespace esskit
