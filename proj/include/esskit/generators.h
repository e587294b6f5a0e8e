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

// Symmetric signaling games: nature draws a hidden state (Low or High), each
// player privately receives an independent signal drawn from the state's
// channel row, player 1 acts, then player 2 acts without seeing player 1's
// action. Payoffs come from a per-state A x A matrix M with (M[a1][a2],
// M[a2][a1]) at each leaf.

#ifndef ESSKIT_GENERATORS_H_
#define ESSKIT_GENERATORS_H_

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "esskit/game_tree.h"
#include "esskit/sequence_form.h"

namespace esskit {

// rows[k][s]: probability of signal s under state k (0 = Low, 1 = High).
struct SignalChannel {
  std::vector<std::vector<double>> rows;
};

// S = 2: (0.8, 0.2) under Low and (0.2, 0.8) under High. S > 2: weights
// 0.8^s for s = 0..S-1 under Low, reversed under High, each row normalized.
// Throws std::invalid_argument for S < 2.
SignalChannel SignalChannelDefault(int S);

struct SignalGameSpec {
  int num_signals = 2;
  int num_actions = 2;
  std::array<double, 2> prior = {0.5, 0.5};
  SignalChannel channel;
  std::array<Eigen::MatrixXd, 2> payoff;  // per state, A x A
  double noise = 0.0;
  std::vector<std::string> state_names = {"low", "high"};
  std::vector<std::string> signal_names;
  std::vector<std::string> action_names;

  // Throws std::invalid_argument on S or A < 2, channel rows not summing to
  // 1 within 1e-12, wrong matrix shapes or name counts.
  void Validate() const;
};

GameTree BuildSignalGame(const SignalGameSpec& spec, const std::string& name);

SignalGameSpec CancerSpec();
GameTree CancerGame();

// mt19937_64 with doubles taken from the top 53 bits: u = (r >> 11) * 2^-53.
class PortableRng {
 public:
  explicit PortableRng(uint64_t seed) : engine_(seed) {}
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }
  uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct GeneratedGame {
  GameTree tree;
  SignalGameSpec spec;
  NoiseTable noise;
  uint64_t seed = 0;
};

// Payoffs uniform in [-1, 1] (Low matrix row-major, then High), then one
// noise draw uniform in [-eps_n, eps_n] for each structurally nonzero
// sequence-form entry in sequence order. The noise is keyed by sequence
// labels and applied symmetrically by BuildSequenceForm.
GeneratedGame RandomSignalGame(int S, int A, uint64_t seed, double eps_n = 1e-4);

}  // namespace esskit

#endif  // ESSKIT_GENERATORS_H_
