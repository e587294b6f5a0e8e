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

// Enumeration of symmetric Nash equilibria (SNE) and evolutionarily stable
// strategies (ESS) of a symmetric two-player extensive-form game, working on
// its sequence form.
//
//   InitialSne  finds any point of the complementarity system
//                 Ex = e, E^T p - A x - s = 0, x, s >= 0, x_i s_i = 0.
//   NewSne      finds the SNE maximizing the smallest squared distance t to
//               the SNE found so far.
//   EssTest     minimizes F(y) = x^T A y - y^T A y over mutants y with
//               y^T A x = v* and |y - x|^2 >= delta^2.
//   FindAllEss  alternates the two until t* drops below eps_s.

#ifndef ESSKIT_ESS_H_
#define ESSKIT_ESS_H_

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "esskit/game_tree.h"
#include "esskit/global_solver.h"
#include "esskit/sequence_form.h"

namespace esskit {

enum class Termination { kMaxSne, kFirstEss, kTimeLimit, kSeparationOnly };

std::string ToString(Termination t);
// Accepts "max-sne", "first-ess", "time-limit", "separation-only".
std::optional<Termination> ParseTermination(const std::string& s);

struct SolveConfig {
  double eps_s = 1e-3;
  double eps_p = 1e-5;
  double delta = 1e-2;
  double eps_clip = 1e-5;
  double feas_tol = 1e-6;
  Termination termination = Termination::kSeparationOnly;
  double time_limit_s = std::numeric_limits<double>::infinity();
  int max_sne = 1000;
  int64_t max_nodes = 200000;
  bool trace = false;

  // Throws std::invalid_argument unless eps_s, eps_p, delta^2 and eps_clip
  // all exceed feas_tol.
  void Validate() const;
  SolverConfig Solver(double remaining_s) const;
};

struct SneWitness {
  Vec x;
  Vec p;  // one entry per row of E
  Vec s;  // one entry per sequence
  double v_star = 0.0;
};

struct SneSearch {
  SolveStatus status = SolveStatus::kInfeasible;
  std::optional<SneWitness> witness;  // clipped, with p and s recomputed
  Vec raw_x;                          // solver plan before clipping
  double t_star = 0.0;                // NewSne only
  bool certified = false;
  double wall_time_s = 0.0;
  int64_t nodes = 0;
};

enum class Verdict { kEss, kNotEss, kUndecided };
std::string ToString(Verdict v);

struct EssTestResult {
  SolveStatus status = SolveStatus::kInfeasible;
  bool infeasible = false;  // certified: no mutant on the face at distance delta
  double f_star = 0.0;
  std::optional<Vec> mutant;
  Verdict verdict = Verdict::kUndecided;
  double wall_time_s = 0.0;
  int64_t nodes = 0;
};

// Best-response values of the opponent's sequences against x, giving the
// tightest p and s of the complementarity system.
SneWitness WitnessFor(const SequenceForm& sf, const Vec& x);

SneSearch InitialSne(const GameTree& tree, const SequenceForm& sf,
                     const SolveConfig& cfg);
SneSearch NewSne(const GameTree& tree, const SequenceForm& sf,
                 const std::vector<Vec>& known, const SolveConfig& cfg);
EssTestResult EssTest(const SequenceForm& sf, const Vec& x, double v_star,
                      const SolveConfig& cfg);

Vec ClipNormalize(const GameTree& tree, const SequenceForm& sf, const Vec& x,
                  double eps_clip);

struct SneEntry {
  int index = 0;
  SneWitness witness;
  BehavioralStrategy behavioral;
  EssTestResult test;
  double sne_time_s = 0.0;
  double t_star = 0.0;  // separation certified when this SNE was found
};

struct EssReport {
  std::vector<SneEntry> sne;
  double t_star_final = 0.0;
  bool t_star_final_set = false;
  std::string termination_reason;
  std::vector<std::string> flags;
  double total_time_s = 0.0;

  int NumEss() const;
};

EssReport FindAllEss(const GameTree& tree, const SequenceForm& sf,
                     const SolveConfig& cfg);

}  // namespace esskit

#endif  // ESSKIT_ESS_H_
