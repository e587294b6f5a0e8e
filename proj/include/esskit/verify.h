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

// Independent checks of solver output: equilibrium residuals, mutant
// certificates and a sampling test of evolutionary stability.

#ifndef ESSKIT_VERIFY_H_
#define ESSKIT_VERIFY_H_

#include <cstdint>
#include <optional>
#include <string>

#include "esskit/sequence_form.h"

namespace esskit {

struct SneResidual {
  double flow_error = 0.0;       // ||Ex - e||_inf
  double min_slack = 0.0;        // smallest s_i
  double complementarity = 0.0;  // max_i min(x_i, s_i)
  double br_gap = 0.0;           // max_y y^T A x - x^T A x, by LP

  bool Ok(double feas_tol = 1e-6, double gap_tol = 1e-5) const {
    return flow_error <= feas_tol && min_slack >= -feas_tol &&
           complementarity <= feas_tol && br_gap <= gap_tol;
  }
  std::string Describe() const;
};

// Slacks come from the best-response values against x; the gap from an
// independent LP over the plan polytope.
SneResidual CheckSneResidual(const SequenceForm& sf, const Vec& x);

// Best response value max_y y^T A x over Ey = e, 0 <= y <= 1 via LP.
double BestResponseValue(const SequenceForm& sf, const Vec& x);

struct MutantCertificate {
  bool feasible = false;     // Ey = e, y >= 0 within 1e-6
  bool on_face = false;      // |y^T A x - v*| <= 1e-5
  bool far_enough = false;   // |y - x|^2 >= delta^2 - 1e-9
  bool invades = false;      // x^T A y - y^T A y <= eps_p
  bool Ok() const { return feasible && on_face && far_enough && invades; }
  std::string Describe() const;
};

MutantCertificate CheckMutantCertificate(const SequenceForm& sf, const Vec& x,
                                         double v_star, const Vec& y,
                                         double delta, double eps_p);

struct VerifyOptions {
  int n_samples = 10000;
  uint64_t seed = 0;
  double eps_p = 1e-5;
  double delta = 1e-2;
  double feas_tol = 1e-6;
  // Pure plans are enumerated only when there are at most this many.
  int64_t max_pure = 1 << 20;
};

struct Counterexample {
  Vec y;
  int condition = 0;  // 1: better reply; 2: equal reply that invades
  double reply_gain = 0.0;  // y^T A x - x^T A x
  double f = 0.0;           // x^T A y - y^T A y
};

struct VerifyResult {
  bool pass = true;
  std::optional<Counterexample> counterexample;
  int64_t mutants_checked = 0;
};

// Tests x against mutants at squared distance at least delta^2: Dirichlet
// samples per infoset, every pure plan, and mixtures of x with best-reply
// plans (which stay on the face y^T A x = x^T A x).
VerifyResult VerifyEss(const SequenceForm& sf, const Vec& x,
                       const VerifyOptions& options = {});

}  // namespace esskit

#endif  // ESSKIT_VERIFY_H_
