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

// Linear relaxation of a QuadProgram over a box. Every product z_i z_j that
// the program needs is replaced by an auxiliary variable w bounded by the
// McCormick envelope (secant and tangents for squares).

#ifndef ESSKIT_MCCORMICK_H_
#define ESSKIT_MCCORMICK_H_

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "esskit/lp.h"
#include "esskit/quad_program.h"

namespace esskit {

struct Product {
  int i = 0;  // i <= j
  int j = 0;
  // Appears in the objective or a quadratic constraint (as opposed to being
  // introduced only for reformulation-linearization cuts).
  bool relevant = false;
};

struct ProductSet {
  int num_vars = 0;
  std::vector<Product> products;
  std::map<std::pair<int, int>, int> index;
  // Linear constraints whose support lies in the quadratic variables; these
  // are multiplied by bound factors when rlt is on.
  std::vector<int> rlt_rows;
  std::vector<int> quad_vars;
  bool rlt = false;

  int Find(int i, int j) const;
  int lp_index(int k) const { return num_vars + k; }
};

ProductSet CollectProducts(const QuadProgram& p, bool rlt);

struct Relaxation {
  LinearProgram lp;
  // Relaxed objective is lp.cost^T (z, w) + objective_offset, always in
  // minimization form (a maximization program is negated).
  double objective_offset = 0.0;
};

// Builds the relaxation over lo <= z <= hi. For any z in the box feasible
// for p, LiftPoint(products, z) is feasible for the LP and its LP objective
// equals the (minimization-form) program objective.
Relaxation McCormickRelax(const QuadProgram& p, const ProductSet& products,
                          const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

Eigen::VectorXd LiftPoint(const ProductSet& products, const Eigen::VectorXd& z);

// Largest |w_k - z_i z_j| over the relevant products.
double MaxProductGap(const ProductSet& products, const Eigen::VectorXd& point,
                     int* worst = nullptr);

}  // namespace esskit

#endif  // ESSKIT_MCCORMICK_H_
