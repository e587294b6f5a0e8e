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

#ifndef ESSKIT_QUAD_PROGRAM_H_
#define ESSKIT_QUAD_PROGRAM_H_

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace esskit {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };
enum class ObjectiveSense { kMinimize, kMaximize, kFeasibility };

// z^T Q z + c^T z + constant, Q symmetric.
struct QuadraticForm {
  Eigen::MatrixXd Q;
  Eigen::VectorXd c;
  double constant = 0.0;

  explicit QuadraticForm(int n = 0)
      : Q(Eigen::MatrixXd::Zero(n, n)), c(Eigen::VectorXd::Zero(n)) {}

  double Evaluate(const Eigen::VectorXd& z) const {
    return z.dot(Q * z) + c.dot(z) + constant;
  }
  Eigen::VectorXd Gradient(const Eigen::VectorXd& z) const {
    return 2.0 * (Q * z) + c;
  }
  // Adds coef * z_i * z_j keeping Q symmetric.
  void AddProduct(int i, int j, double coef);
  bool IsLinear() const { return Q.isZero(0.0); }
};

struct LinearConstraint {
  std::vector<std::pair<int, double>> coefs;
  Sense sense = Sense::kEqual;
  double rhs = 0.0;
};

struct QuadConstraint {
  QuadraticForm form;
  Sense sense = Sense::kGreaterEqual;
  double rhs = 0.0;
};

// A box-bounded QCQP with optional complementarity pairs z_a * z_b = 0.
struct QuadProgram {
  int num_vars = 0;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;
  std::vector<std::string> names;
  ObjectiveSense sense = ObjectiveSense::kFeasibility;
  QuadraticForm objective;
  std::vector<LinearConstraint> linear;
  std::vector<QuadConstraint> quadratic;
  std::vector<std::pair<int, int>> complementarity;

  int AddVariable(std::string name, double lower, double upper);
  // Resizes the objective and existing constraint forms to the current
  // variable count. Call after the last AddVariable.
  void Finalize();
  // Throws std::invalid_argument on infinite or crossed bounds, asymmetric Q
  // (beyond 1e-12), bad indices or a complementarity pair whose variables
  // cannot be zero.
  void Validate() const;

  double ObjectiveValue(const Eigen::VectorXd& z) const {
    return objective.Evaluate(z);
  }
  // Largest violation over bounds, linear rows, quadratic rows and
  // complementarity (min(|z_a|, |z_b|)).
  double MaxViolation(const Eigen::VectorXd& z) const;
  bool IsFeasible(const Eigen::VectorXd& z, double tol) const {
    return MaxViolation(z) <= tol;
  }
};

double RowViolation(double lhs, Sense sense, double rhs);

}  // namespace esskit

#endif  // ESSKIT_QUAD_PROGRAM_H_
