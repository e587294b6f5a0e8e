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

#include "esskit/quad_program.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esskit {
namespace {

void ResizeForm(QuadraticForm* f, int n) {
  const int old = static_cast<int>(f->c.size());
  if (old == n) return;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  const int k = std::min(old, n);
  q.topLeftCorner(k, k) = f->Q.topLeftCorner(k, k);
  c.head(k) = f->c.head(k);
  f->Q = std::move(q);
  f->c = std::move(c);
}

void CheckForm(const QuadraticForm& f, int n, const char* what) {
  if (f.Q.rows() != n || f.Q.cols() != n || f.c.size() != n) {
    throw std::invalid_argument(std::string(what) + " has wrong dimension");
  }
  if ((f.Q - f.Q.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument(std::string(what) + " is not symmetric");
  }
}

}  // namespace

void QuadraticForm::AddProduct(int i, int j, double coef) {
  if (i == j) {
    Q(i, i) += coef;
  } else {
    Q(i, j) += 0.5 * coef;
    Q(j, i) += 0.5 * coef;
  }
}

int QuadProgram::AddVariable(std::string name, double lower, double upper) {
  const int idx = num_vars++;
  lo.conservativeResize(num_vars);
  hi.conservativeResize(num_vars);
  lo(idx) = lower;
  hi(idx) = upper;
  names.push_back(std::move(name));
  return idx;
}

void QuadProgram::Finalize() {
  ResizeForm(&objective, num_vars);
  for (QuadConstraint& qc : quadratic) ResizeForm(&qc.form, num_vars);
}

void QuadProgram::Validate() const {
  if (lo.size() != num_vars || hi.size() != num_vars) {
    throw std::invalid_argument("bound vectors do not match num_vars");
  }
  for (int i = 0; i < num_vars; ++i) {
    if (!std::isfinite(lo(i)) || !std::isfinite(hi(i))) {
      throw std::invalid_argument("variable bounds must be finite");
    }
    if (lo(i) > hi(i)) throw std::invalid_argument("variable has lo > hi");
  }
  CheckForm(objective, num_vars, "objective");
  for (const QuadConstraint& qc : quadratic) {
    CheckForm(qc.form, num_vars, "quadratic constraint");
  }
  for (const LinearConstraint& lc : linear) {
    for (const auto& [j, a] : lc.coefs) {
      if (j < 0 || j >= num_vars) {
        throw std::invalid_argument("linear constraint index out of range");
      }
    }
  }
  for (const auto& [a, b] : complementarity) {
    if (a < 0 || a >= num_vars || b < 0 || b >= num_vars || a == b) {
      throw std::invalid_argument("invalid complementarity pair");
    }
    if (lo(a) > 0 || hi(a) < 0 || lo(b) > 0 || hi(b) < 0) {
      throw std::invalid_argument("complementarity variable cannot be zero");
    }
  }
}

double RowViolation(double lhs, Sense sense, double rhs) {
  switch (sense) {
    case Sense::kLessEqual:
      return std::max(0.0, lhs - rhs);
    case Sense::kGreaterEqual:
      return std::max(0.0, rhs - lhs);
    case Sense::kEqual:
      return std::abs(lhs - rhs);
  }
  return 0.0;
}

double QuadProgram::MaxViolation(const Eigen::VectorXd& z) const {
  double worst = 0.0;
  for (int i = 0; i < num_vars; ++i) {
    worst = std::max({worst, lo(i) - z(i), z(i) - hi(i)});
  }
  for (const LinearConstraint& lc : linear) {
    double lhs = 0.0;
    for (const auto& [j, a] : lc.coefs) lhs += a * z(j);
    worst = std::max(worst, RowViolation(lhs, lc.sense, lc.rhs));
  }
  for (const QuadConstraint& qc : quadratic) {
    worst = std::max(worst, RowViolation(qc.form.Evaluate(z), qc.sense, qc.rhs));
  }
  for (const auto& [a, b] : complementarity) {
    worst = std::max(worst, std::min(std::abs(z(a)), std::abs(z(b))));
  }
  return worst;
}

}  // namespace esskit
