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

#include "esskit/lp.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace esskit {
namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr int kRefactorInterval = 100;
constexpr double kSingularThreshold = 1e-11;

// Tableau simplex over z = (x, r) with [A  -I] z = 0, lo <= z <= hi. Row
// variables r carry the row bounds and form the initial basis.
class Simplex {
 public:
  Simplex(const LinearProgram& lp, const LpOptions& opt)
      : opt_(opt), n_(lp.num_vars), m_(static_cast<int>(lp.rows.size())) {
    const int total = n_ + m_;
    lo_.resize(total);
    hi_.resize(total);
    cost_ = Eigen::VectorXd::Zero(total);
    for (int j = 0; j < n_; ++j) {
      if (!std::isfinite(lp.lo(j)) || !std::isfinite(lp.hi(j))) {
        throw std::invalid_argument("LP variable bounds must be finite");
      }
      if (lp.lo(j) > lp.hi(j)) {
        throw std::invalid_argument("LP variable has crossed bounds");
      }
      lo_(j) = lp.lo(j);
      hi_(j) = lp.hi(j);
      cost_(j) = lp.cost(j);
    }
    original_ = RowMat::Zero(m_, total);
    for (int i = 0; i < m_; ++i) {
      const LinearRow& row = lp.rows[i];
      if (row.lo > row.hi) {
        crossed_row_ = true;
      }
      lo_(n_ + i) = row.lo;
      hi_(n_ + i) = row.hi;
      for (const auto& [j, a] : row.coefs) original_(i, j) += a;
      original_(i, n_ + i) = -1.0;
    }
    tableau_ = -original_;
    basis_.resize(m_);
    position_.assign(total, -1);
    at_upper_.assign(total, false);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = n_ + i;
      position_[n_ + i] = i;
    }
  }

  LpResult Run() {
    LpResult result;
    if (crossed_row_) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    const int total = n_ + m_;
    const int max_iter =
        opt_.max_iterations > 0 ? opt_.max_iterations : 50 * (m_ + total) + 100;
    // Pivots since the phase measure (infeasibility sum in phase 1, objective
    // in phase 2) last strictly improved.
    int stall = 0;
    double best_infeasibility = kInf;
    double best_objective = kInf;
    int since_refactor = 0;
    Eigen::VectorXd nonbasic(total);
    Eigen::VectorXd xb(m_);
    Eigen::VectorXd cb(m_);
    Eigen::VectorXd reduced(total);

    for (int iter = 0;; ++iter) {
      if (iter >= max_iter) {
        result.status = LpStatus::kIterationLimit;
        result.iterations = iter;
        return result;
      }
      if (since_refactor >= kRefactorInterval) {
        if (!Refactor()) {
          result.status = LpStatus::kNumericalError;
          return result;
        }
        since_refactor = 0;
      }
      ComputeBasics(&nonbasic, &xb);

      bool phase1 = false;
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) {
        const int v = basis_[i];
        if (xb(i) < lo_(v) - opt_.feasibility_tol) {
          cb(i) = -1.0;
          phase1 = true;
          infeasibility += lo_(v) - xb(i);
        } else if (xb(i) > hi_(v) + opt_.feasibility_tol) {
          cb(i) = 1.0;
          phase1 = true;
          infeasibility += xb(i) - hi_(v);
        } else {
          cb(i) = 0.0;
        }
      }
      {
        double measure = infeasibility;
        double* best_measure = &best_infeasibility;
        if (!phase1) {
          measure = 0.0;
          for (int j = 0; j < n_; ++j) {
            measure += cost_(j) * (position_[j] >= 0 ? xb(position_[j]) : nonbasic(j));
          }
          best_measure = &best_objective;
        }
        const double margin = 1e-12 * (1.0 + std::abs(measure));
        if (measure < *best_measure - margin) {
          *best_measure = measure;
          stall = 0;
        } else {
          ++stall;
        }
      }
      if (!phase1) {
        for (int i = 0; i < m_; ++i) cb(i) = cost_(basis_[i]);
        reduced = cost_.transpose() - cb.transpose() * tableau_;
      } else {
        reduced = -(cb.transpose() * tableau_).transpose();
      }

      const bool bland = stall >= opt_.degenerate_switch;
      int entering = -1;
      double best = 0.0;
      for (int j = 0; j < total; ++j) {
        if (position_[j] >= 0 || !(hi_(j) > lo_(j))) continue;
        const double dj = reduced(j);
        const bool improves = at_upper_[j] ? dj > opt_.optimality_tol
                                           : dj < -opt_.optimality_tol;
        if (!improves) continue;
        if (bland) {
          entering = j;
          break;
        }
        if (std::abs(dj) > best) {
          best = std::abs(dj);
          entering = j;
        }
      }
      if (entering < 0) {
        // Confirm the verdict on a freshly factored tableau.
        if (since_refactor > 0) {
          if (!Refactor()) {
            result.status = LpStatus::kNumericalError;
            return result;
          }
          since_refactor = 0;
          continue;
        }
        result.iterations = iter;
        result.status = phase1 ? LpStatus::kInfeasible : LpStatus::kOptimal;
        if (!phase1) Extract(nonbasic, xb, &result);
        return result;
      }

      const double dir = at_upper_[entering] ? -1.0 : 1.0;
      const double range = hi_(entering) - lo_(entering);
      // Harris two-pass ratio test: bound the step with every basic variable's
      // bound relaxed by the feasibility tolerance, then take the largest
      // pivot among the rows that block within that step.
      auto limit_for = [&](int i, double alpha, double slack, bool* upper) {
        const int v = basis_[i];
        *upper = false;
        const bool below = xb(i) < lo_(v) - opt_.feasibility_tol;
        const bool above = xb(i) > hi_(v) + opt_.feasibility_tol;
        if (below) {
          return alpha > 0 ? (lo_(v) - xb(i)) / alpha : kInf;
        }
        if (above) {
          *upper = true;
          return alpha < 0 ? (hi_(v) - xb(i)) / alpha : kInf;
        }
        if (alpha > 0) {
          if (!std::isfinite(hi_(v))) return kInf;
          *upper = true;
          return std::max(0.0, (hi_(v) + slack - xb(i)) / alpha);
        }
        if (!std::isfinite(lo_(v))) return kInf;
        return std::max(0.0, (lo_(v) - slack - xb(i)) / alpha);
      };
      double theta_max = range;
      for (int i = 0; i < m_; ++i) {
        const double alpha = -tableau_(i, entering) * dir;
        if (std::abs(alpha) <= opt_.pivot_tol) continue;
        bool upper;
        theta_max = std::min(theta_max, limit_for(i, alpha, bland ? 0.0 : opt_.feasibility_tol, &upper));
      }
      double theta = range;
      int leave_row = -1;
      bool leave_upper = false;
      double leave_alpha = 0.0;
      if (std::isfinite(theta_max) && !(range <= theta_max)) {
        for (int i = 0; i < m_; ++i) {
          const double alpha = -tableau_(i, entering) * dir;
          if (std::abs(alpha) <= opt_.pivot_tol) continue;
          bool upper;
          const double limit = limit_for(i, alpha, 0.0, &upper);
          if (!(limit <= theta_max)) continue;
          bool take = leave_row < 0;
          if (!take) {
            take = bland ? basis_[i] < basis_[leave_row]
                               : std::abs(alpha) > std::abs(leave_alpha);
          }
          if (take) {
            theta = limit;
            leave_row = i;
            leave_upper = upper;
            leave_alpha = alpha;
          }
        }
      } else if (!std::isfinite(theta_max)) {
        theta = kInf;
      }
      if (!std::isfinite(theta)) {
        result.iterations = iter;
        result.status = phase1 ? LpStatus::kNumericalError : LpStatus::kUnbounded;
        return result;
      }

      if (leave_row < 0) {
        at_upper_[entering] = !at_upper_[entering];
        continue;
      }
      const int leaving = basis_[leave_row];
      if (!Pivot(leave_row, entering)) {
        result.status = LpStatus::kNumericalError;
        return result;
      }
      ++since_refactor;
      position_[leaving] = -1;
      at_upper_[leaving] = leave_upper;
      at_upper_[entering] = false;
    }
  }

 private:
  void ComputeBasics(Eigen::VectorXd* nonbasic, Eigen::VectorXd* xb) const {
    for (int j = 0; j < n_ + m_; ++j) {
      (*nonbasic)(j) = position_[j] >= 0 ? 0.0 : (at_upper_[j] ? hi_(j) : lo_(j));
    }
    *xb = -(tableau_ * *nonbasic);
  }

  bool Pivot(int r, int j) {
    const double piv = tableau_(r, j);
    if (std::abs(piv) < opt_.pivot_tol) return false;
    tableau_.row(r) /= piv;
    Eigen::VectorXd col = tableau_.col(j);
    col(r) = 0.0;
    tableau_.noalias() -= col * tableau_.row(r);
    position_[basis_[r]] = -1;
    basis_[r] = j;
    position_[j] = r;
    return true;
  }

  bool Refactor() {
    Eigen::MatrixXd basis_cols(m_, m_);
    for (int i = 0; i < m_; ++i) basis_cols.col(i) = original_.col(basis_[i]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_cols);
    lu.setThreshold(kSingularThreshold);
    if (!lu.isInvertible()) {
      Repair(lu);
      for (int i = 0; i < m_; ++i) basis_cols.col(i) = original_.col(basis_[i]);
      lu.compute(basis_cols);
      if (!lu.isInvertible()) return false;
    }
    tableau_ = lu.solve(Eigen::MatrixXd(original_));
    return tableau_.allFinite();
  }

  // Keeps a maximal independent subset of the basic columns and completes
  // the basis with row slacks of rows those columns leave uncovered. Dropped
  // columns become nonbasic at a finite bound.
  void Repair(const Eigen::FullPivLU<Eigen::MatrixXd>& lu) {
    const int rank = static_cast<int>(lu.rank());
    std::vector<int> kept;
    for (int k = 0; k < rank; ++k) kept.push_back(basis_[lu.permutationQ().indices()(k)]);
    Eigen::MatrixXd kt(rank, m_);
    for (int k = 0; k < rank; ++k) kt.row(k) = original_.col(kept[k]).transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> rows(kt);
    std::vector<bool> covered(m_, false);
    for (int k = 0; k < rank; ++k) covered[rows.permutationQ().indices()(k)] = true;

    std::vector<bool> keep(n_ + m_, false);
    for (int v : kept) keep[v] = true;
    for (int i = 0; i < m_; ++i) {
      if (!keep[basis_[i]]) {
        position_[basis_[i]] = -1;
        at_upper_[basis_[i]] = !std::isfinite(lo_(basis_[i]));
      }
    }
    std::vector<int> fresh = kept;
    for (int r = 0; r < m_; ++r) {
      if (covered[r]) continue;
      const int slack = n_ + r;
      if (keep[slack]) continue;
      fresh.push_back(slack);
    }
    for (int i = 0; i < m_; ++i) {
      basis_[i] = fresh[i];
      position_[fresh[i]] = i;
    }
  }

  void Extract(const Eigen::VectorXd& nonbasic, const Eigen::VectorXd& xb,
               LpResult* result) const {
    result->x.resize(n_);
    for (int j = 0; j < n_; ++j) {
      const double v = position_[j] >= 0 ? xb(position_[j]) : nonbasic(j);
      result->x(j) = std::clamp(v, lo_(j), hi_(j));
    }
    result->objective = cost_.head(n_).dot(result->x);
  }

  const LpOptions opt_;
  const int n_;
  const int m_;
  bool crossed_row_ = false;
  Eigen::VectorXd lo_, hi_, cost_;
  RowMat original_;
  RowMat tableau_;
  std::vector<int> basis_;
  std::vector<int> position_;
  std::vector<bool> at_upper_;
};

}  // namespace

std::string ToString(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kNumericalError:
      return "numerical_error";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

LpResult SolveLp(const LinearProgram& lp, const LpOptions& options) {
  if (lp.lo.size() != lp.num_vars || lp.hi.size() != lp.num_vars ||
      lp.cost.size() != lp.num_vars) {
    throw std::invalid_argument("LP vectors do not match num_vars");
  }
  Simplex simplex(lp, options);
  return simplex.Run();
}

LpResult MaximizeLp(LinearProgram lp, const LpOptions& options) {
  lp.cost = -lp.cost;
  LpResult r = SolveLp(lp, options);
  r.objective = -r.objective;
  return r;
}

}  // namespace esskit
