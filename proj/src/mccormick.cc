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

#include "esskit/mccormick.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace esskit {
namespace {

int AddProduct(ProductSet* ps, int i, int j, bool relevant) {
  if (i > j) std::swap(i, j);
  auto [it, inserted] =
      ps->index.emplace(std::make_pair(i, j), static_cast<int>(ps->products.size()));
  if (inserted) {
    ps->products.push_back({i, j, relevant});
  } else if (relevant) {
    ps->products[it->second].relevant = true;
  }
  return it->second;
}

void CollectForm(const QuadraticForm& f, ProductSet* ps) {
  const int n = static_cast<int>(f.c.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (f.Q(i, j) != 0.0) AddProduct(ps, i, j, true);
    }
  }
}

// Appends sum over products of coef * w plus the linear part to a row.
void AppendForm(const QuadraticForm& f, const ProductSet& ps, double scale,
                std::vector<std::pair<int, double>>* coefs) {
  const int n = static_cast<int>(f.c.size());
  for (int i = 0; i < n; ++i) {
    if (f.c(i) != 0.0) coefs->push_back({i, scale * f.c(i)});
    for (int j = i; j < n; ++j) {
      const double q = f.Q(i, j);
      if (q == 0.0) continue;
      const double coef = i == j ? q : 2.0 * q;
      coefs->push_back({ps.lp_index(ps.Find(i, j)), scale * coef});
    }
  }
}

std::pair<double, double> ProductRange(double li, double ui, double lj,
                                       double uj, bool square) {
  if (square) {
    const double a = li * li;
    const double b = ui * ui;
    if (li >= 0.0 || ui <= 0.0) return {std::min(a, b), std::max(a, b)};
    return {0.0, std::max(a, b)};
  }
  const double c[4] = {li * lj, li * uj, ui * lj, ui * uj};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

}  // namespace

int ProductSet::Find(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = index.find({i, j});
  return it == index.end() ? -1 : it->second;
}

ProductSet CollectProducts(const QuadProgram& p, bool rlt) {
  ProductSet ps;
  ps.num_vars = p.num_vars;
  ps.rlt = rlt;
  CollectForm(p.objective, &ps);
  for (const QuadConstraint& qc : p.quadratic) CollectForm(qc.form, &ps);

  std::set<int> quad;
  for (const Product& pr : ps.products) {
    quad.insert(pr.i);
    quad.insert(pr.j);
  }
  ps.quad_vars.assign(quad.begin(), quad.end());
  if (!rlt || quad.empty()) return ps;

  for (int r = 0; r < static_cast<int>(p.linear.size()); ++r) {
    const LinearConstraint& lc = p.linear[r];
    if (lc.coefs.empty()) continue;
    const bool inside = std::all_of(lc.coefs.begin(), lc.coefs.end(),
                                    [&](const auto& t) { return quad.count(t.first) > 0; });
    if (!inside) continue;
    ps.rlt_rows.push_back(r);
    for (const auto& [k, a] : lc.coefs) {
      for (int j : ps.quad_vars) AddProduct(&ps, k, j, false);
    }
  }
  return ps;
}

Relaxation McCormickRelax(const QuadProgram& p, const ProductSet& ps,
                          const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
  const int n = p.num_vars;
  const int nw = static_cast<int>(ps.products.size());
  Relaxation rel;
  rel.lp = LinearProgram(n + nw);
  rel.lp.lo.head(n) = lo;
  rel.lp.hi.head(n) = hi;

  for (int k = 0; k < nw; ++k) {
    const Product& pr = ps.products[k];
    const auto [wl, wu] = ProductRange(lo(pr.i), hi(pr.i), lo(pr.j), hi(pr.j), pr.i == pr.j);
    rel.lp.lo(n + k) = wl;
    rel.lp.hi(n + k) = wu;
  }

  if (p.sense != ObjectiveSense::kFeasibility) {
    const double scale = p.sense == ObjectiveSense::kMaximize ? -1.0 : 1.0;
    std::vector<std::pair<int, double>> coefs;
    AppendForm(p.objective, ps, scale, &coefs);
    for (const auto& [j, a] : coefs) rel.lp.cost(j) += a;
    rel.objective_offset = scale * p.objective.constant;
  }

  for (const LinearConstraint& lc : p.linear) {
    const double l = lc.sense == Sense::kLessEqual ? -kInf : lc.rhs;
    const double u = lc.sense == Sense::kGreaterEqual ? kInf : lc.rhs;
    rel.lp.AddRow(lc.coefs, l, u);
  }
  for (const QuadConstraint& qc : p.quadratic) {
    std::vector<std::pair<int, double>> coefs;
    AppendForm(qc.form, ps, 1.0, &coefs);
    const double rhs = qc.rhs - qc.form.constant;
    const double l = qc.sense == Sense::kLessEqual ? -kInf : rhs;
    const double u = qc.sense == Sense::kGreaterEqual ? kInf : rhs;
    rel.lp.AddRow(std::move(coefs), l, u);
  }

  for (int k = 0; k < nw; ++k) {
    const Product& pr = ps.products[k];
    const int w = n + k;
    const int i = pr.i;
    const int j = pr.j;
    if (i == j) {
      const double l = lo(i);
      const double u = hi(i);
      // Secant from above, tangents from below.
      rel.lp.AddRow({{w, 1.0}, {i, -(l + u)}}, -kInf, -l * u);
      const double mid = 0.5 * (l + u);
      for (double t : {l, mid, u}) {
        rel.lp.AddRow({{w, 1.0}, {i, -2.0 * t}}, -t * t, kInf);
      }
      continue;
    }
    const double li = lo(i), ui = hi(i), lj = lo(j), uj = hi(j);
    rel.lp.AddRow({{w, 1.0}, {j, -li}, {i, -lj}}, -li * lj, kInf);
    rel.lp.AddRow({{w, 1.0}, {j, -ui}, {i, -uj}}, -ui * uj, kInf);
    rel.lp.AddRow({{w, 1.0}, {j, -ui}, {i, -lj}}, -kInf, -ui * lj);
    rel.lp.AddRow({{w, 1.0}, {j, -li}, {i, -uj}}, -kInf, -li * uj);
  }

  for (int r : ps.rlt_rows) {
    const LinearConstraint& lc = p.linear[r];
    for (int j : ps.quad_vars) {
      if (!(hi(j) > lo(j))) continue;
      if (lc.sense == Sense::kEqual) {
        std::vector<std::pair<int, double>> coefs;
        for (const auto& [k, a] : lc.coefs) coefs.push_back({ps.lp_index(ps.Find(k, j)), a});
        coefs.push_back({j, -lc.rhs});
        rel.lp.AddRow(std::move(coefs), 0.0, 0.0);
        continue;
      }
      // Normalize to a^T z <= b.
      const double s = lc.sense == Sense::kLessEqual ? 1.0 : -1.0;
      const double b = s * lc.rhs;
      // (b - a^T z)(z_j - lo_j) >= 0
      std::vector<std::pair<int, double>> low;
      // (b - a^T z)(hi_j - z_j) >= 0
      std::vector<std::pair<int, double>> up;
      for (const auto& [k, a0] : lc.coefs) {
        const double a = s * a0;
        const int w = ps.lp_index(ps.Find(k, j));
        low.push_back({w, -a});
        low.push_back({k, lo(j) * a});
        up.push_back({w, a});
        up.push_back({k, -hi(j) * a});
      }
      low.push_back({j, b});
      up.push_back({j, -b});
      rel.lp.AddRow(std::move(low), b * lo(j), kInf);
      rel.lp.AddRow(std::move(up), -b * hi(j), kInf);
    }
  }
  return rel;
}

Eigen::VectorXd LiftPoint(const ProductSet& ps, const Eigen::VectorXd& z) {
  const int nw = static_cast<int>(ps.products.size());
  Eigen::VectorXd out(ps.num_vars + nw);
  out.head(ps.num_vars) = z;
  for (int k = 0; k < nw; ++k) {
    out(ps.num_vars + k) = z(ps.products[k].i) * z(ps.products[k].j);
  }
  return out;
}

double MaxProductGap(const ProductSet& ps, const Eigen::VectorXd& point, int* worst) {
  double best = 0.0;
  if (worst != nullptr) *worst = -1;
  for (int k = 0; k < static_cast<int>(ps.products.size()); ++k) {
    const Product& pr = ps.products[k];
    if (!pr.relevant) continue;
    const double gap =
        std::abs(point(ps.num_vars + k) - point(pr.i) * point(pr.j));
    if (gap > best) {
      best = gap;
      if (worst != nullptr) *worst = k;
    }
  }
  return best;
}

}  // namespace esskit
