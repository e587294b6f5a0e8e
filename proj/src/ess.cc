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

#include "esskit/ess.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace esskit {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Layout {
  int x = 0;
  int p = 0;
  int s = 0;
  int t = -1;
};

// The complementarity system with duals boxed to [-m, m]. Slack bounds
// follow from the dual box: s_j = (E^T p)_j - (A x)_j.
QuadProgram BuildSneSystem(const SequenceForm& sf, double m, Layout* lay) {
  const int d = sf.d();
  const int rows = sf.rows();
  QuadProgram q;
  lay->x = 0;
  for (int j = 0; j < d; ++j) q.AddVariable("x" + std::to_string(j), 0.0, 1.0);
  lay->p = q.num_vars;
  for (int r = 0; r < rows; ++r) q.AddVariable("p" + std::to_string(r), -m, m);
  lay->s = q.num_vars;
  for (int j = 0; j < d; ++j) {
    const double bound = sf.E.col(j).cwiseAbs().sum() * m + sf.A.row(j).cwiseAbs().sum();
    q.AddVariable("s" + std::to_string(j), 0.0, bound);
  }
  for (int r = 0; r < rows; ++r) {
    LinearConstraint lc;
    for (int j = 0; j < d; ++j) {
      if (sf.E(r, j) != 0.0) lc.coefs.push_back({lay->x + j, sf.E(r, j)});
    }
    lc.sense = Sense::kEqual;
    lc.rhs = sf.e(r);
    q.linear.push_back(std::move(lc));
  }
  for (int j = 0; j < d; ++j) {
    LinearConstraint lc;
    for (int r = 0; r < rows; ++r) {
      if (sf.E(r, j) != 0.0) lc.coefs.push_back({lay->p + r, sf.E(r, j)});
    }
    for (int k = 0; k < d; ++k) {
      if (sf.A(j, k) != 0.0) lc.coefs.push_back({lay->x + k, -sf.A(j, k)});
    }
    lc.coefs.push_back({lay->s + j, -1.0});
    lc.sense = Sense::kEqual;
    lc.rhs = 0.0;
    q.linear.push_back(std::move(lc));
  }
  for (int j = 0; j < d; ++j) q.complementarity.push_back({lay->x + j, lay->s + j});
  q.Finalize();
  return q;
}

double InitialDualBound(const SequenceForm& sf) {
  return 1.0 + sf.A.cwiseAbs().sum();
}

// Runs the SNE program, doubling the dual box while a dual of the found
// point sits within 1e-3 of it.
SneSearch RunSne(const GameTree& tree, const SequenceForm& sf,
                 const std::vector<Vec>& known, const SolveConfig& cfg) {
  const auto t0 = Clock::now();
  SneSearch out;
  double m = InitialDualBound(sf);
  const int d = sf.d();
  for (int attempt = 0; attempt <= 3; ++attempt) {
    Layout lay;
    QuadProgram q = BuildSneSystem(sf, m, &lay);
    if (!known.empty()) {
      lay.t = q.AddVariable("t", 0.0, static_cast<double>(d));
      q.Finalize();
      q.sense = ObjectiveSense::kMaximize;
      q.objective.c(lay.t) = 1.0;
      for (const Vec& xk : known) {
        QuadConstraint qc{QuadraticForm(q.num_vars)};
        for (int j = 0; j < d; ++j) {
          qc.form.Q(lay.x + j, lay.x + j) = 1.0;
          qc.form.c(lay.x + j) = -2.0 * xk(j);
        }
        qc.form.c(lay.t) = -1.0;
        qc.form.constant = xk.squaredNorm();
        qc.sense = Sense::kGreaterEqual;
        qc.rhs = 0.0;
        q.quadratic.push_back(std::move(qc));
      }
    }
    const double remaining = cfg.time_limit_s - Seconds(t0);
    const Solution sol = SolveGlobal(q, cfg.Solver(remaining));
    out.status = sol.status;
    out.nodes += sol.nodes;
    out.certified = sol.status == SolveStatus::kOptimal;
    if (!sol.has_solution) break;
    out.raw_x = sol.x.segment(lay.x, d);
    if (lay.t >= 0) out.t_star = sol.objective;
    const Vec x = ClipNormalize(tree, sf, out.raw_x, cfg.eps_clip);
    SneWitness w = WitnessFor(sf, x);
    if (w.p.cwiseAbs().maxCoeff() < m - 1e-3 || attempt == 3) {
      out.witness = std::move(w);
      break;
    }
    m *= 2.0;
  }
  out.wall_time_s = Seconds(t0);
  return out;
}

}  // namespace

std::string ToString(Termination t) {
  switch (t) {
    case Termination::kMaxSne:
      return "max-sne";
    case Termination::kFirstEss:
      return "first-ess";
    case Termination::kTimeLimit:
      return "time-limit";
    case Termination::kSeparationOnly:
      return "separation-only";
  }
  return "unknown";
}

std::optional<Termination> ParseTermination(const std::string& s) {
  for (Termination t : {Termination::kMaxSne, Termination::kFirstEss,
                        Termination::kTimeLimit, Termination::kSeparationOnly}) {
    if (ToString(t) == s) return t;
  }
  return std::nullopt;
}

std::string ToString(Verdict v) {
  switch (v) {
    case Verdict::kEss:
      return "ESS";
    case Verdict::kNotEss:
      return "NotESS";
    case Verdict::kUndecided:
      return "Undecided";
  }
  return "unknown";
}

void SolveConfig::Validate() const {
  auto check = [&](double v, const char* name) {
    if (!(v > feas_tol)) {
      throw std::invalid_argument(std::string(name) +
                                  " must exceed the feasibility tolerance");
    }
  };
  if (!(feas_tol > 0.0)) throw std::invalid_argument("feas_tol must be positive");
  check(eps_s, "eps_s");
  check(eps_p, "eps_p");
  check(delta * delta, "delta^2");
  check(eps_clip, "eps_clip");
  if (max_sne < 1) throw std::invalid_argument("max_sne must be at least 1");
}

SolverConfig SolveConfig::Solver(double remaining_s) const {
  SolverConfig sc;
  sc.feas_tol = feas_tol;
  sc.max_nodes = max_nodes;
  sc.time_limit_s = std::max(0.0, remaining_s);
  sc.trace = trace;
  return sc;
}

SneWitness WitnessFor(const SequenceForm& sf, const Vec& x) {
  const SequenceSpace& sp = sf.space;
  const int d = sf.d();
  const Vec g = sf.A * x;
  std::vector<std::vector<int>> children(d);
  for (int is = 0; is < sp.num_infosets(); ++is) children[sp.parent_seq[is]].push_back(is);

  std::vector<double> value(sp.num_infosets(), 0.0);
  auto continuation = [&](int seq) {
    double v = g(seq);
    for (int is : children[seq]) v += value[is];
    return v;
  };
  for (int r = sp.num_infosets(); r >= 1; --r) {
    const int is = sp.row_infoset[r - 1];
    double best = -std::numeric_limits<double>::infinity();
    for (int seq : sp.action_seqs[is]) best = std::max(best, continuation(seq));
    value[is] = best;
  }
  SneWitness w;
  w.x = x;
  w.p = Vec::Zero(sf.rows());
  w.s = Vec::Zero(d);
  w.p(0) = continuation(0);
  for (int is = 0; is < sp.num_infosets(); ++is) {
    w.p(sp.infoset_row[is]) = value[is];
    for (int seq : sp.action_seqs[is]) w.s(seq) = value[is] - continuation(seq);
  }
  w.v_star = x.dot(g);
  return w;
}

Vec ClipNormalize(const GameTree& tree, const SequenceForm& sf, const Vec& x,
                  double eps_clip) {
  BehavioralView view = RealizationToBehavioral(tree, sf, x);
  for (auto& dist : view.strategy.probs) {
    const auto largest = std::max_element(dist.begin(), dist.end()) - dist.begin();
    double sum = 0.0;
    for (double& pr : dist) {
      if (pr < eps_clip) pr = 0.0;
      sum += pr;
    }
    if (sum <= 0.0) {
      std::fill(dist.begin(), dist.end(), 0.0);
      dist[largest] = 1.0;
      sum = 1.0;
    }
    for (double& pr : dist) pr /= sum;
  }
  return BehavioralToRealization(sf.space, view.strategy);
}

SneSearch InitialSne(const GameTree& tree, const SequenceForm& sf,
                     const SolveConfig& cfg) {
  return RunSne(tree, sf, {}, cfg);
}

SneSearch NewSne(const GameTree& tree, const SequenceForm& sf,
                 const std::vector<Vec>& known, const SolveConfig& cfg) {
  if (known.empty()) throw std::invalid_argument("NewSne needs at least one known SNE");
  return RunSne(tree, sf, known, cfg);
}

EssTestResult EssTest(const SequenceForm& sf, const Vec& x, double v_star,
                      const SolveConfig& cfg) {
  const auto t0 = Clock::now();
  const int d = sf.d();
  QuadProgram q;
  for (int j = 0; j < d; ++j) q.AddVariable("y" + std::to_string(j), 0.0, 1.0);
  q.Finalize();
  q.sense = ObjectiveSense::kMinimize;
  q.objective.Q = -0.5 * (sf.A + sf.A.transpose());
  q.objective.c = sf.A.transpose() * x;
  for (int r = 0; r < sf.rows(); ++r) {
    LinearConstraint lc;
    for (int j = 0; j < d; ++j) {
      if (sf.E(r, j) != 0.0) lc.coefs.push_back({j, sf.E(r, j)});
    }
    lc.sense = Sense::kEqual;
    lc.rhs = sf.e(r);
    q.linear.push_back(std::move(lc));
  }
  const Vec g = sf.A * x;
  LinearConstraint face;
  for (int j = 0; j < d; ++j) {
    if (g(j) != 0.0) face.coefs.push_back({j, g(j)});
  }
  face.sense = Sense::kLessEqual;
  face.rhs = v_star + cfg.feas_tol;
  q.linear.push_back(face);
  face.sense = Sense::kGreaterEqual;
  face.rhs = v_star - cfg.feas_tol;
  q.linear.push_back(face);

  QuadConstraint dist{QuadraticForm(d)};
  dist.form.Q = Mat::Identity(d, d);
  dist.form.c = -2.0 * x;
  dist.form.constant = x.squaredNorm();
  dist.sense = Sense::kGreaterEqual;
  // Accepted points may undershoot by feas_tol; keep them at distance delta.
  dist.rhs = cfg.delta * cfg.delta + cfg.feas_tol;
  q.quadratic.push_back(std::move(dist));

  const Solution sol = SolveGlobal(q, cfg.Solver(cfg.time_limit_s));
  EssTestResult out;
  out.status = sol.status;
  out.nodes = sol.nodes;
  if (sol.status == SolveStatus::kInfeasible) {
    out.infeasible = true;
    out.verdict = Verdict::kEss;
  } else if (sol.has_solution && sol.objective <= cfg.eps_p) {
    out.f_star = sol.objective;
    out.mutant = sol.x;
    out.verdict = Verdict::kNotEss;
  } else if (sol.lower_bound > cfg.eps_p) {
    out.f_star = sol.has_solution ? sol.objective : sol.lower_bound;
    if (sol.has_solution) out.mutant = sol.x;
    out.verdict = Verdict::kEss;
  } else {
    out.f_star = sol.has_solution ? sol.objective : sol.lower_bound;
    if (sol.has_solution) out.mutant = sol.x;
    out.verdict = Verdict::kUndecided;
  }
  out.wall_time_s = Seconds(t0);
  return out;
}

int EssReport::NumEss() const {
  return static_cast<int>(std::count_if(sne.begin(), sne.end(), [](const SneEntry& e) {
    return e.test.verdict == Verdict::kEss;
  }));
}

EssReport FindAllEss(const GameTree& tree, const SequenceForm& sf,
                     const SolveConfig& cfg) {
  cfg.Validate();
  if (!sf.symmetric) throw std::invalid_argument("sequence form is not symmetric");
  const auto t0 = Clock::now();
  EssReport report;
  auto remaining = [&] { return cfg.time_limit_s - Seconds(t0); };
  auto bounded = [&] {
    SolveConfig c = cfg;
    c.time_limit_s = remaining();
    return c;
  };

  std::vector<Vec> known;
  // Returns true when enumeration should stop after this entry.
  auto record = [&](const SneSearch& found) {
    SneEntry entry;
    entry.index = static_cast<int>(report.sne.size());
    entry.witness = *found.witness;
    entry.behavioral = RealizationToBehavioral(tree, sf, entry.witness.x).strategy;
    entry.sne_time_s = found.wall_time_s;
    entry.t_star = found.t_star;
    entry.test = EssTest(sf, entry.witness.x, entry.witness.v_star, bounded());
    known.push_back(entry.witness.x);
    const bool is_ess = entry.test.verdict == Verdict::kEss;
    report.sne.push_back(std::move(entry));
    if (cfg.termination == Termination::kFirstEss && is_ess) {
      report.termination_reason = "first_ess";
      return true;
    }
    return false;
  };

  SneSearch first = InitialSne(tree, sf, bounded());
  if (!first.witness) {
    report.termination_reason = first.status == SolveStatus::kTimeLimit
                                    ? "time_limit"
                                    : "solver_limit";
    report.total_time_s = Seconds(t0);
    return report;
  }
  bool stop = record(first);
  while (!stop) {
    if (static_cast<int>(known.size()) >= cfg.max_sne) {
      report.termination_reason = "max_sne";
      break;
    }
    if (remaining() <= 0.0) {
      report.termination_reason = "time_limit";
      break;
    }
    SneSearch next = NewSne(tree, sf, known, bounded());
    if (next.certified) {
      report.t_star_final = next.t_star;
      report.t_star_final_set = true;
      if (next.t_star < cfg.eps_s) {
        report.termination_reason = "separation";
        break;
      }
      stop = record(next);
      continue;
    }
    // Solver limit: keep a usable incumbent, then stop.
    if (next.witness && next.t_star >= cfg.eps_s) {
      double closest = std::numeric_limits<double>::infinity();
      for (const Vec& k : known) closest = std::min(closest, (next.raw_x - k).squaredNorm());
      if (closest >= cfg.eps_s) {
        record(next);
        report.flags.push_back("uncertified_separation");
      }
    }
    report.termination_reason =
        next.status == SolveStatus::kTimeLimit ? "time_limit" : "solver_limit";
    break;
  }

  for (size_t i = 0; i < known.size(); ++i) {
    for (size_t j = i + 1; j < known.size(); ++j) {
      if ((known[i] - known[j]).squaredNorm() < 10.0 * cfg.eps_s) {
        report.flags.push_back("possibly_incomplete");
        i = known.size();
        break;
      }
    }
  }
  report.total_time_s = Seconds(t0);
  return report;
}

}  // namespace esskit
