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

#include "esskit/verify.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "esskit/ess.h"
#include "esskit/generators.h"
#include "esskit/lp.h"

namespace esskit {
namespace {

// Plan for a behavioral strategy given as one distribution per infoset.
Vec PlanFrom(const SequenceSpace& space, std::vector<std::vector<double>> probs) {
  BehavioralStrategy sigma;
  sigma.player = space.player;
  sigma.probs = std::move(probs);
  return BehavioralToRealization(space, sigma);
}

std::vector<double> Dirichlet(PortableRng* rng, int k) {
  std::vector<double> w(k);
  double sum = 0.0;
  for (double& v : w) {
    double u = rng->Uniform01();
    if (u <= 0.0) u = 0x1.0p-53;
    v = -std::log(u);
    sum += v;
  }
  for (double& v : w) v /= sum;
  return w;
}

class Checker {
 public:
  Checker(const SequenceForm& sf, const Vec& x, const VerifyOptions& opt)
      : sf_(sf), x_(x), opt_(opt), ax_(sf.A * x), v_(x.dot(ax_)) {}

  // Returns true when y is a counterexample.
  bool Check(const Vec& y, VerifyResult* out) {
    if ((y - x_).squaredNorm() < opt_.delta * opt_.delta - 1e-12) return false;
    ++out->mutants_checked;
    const double gain = y.dot(ax_) - v_;
    const double f = x_.dot(sf_.A * y) - y.dot(sf_.A * y);
    int condition = 0;
    if (gain > opt_.eps_p) {
      condition = 1;
    } else if (std::abs(gain) <= opt_.feas_tol && f <= opt_.eps_p) {
      condition = 2;
    }
    if (condition == 0) return false;
    out->pass = false;
    out->counterexample = Counterexample{y, condition, gain, f};
    return true;
  }

  double value() const { return v_; }
  const Vec& ax() const { return ax_; }

 private:
  const SequenceForm& sf_;
  const Vec& x_;
  const VerifyOptions& opt_;
  Vec ax_;
  double v_;
};

}  // namespace

std::string SneResidual::Describe() const {
  std::ostringstream os;
  os << "flow_error=" << flow_error << " min_slack=" << min_slack
     << " complementarity=" << complementarity << " br_gap=" << br_gap;
  return os.str();
}

std::string MutantCertificate::Describe() const {
  std::ostringstream os;
  os << "feasible=" << feasible << " on_face=" << on_face
     << " far_enough=" << far_enough << " invades=" << invades;
  return os.str();
}

double BestResponseValue(const SequenceForm& sf, const Vec& x) {
  const int d = sf.d();
  LinearProgram lp(d);
  lp.hi.setOnes();
  lp.cost = sf.A * x;
  for (int r = 0; r < sf.rows(); ++r) {
    std::vector<std::pair<int, double>> coefs;
    for (int j = 0; j < d; ++j) {
      if (sf.E(r, j) != 0.0) coefs.push_back({j, sf.E(r, j)});
    }
    lp.AddRow(std::move(coefs), sf.e(r), sf.e(r));
  }
  const LpResult r = MaximizeLp(lp);
  if (r.status != LpStatus::kOptimal) {
    return std::numeric_limits<double>::infinity();
  }
  return r.objective;
}

SneResidual CheckSneResidual(const SequenceForm& sf, const Vec& x) {
  SneResidual res;
  res.flow_error = (sf.E * x - sf.e).lpNorm<Eigen::Infinity>();
  const SneWitness w = WitnessFor(sf, x);
  res.min_slack = std::min(0.0, w.s.minCoeff());
  for (int i = 0; i < sf.d(); ++i) {
    res.complementarity = std::max(res.complementarity, std::min(x(i), w.s(i)));
  }
  res.br_gap = BestResponseValue(sf, x) - x.dot(sf.A * x);
  return res;
}

MutantCertificate CheckMutantCertificate(const SequenceForm& sf, const Vec& x,
                                         double v_star, const Vec& y,
                                         double delta, double eps_p) {
  MutantCertificate c;
  if (y.size() != sf.d()) return c;
  c.feasible = (sf.E * y - sf.e).lpNorm<Eigen::Infinity>() <= 1e-6 &&
               y.minCoeff() >= -1e-6;
  c.on_face = std::abs(y.dot(sf.A * x) - v_star) <= 1e-5;
  c.far_enough = (y - x).squaredNorm() >= delta * delta - 1e-9;
  c.invades = x.dot(sf.A * y) - y.dot(sf.A * y) <= eps_p;
  return c;
}

VerifyResult VerifyEss(const SequenceForm& sf, const Vec& x,
                       const VerifyOptions& opt) {
  VerifyResult out;
  const SequenceSpace& space = sf.space;
  const int c = space.num_infosets();
  Checker check(sf, x, opt);
  PortableRng rng(opt.seed);

  std::vector<int> sizes(c);
  int64_t pure_count = 1;
  for (int is = 0; is < c; ++is) {
    sizes[is] = static_cast<int>(space.action_seqs[is].size());
    pure_count = std::min<int64_t>(pure_count * sizes[is], opt.max_pure + 1);
  }

  // Pure plans, collecting the best replies to x.
  std::vector<Vec> best_replies;
  if (pure_count <= opt.max_pure) {
    std::vector<int> choice(c, 0);
    while (true) {
      std::vector<std::vector<double>> probs(c);
      for (int is = 0; is < c; ++is) {
        probs[is].assign(sizes[is], 0.0);
        probs[is][choice[is]] = 1.0;
      }
      const Vec y = PlanFrom(space, std::move(probs));
      if (check.Check(y, &out)) return out;
      if (std::abs(y.dot(check.ax()) - check.value()) <= opt.feas_tol) {
        best_replies.push_back(y);
      }
      int k = 0;
      while (k < c && ++choice[k] == sizes[k]) choice[k++] = 0;
      if (k == c) break;
    }
  }

  // Mixtures of x with best replies stay on the face.
  for (const Vec& b : best_replies) {
    const double dist = (b - x).norm();
    if (dist < opt.delta) continue;
    for (double lambda : {1.0, 0.5, 0.25, 0.1, 1.01 * opt.delta / dist}) {
      if (lambda > 1.0) continue;
      if (check.Check((1.0 - lambda) * x + lambda * b, &out)) return out;
    }
  }

  for (int n = 0; n < opt.n_samples; ++n) {
    Vec y;
    if (!best_replies.empty() && n % 4 == 3) {
      const std::vector<double> w = Dirichlet(&rng, static_cast<int>(best_replies.size()));
      Vec mix = Vec::Zero(sf.d());
      for (size_t k = 0; k < best_replies.size(); ++k) mix += w[k] * best_replies[k];
      const double lambda = rng.Uniform01();
      y = (1.0 - lambda) * x + lambda * mix;
    } else {
      std::vector<std::vector<double>> probs(c);
      for (int is = 0; is < c; ++is) probs[is] = Dirichlet(&rng, sizes[is]);
      y = PlanFrom(space, std::move(probs));
    }
    if (check.Check(y, &out)) return out;
  }
  return out;
}

}  // namespace esskit
