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

#include "esskit/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <sstream>

#include "esskit/generators.h"
#include "esskit/symmetry.h"

namespace esskit {
namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<BenchInstance> RunBench(
    const BenchOptions& options,
    const std::function<void(const BenchInstance&)>& on_instance) {
  std::vector<BenchInstance> out;
  for (int S : options.signals) {
    for (int A : options.actions) {
      for (int i = 0; i < options.instances; ++i) {
        BenchInstance inst;
        inst.S = S;
        inst.A = A;
        inst.seed = options.seed_base + static_cast<uint64_t>(i);
        const auto t0 = std::chrono::steady_clock::now();
        try {
          const GeneratedGame g = RandomSignalGame(S, A, inst.seed, options.noise);
          const SymmetryCheck sym = CheckSymmetry(g.tree);
          if (!sym.map) throw std::runtime_error("generated game is not symmetric");
          const SequenceForm sf = BuildSequenceForm(g.tree, *sym.map, &g.noise);
          SolveConfig cfg = options.config;
          cfg.time_limit_s = std::min(cfg.time_limit_s, options.instance_time_limit_s);
          const EssReport report = FindAllEss(g.tree, sf, cfg);
          inst.num_sne = static_cast<int>(report.sne.size());
          inst.num_ess = report.NumEss();
          const bool complete = report.termination_reason == "separation" ||
                                report.termination_reason == "first_ess" ||
                                report.termination_reason == "max_sne";
          inst.status = complete ? "ok" : report.termination_reason;
          if (options.keep_reports) inst.report = report;
        } catch (const std::exception& e) {
          inst.status = std::string("error: ") + e.what();
        }
        inst.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (on_instance) on_instance(inst);
        out.push_back(std::move(inst));
      }
    }
  }
  return out;
}

std::vector<BenchSummary> Summarize(const std::vector<BenchInstance>& runs) {
  std::vector<BenchSummary> rows;
  std::map<std::pair<int, int>, size_t> index;
  std::vector<std::vector<const BenchInstance*>> groups;
  for (const BenchInstance& r : runs) {
    auto [it, inserted] = index.emplace(std::make_pair(r.S, r.A), rows.size());
    if (inserted) {
      BenchSummary s;
      s.S = r.S;
      s.A = r.A;
      rows.push_back(s);
      groups.emplace_back();
    }
    groups[it->second].push_back(&r);
  }
  for (size_t g = 0; g < rows.size(); ++g) {
    BenchSummary& s = rows[g];
    std::vector<double> times;
    for (const BenchInstance* r : groups[g]) {
      if (r->status != "ok") {
        ++s.failed;
        continue;
      }
      ++s.completed;
      times.push_back(r->time_s);
      s.mean_sne += r->num_sne;
      s.mean_ess += r->num_ess;
      if (r->num_ess >= 1) s.frac_ge1_ess += 1.0;
    }
    if (s.completed == 0) continue;
    const double n = s.completed;
    for (double t : times) s.mean_time_s += t;
    s.mean_time_s /= n;
    s.mean_sne /= n;
    s.mean_ess /= n;
    s.frac_ge1_ess /= n;
    std::sort(times.begin(), times.end());
    const size_t m = times.size();
    s.median_time_s = m % 2 == 1 ? times[m / 2] : 0.5 * (times[m / 2 - 1] + times[m / 2]);
  }
  return rows;
}

std::string BenchCsv(const std::vector<BenchSummary>& rows) {
  std::ostringstream os;
  os << kBenchCsvHeader << "\n";
  for (const BenchSummary& s : rows) {
    os << s.S << "," << s.A << "," << Fixed(s.mean_time_s, 3) << ","
       << Fixed(s.median_time_s, 3) << "," << Fixed(s.mean_sne, 2) << ","
       << Fixed(s.mean_ess, 2) << "," << Fixed(s.frac_ge1_ess, 2) << "\n";
  }
  return os.str();
}

std::string InstancesCsv(const std::vector<BenchInstance>& runs) {
  std::ostringstream os;
  os << "S,A,seed,status,time_s,num_sne,num_ess\n";
  for (const BenchInstance& r : runs) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    os << r.S << "," << r.A << "," << r.seed << "," << status << ","
       << Fixed(r.time_s, 3) << "," << r.num_sne << "," << r.num_ess << "\n";
  }
  return os.str();
}

}  // namespace esskit
