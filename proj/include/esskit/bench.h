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

// Sweep over random signal games: one solve per (S, A, seed), summarized per
// (S, A).

#ifndef ESSKIT_BENCH_H_
#define ESSKIT_BENCH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "esskit/ess.h"

namespace esskit {

struct BenchOptions {
  std::vector<int> signals;
  std::vector<int> actions;
  int instances = 25;
  uint64_t seed_base = 0;
  double instance_time_limit_s = 600.0;
  double noise = 1e-4;
  SolveConfig config;
  // Keep each instance's full report in BenchInstance::report.
  bool keep_reports = false;
};

struct BenchInstance {
  int S = 0;
  int A = 0;
  uint64_t seed = 0;
  // "ok", or the termination reason / error that excluded the instance.
  std::string status;
  double time_s = 0.0;
  int num_sne = 0;
  int num_ess = 0;
  std::optional<EssReport> report;
};

struct BenchSummary {
  int S = 0;
  int A = 0;
  int completed = 0;
  int failed = 0;
  double mean_time_s = 0.0;
  double median_time_s = 0.0;
  double mean_sne = 0.0;
  double mean_ess = 0.0;
  double frac_ge1_ess = 0.0;
};

// Instances run in (S, A, seed) order; seeds are seed_base + i.
std::vector<BenchInstance> RunBench(
    const BenchOptions& options,
    const std::function<void(const BenchInstance&)>& on_instance = {});

std::vector<BenchSummary> Summarize(const std::vector<BenchInstance>& runs);

inline constexpr char kBenchCsvHeader[] =
    "S,A,mean_time_s,median_time_s,mean_sne,mean_ess,frac_ge1_ess";

std::string BenchCsv(const std::vector<BenchSummary>& rows);
std::string InstancesCsv(const std::vector<BenchInstance>& runs);

}  // namespace esskit

#endif  // ESSKIT_BENCH_H_
