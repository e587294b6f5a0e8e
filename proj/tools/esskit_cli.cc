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

// esskit command-line tool.
//
//   esskit solve GAME [--manifest M] [--out REPORT] [solver flags]
//   esskit generate (--cancer | -S N -A M [--seed K]) --out GAME
//   esskit bench -S 2,3 -A 3 [--instances 25] [--seed-base 0] [--out CSV]
//   esskit verify --report REPORT --game GAME [--manifest M] [--samples N]
//
// solve exits 0 when at least one ESS was found, 2 when none, 1 on error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "esskit/bench.h"
#include "esskit/ess.h"
#include "esskit/game_io.h"
#include "esskit/generators.h"
#include "esskit/report.h"
#include "esskit/symmetry.h"
#include "esskit/verify.h"

namespace {

using esskit::Json;

struct SolveFlags {
  esskit::SolveConfig cfg;
  std::string terminate = "separation-only";
  double time_limit = 0.0;  // 0: none
  uint64_t seed = 0;
};

void AddSolveFlags(CLI::App* cmd, SolveFlags* f) {
  cmd->add_option("--eps-s", f->cfg.eps_s, "SNE separation threshold")->capture_default_str();
  cmd->add_option("--eps-p", f->cfg.eps_p, "ESS positivity threshold")->capture_default_str();
  cmd->add_option("--delta", f->cfg.delta, "minimum mutant distance")->capture_default_str();
  cmd->add_option("--eps-clip", f->cfg.eps_clip, "clipping threshold")->capture_default_str();
  cmd->add_option("--feas-tol", f->cfg.feas_tol, "feasibility tolerance")->capture_default_str();
  cmd->add_option("--terminate", f->terminate,
                  "separation-only | first-ess | max-sne | time-limit")
      ->capture_default_str();
  cmd->add_option("--max-sne", f->cfg.max_sne, "SNE cap for --terminate max-sne")
      ->capture_default_str();
  cmd->add_option("--time-limit", f->time_limit, "wall-clock limit in seconds (0: none)")
      ->capture_default_str();
  cmd->add_option("--seed", f->seed, "seed recorded in the manifest")->capture_default_str();
}

esskit::SolveConfig Finish(const SolveFlags& f) {
  esskit::SolveConfig cfg = f.cfg;
  auto t = esskit::ParseTermination(f.terminate);
  if (!t) throw std::invalid_argument("unknown --terminate value '" + f.terminate + "'");
  cfg.termination = *t;
  if (f.time_limit > 0.0) cfg.time_limit_s = f.time_limit;
  cfg.Validate();
  return cfg;
}

struct LoadedGame {
  esskit::GameTree tree;
  esskit::NoiseTable noise;
  bool has_noise = false;
  std::string digest;
};

LoadedGame Load(const std::string& path, const std::string& manifest) {
  LoadedGame g;
  g.tree = esskit::ReadGameFile(path);
  if (!manifest.empty()) {
    g.noise = esskit::ReadNoiseManifest(manifest);
    g.has_noise = true;
  }
  g.digest = esskit::GameDigest(g.tree, g.has_noise ? &g.noise : nullptr);
  return g;
}

esskit::SequenceForm Prepare(const LoadedGame& g) {
  if (auto v = esskit::ValidatePerfectRecall(g.tree)) {
    throw esskit::GameError("game violates perfect recall: " + v->Describe(g.tree));
  }
  const esskit::SymmetryCheck sym = esskit::CheckSymmetry(g.tree);
  if (!sym.map) throw esskit::GameError("game is not symmetric: " + sym.report.reason);
  return esskit::BuildSequenceForm(g.tree, *sym.map, g.has_noise ? &g.noise : nullptr);
}

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string ManifestPath(const std::string& game_path) {
  const auto slash = game_path.find_last_of('/');
  const auto dot = game_path.find_last_of('.');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  return (has_ext ? game_path.substr(0, dot) : game_path) + ".manifest.json";
}

std::vector<int> ParseList(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size() || v < 2) {
      throw std::invalid_argument("grid values must be integers >= 2, got '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

int CmdSolve(const std::string& game_path, const std::string& manifest,
             const std::string& out_path, const SolveFlags& flags) {
  const esskit::SolveConfig cfg = Finish(flags);
  const LoadedGame g = Load(game_path, manifest);
  const esskit::SequenceForm sf = Prepare(g);
  const esskit::EssReport report = esskit::FindAllEss(g.tree, sf, cfg);
  esskit::RunContext ctx;
  ctx.command = "solve";
  ctx.game_path = game_path;
  ctx.game_digest = g.digest;
  ctx.seed = flags.seed;
  const Json j = esskit::ReportToJson(g.tree, sf, report, cfg, ctx);
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    WriteText(out_path, text);
  }
  std::fprintf(stderr, "%zu SNE, %d ESS (%s, %.3f s)\n", report.sne.size(),
               report.NumEss(), report.termination_reason.c_str(), report.total_time_s);
  return report.NumEss() > 0 ? 0 : 2;
}

int CmdGenerate(bool cancer, int S, int A, uint64_t seed, double noise,
                const std::string& out_path) {
  if (cancer) {
    esskit::WriteGameFile(esskit::CancerGame(), out_path);
    std::fprintf(stderr, "wrote %s\n", out_path.c_str());
    return 0;
  }
  const esskit::GeneratedGame g = esskit::RandomSignalGame(S, A, seed, noise);
  esskit::WriteGameFile(g.tree, out_path);
  const std::string digest = esskit::GameDigest(g.tree, &g.noise);
  const std::string mpath = ManifestPath(out_path);
  WriteText(mpath, esskit::GeneratorManifest(g, digest).dump(2) + "\n");
  std::fprintf(stderr, "wrote %s and %s\n", out_path.c_str(), mpath.c_str());
  return 0;
}

int CmdBench(const std::string& s_list, const std::string& a_list, int instances,
             uint64_t seed_base, double instance_limit, const std::string& out_path,
             const std::string& instances_path, const SolveFlags& flags) {
  esskit::BenchOptions opt;
  opt.signals = ParseList(s_list);
  opt.actions = ParseList(a_list);
  opt.instances = instances;
  opt.seed_base = seed_base;
  opt.instance_time_limit_s = instance_limit;
  opt.config = Finish(flags);
  const auto runs = esskit::RunBench(opt, [](const esskit::BenchInstance& r) {
    std::fprintf(stderr, "S=%d A=%d seed=%llu %s %.3f s, %d SNE, %d ESS\n", r.S, r.A,
                 static_cast<unsigned long long>(r.seed), r.status.c_str(), r.time_s,
                 r.num_sne, r.num_ess);
  });
  const auto summary = esskit::Summarize(runs);
  const std::string csv = esskit::BenchCsv(summary);
  if (out_path.empty()) {
    std::cout << csv;
  } else {
    WriteText(out_path, csv);
  }
  if (!instances_path.empty()) WriteText(instances_path, esskit::InstancesCsv(runs));
  int failed = 0;
  for (const auto& s : summary) failed += s.failed;
  if (failed > 0) std::fprintf(stderr, "%d instance(s) excluded from the means\n", failed);
  return 0;
}

int CmdVerify(const std::string& report_path, const std::string& game_path,
              const std::string& manifest, int samples, uint64_t seed) {
  std::ifstream in(report_path);
  if (!in) throw std::runtime_error("cannot open report '" + report_path + "'");
  Json report;
  in >> report;
  const LoadedGame g = Load(game_path, manifest);
  const std::string claimed = report.at("manifest").at("game_digest").get<std::string>();
  if (claimed != g.digest) {
    std::fprintf(stderr, "digest mismatch: report %s, game %s\n", claimed.c_str(),
                 g.digest.c_str());
    return 1;
  }
  const esskit::SequenceForm sf = Prepare(g);
  const esskit::SolveConfig cfg = esskit::ConfigFromJson(report.at("manifest").at("config"));
  int failures = 0;
  for (const Json& s : report.at("sne")) {
    const int idx = s.at("index").get<int>();
    const auto xs = s.at("realization").get<std::vector<double>>();
    if (static_cast<int>(xs.size()) != sf.d()) {
      std::fprintf(stderr, "SNE %d: realization has wrong length\n", idx);
      ++failures;
      continue;
    }
    const esskit::Vec x = Eigen::Map<const esskit::Vec>(xs.data(), sf.d());
    const esskit::SneResidual res = esskit::CheckSneResidual(sf, x);
    if (!res.Ok(1e-6, 1e-5)) {
      std::fprintf(stderr, "SNE %d: residual check failed: %s\n", idx, res.Describe().c_str());
      ++failures;
    }
    const std::string verdict = s.at("verdict").get<std::string>();
    if (verdict == "ESS") {
      esskit::VerifyOptions vo;
      vo.n_samples = samples;
      vo.seed = seed + static_cast<uint64_t>(idx);
      vo.eps_p = cfg.eps_p;
      vo.delta = cfg.delta;
      vo.feas_tol = cfg.feas_tol;
      const esskit::VerifyResult vr = esskit::VerifyEss(sf, x, vo);
      if (!vr.pass) {
        std::ostringstream ys;
        ys << vr.counterexample->y.transpose();
        std::fprintf(stderr,
                     "SNE %d: claimed ESS but mutant invades (condition %d, gain %.3g, "
                     "F %.3g): y = [%s]\n",
                     idx, vr.counterexample->condition, vr.counterexample->reply_gain,
                     vr.counterexample->f, ys.str().c_str());
        ++failures;
      }
    } else if (verdict == "NotESS") {
      if (!s.contains("mutant")) {
        std::fprintf(stderr, "SNE %d: NotESS without a mutant certificate\n", idx);
        ++failures;
        continue;
      }
      const auto ys = s.at("mutant").get<std::vector<double>>();
      const esskit::Vec y = Eigen::Map<const esskit::Vec>(ys.data(), ys.size());
      const double v = s.at("v_star").get<double>();
      const auto cert = esskit::CheckMutantCertificate(sf, x, v, y, cfg.delta, cfg.eps_p);
      if (!cert.Ok()) {
        std::fprintf(stderr, "SNE %d: mutant certificate invalid: %s\n", idx,
                     cert.Describe().c_str());
        ++failures;
      }
    }
  }
  if (failures > 0) {
    std::fprintf(stderr, "verify: %d check(s) failed\n", failures);
    return 1;
  }
  std::fprintf(stderr, "verify: all checks passed\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolutionarily stable strategies of symmetric extensive-form games"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ESSKIT_VERSION);

  SolveFlags solve_flags;
  std::string game_path, manifest, out_path;
  CLI::App* solve = app.add_subcommand("solve", "enumerate SNE and test each for ESS");
  solve->add_option("game", game_path, "game file")->required();
  solve->add_option("--manifest", manifest, "generator manifest with the noise table");
  solve->add_option("-o,--out", out_path, "report path (default: stdout)");
  AddSolveFlags(solve, &solve_flags);

  bool cancer = false;
  int gen_s = 0, gen_a = 0;
  uint64_t gen_seed = 0;
  double gen_noise = 1e-4;
  std::string gen_out;
  CLI::App* generate = app.add_subcommand("generate", "write a benchmark game");
  auto* cancer_opt = generate->add_flag("--cancer", cancer, "the cancer signaling game");
  auto* s_opt = generate->add_option("-S,--signals", gen_s, "signals per player")
                    ->check(CLI::Range(2, 64));
  auto* a_opt = generate->add_option("-A,--actions", gen_a, "actions per player")
                    ->check(CLI::Range(2, 64));
  generate->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  generate->add_option("--noise", gen_noise, "sequence-form noise amplitude")
      ->capture_default_str();
  generate->add_option("-o,--out", gen_out, "output game file")->required();
  cancer_opt->excludes(s_opt)->excludes(a_opt);

  SolveFlags bench_flags;
  std::string bench_s = "2", bench_a = "3", bench_out, bench_instances_out;
  int bench_n = 25;
  uint64_t bench_seed = 0;
  double bench_limit = 600.0;
  CLI::App* bench = app.add_subcommand("bench", "sweep random signal games");
  bench->add_option("-S,--signals", bench_s, "comma-separated signal counts")
      ->capture_default_str();
  bench->add_option("-A,--actions", bench_a, "comma-separated action counts")
      ->capture_default_str();
  bench->add_option("--instances", bench_n, "instances per (S, A)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  bench->add_option("--seed-base", bench_seed, "seed of the first instance")
      ->capture_default_str();
  bench->add_option("--instance-time-limit", bench_limit, "seconds per instance")
      ->capture_default_str();
  bench->add_option("-o,--out", bench_out, "summary CSV (default: stdout)");
  bench->add_option("--instances-out", bench_instances_out, "per-instance CSV");
  AddSolveFlags(bench, &bench_flags);

  std::string verify_report, verify_game, verify_manifest;
  int verify_samples = 10000;
  uint64_t verify_seed = 0;
  CLI::App* verify = app.add_subcommand("verify", "re-check a solve report");
  verify->add_option("--report", verify_report, "report JSON")->required();
  verify->add_option("--game", verify_game, "game file")->required();
  verify->add_option("--manifest", verify_manifest, "generator manifest with the noise table");
  verify->add_option("--samples", verify_samples, "random mutants per ESS")
      ->capture_default_str();
  verify->add_option("--seed", verify_seed, "sampling seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (solve->parsed()) return CmdSolve(game_path, manifest, out_path, solve_flags);
    if (generate->parsed()) {
      if (!cancer && (gen_s == 0 || gen_a == 0)) {
        std::fprintf(stderr, "generate: give --cancer or both -S and -A\n");
        return 1;
      }
      return CmdGenerate(cancer, gen_s, gen_a, gen_seed, gen_noise, gen_out);
    }
    if (bench->parsed()) {
      return CmdBench(bench_s, bench_a, bench_n, bench_seed, bench_limit, bench_out,
                      bench_instances_out, bench_flags);
    }
    if (verify->parsed()) {
      return CmdVerify(verify_report, verify_game, verify_manifest, verify_samples,
                       verify_seed);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
