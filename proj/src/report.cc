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

#include "esskit/report.h"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "esskit/game_io.h"

namespace esskit {
namespace {

Json VecToJson(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json MatToJson(const Eigen::MatrixXd& m) {
  Json a = Json::array();
  for (int i = 0; i < m.rows(); ++i) a.push_back(VecToJson(m.row(i).transpose()));
  return a;
}

}  // namespace

std::string Sha256Hex(std::string_view data) {
  unsigned char out[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) os << std::setw(2) << static_cast<int>(out[i]);
  return os.str();
}

std::string GameDigest(const GameTree& tree, const NoiseTable* noise) {
  std::string data = SerializeGame(tree);
  if (noise != nullptr) {
    for (const NoiseEntry& n : *noise) {
      data += n.row + " " + n.col + " " + FormatDouble(n.value) + "\n";
    }
  }
  return Sha256Hex(data);
}

double RoundSeconds(double s) { return std::round(s * 1000.0) / 1000.0; }

Json ConfigToJson(const SolveConfig& cfg) {
  Json j;
  j["eps_s"] = cfg.eps_s;
  j["eps_p"] = cfg.eps_p;
  j["delta"] = cfg.delta;
  j["eps_clip"] = cfg.eps_clip;
  j["feas_tol"] = cfg.feas_tol;
  j["termination"] = ToString(cfg.termination);
  if (std::isfinite(cfg.time_limit_s)) {
    j["time_limit_s"] = cfg.time_limit_s;
  } else {
    j["time_limit_s"] = nullptr;
  }
  j["max_sne"] = cfg.max_sne;
  j["max_nodes"] = cfg.max_nodes;
  return j;
}

SolveConfig ConfigFromJson(const Json& j) {
  SolveConfig cfg;
  cfg.eps_s = j.value("eps_s", cfg.eps_s);
  cfg.eps_p = j.value("eps_p", cfg.eps_p);
  cfg.delta = j.value("delta", cfg.delta);
  cfg.eps_clip = j.value("eps_clip", cfg.eps_clip);
  cfg.feas_tol = j.value("feas_tol", cfg.feas_tol);
  if (j.contains("termination")) {
    auto t = ParseTermination(j["termination"].get<std::string>());
    if (!t) throw std::invalid_argument("unknown termination mode");
    cfg.termination = *t;
  }
  if (j.contains("time_limit_s") && j["time_limit_s"].is_number()) {
    cfg.time_limit_s = j["time_limit_s"].get<double>();
  }
  cfg.max_sne = j.value("max_sne", cfg.max_sne);
  cfg.max_nodes = j.value("max_nodes", cfg.max_nodes);
  return cfg;
}

Json NoiseToJson(const NoiseTable& noise) {
  Json a = Json::array();
  for (const NoiseEntry& n : noise) a.push_back({{"row", n.row}, {"col", n.col}, {"value", n.value}});
  return a;
}

NoiseTable NoiseFromJson(const Json& j) {
  NoiseTable out;
  for (const Json& e : j) {
    out.push_back({e.at("row").get<std::string>(), e.at("col").get<std::string>(),
                   e.at("value").get<double>()});
  }
  return out;
}

Json ReportToJson(const GameTree& tree, const SequenceForm& sf,
                  const EssReport& report, const SolveConfig& cfg,
                  const RunContext& ctx) {
  Json out;
  Json manifest;
  manifest["command"] = ctx.command;
  manifest["tool_version"] = ESSKIT_VERSION;
  manifest["game_path"] = ctx.game_path;
  manifest["game_digest"] = ctx.game_digest;
  manifest["config"] = ConfigToJson(cfg);
  manifest["seed"] = ctx.seed;
  double sne_total = 0.0;
  double ess_total = 0.0;
  for (const SneEntry& e : report.sne) {
    sne_total += e.sne_time_s;
    ess_total += e.test.wall_time_s;
  }
  manifest["times"] = {{"total_s", RoundSeconds(report.total_time_s)},
                       {"sne_search_s", RoundSeconds(sne_total)},
                       {"ess_test_s", RoundSeconds(ess_total)}};
  out["manifest"] = manifest;

  Json game;
  game["name"] = tree.name();
  game["digest"] = ctx.game_digest;
  game["d1"] = sf.d();
  game["c1"] = sf.space.num_infosets();
  Json labels = Json::array();
  for (int j = 0; j < sf.d(); ++j) labels.push_back(sf.space.Label(tree, j));
  game["sequences"] = labels;
  out["game"] = game;

  Json sne = Json::array();
  for (const SneEntry& e : report.sne) {
    Json s;
    s["index"] = e.index;
    s["realization"] = VecToJson(e.witness.x);
    Json beh = Json::object();
    for (int is = 0; is < static_cast<int>(e.behavioral.probs.size()); ++is) {
      const Infoset& info = tree.infoset(1, is);
      Json dist = Json::object();
      for (size_t a = 0; a < info.actions.size(); ++a) {
        dist[info.actions[a]] = e.behavioral.probs[is][a];
      }
      beh[info.name] = dist;
    }
    s["behavioral"] = beh;
    s["v_star"] = e.witness.v_star;
    s["verdict"] = ToString(e.test.verdict);
    if (e.test.infeasible) {
      s["F_star"] = "infeasible";
    } else {
      s["F_star"] = e.test.f_star;
    }
    if (e.test.mutant && e.test.verdict == Verdict::kNotEss) {
      s["mutant"] = VecToJson(*e.test.mutant);
    }
    s["ess_solver_status"] = ToString(e.test.status);
    s["separation"] = e.t_star;
    s["p"] = VecToJson(e.witness.p);
    s["s"] = VecToJson(e.witness.s);
    s["times"] = {{"sne_s", RoundSeconds(e.sne_time_s)},
                  {"ess_test_s", RoundSeconds(e.test.wall_time_s)}};
    sne.push_back(std::move(s));
  }
  out["sne"] = sne;
  if (report.t_star_final_set) {
    out["t_star_final"] = report.t_star_final;
  } else {
    out["t_star_final"] = nullptr;
  }
  out["termination_reason"] = report.termination_reason;
  out["flags"] = report.flags;
  out["sne_count"] = report.sne.size();
  out["ess_count"] = report.NumEss();
  return out;
}

Json StripTiming(const Json& report) {
  Json out = report;
  if (out.contains("manifest")) out["manifest"].erase("times");
  if (out.contains("sne")) {
    for (Json& s : out["sne"]) s.erase("times");
  }
  return out;
}

Json GeneratorManifest(const GeneratedGame& game, const std::string& game_digest) {
  const SignalGameSpec& spec = game.spec;
  Json m;
  m["tool_version"] = ESSKIT_VERSION;
  m["generator"] = "random_signal_game";
  m["seed"] = game.seed;
  m["rng"] = "mt19937_64, u = (r >> 11) * 2^-53";
  Json sp;
  sp["K"] = 2;
  sp["S"] = spec.num_signals;
  sp["A"] = spec.num_actions;
  sp["prior"] = {spec.prior[0], spec.prior[1]};
  sp["channel"] = spec.channel.rows;
  sp["channel_rule"] = spec.num_signals == 2 ? "fixed (0.8, 0.2)"
                                             : "normalized 0.8^s ramp, reversed for High";
  sp["payoff_low"] = MatToJson(spec.payoff[0]);
  sp["payoff_high"] = MatToJson(spec.payoff[1]);
  sp["noise_amplitude"] = spec.noise;
  sp["state_names"] = spec.state_names;
  sp["signal_names"] = spec.signal_names;
  sp["action_names"] = spec.action_names;
  m["spec"] = sp;
  m["noise"] = NoiseToJson(game.noise);
  std::string noise_text;
  for (const NoiseEntry& n : game.noise) {
    noise_text += n.row + " " + n.col + " " + FormatDouble(n.value) + "\n";
  }
  m["noise_digest"] = Sha256Hex(noise_text);
  m["game_digest"] = game_digest;
  return m;
}

NoiseTable ReadNoiseManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("manifest '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.contains("noise")) throw std::runtime_error("manifest has no noise table");
  return NoiseFromJson(j["noise"]);
}

}  // namespace esskit
