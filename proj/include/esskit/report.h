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

// JSON serialization of solve reports and generator manifests, and the
// SHA-256 game digest that ties a report to its input.

#ifndef ESSKIT_REPORT_H_
#define ESSKIT_REPORT_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

#include "esskit/ess.h"
#include "esskit/generators.h"
#include "esskit/sequence_form.h"

namespace esskit {

using Json = nlohmann::ordered_json;

std::string Sha256Hex(std::string_view data);

// Digest of the serialized game followed by the noise table, one
// "row col value" line per entry.
std::string GameDigest(const GameTree& tree, const NoiseTable* noise);

Json ConfigToJson(const SolveConfig& cfg);
// Missing keys keep their defaults. Throws std::invalid_argument on an
// unknown termination mode.
SolveConfig ConfigFromJson(const Json& j);

Json NoiseToJson(const NoiseTable& noise);
NoiseTable NoiseFromJson(const Json& j);

struct RunContext {
  std::string command = "solve";
  std::string game_path;
  std::string game_digest;
  uint64_t seed = 0;
};

Json ReportToJson(const GameTree& tree, const SequenceForm& sf,
                  const EssReport& report, const SolveConfig& cfg,
                  const RunContext& ctx);

// Copy without wall-clock fields, for comparing runs.
Json StripTiming(const Json& report);

// Sidecar written next to a generated game.
Json GeneratorManifest(const GeneratedGame& game, const std::string& game_digest);

// Reads the noise table from a generator manifest file. Throws
// std::runtime_error on I/O or format problems.
NoiseTable ReadNoiseManifest(const std::string& path);

double RoundSeconds(double s);

}  // namespace esskit

#endif  // ESSKIT_REPORT_H_
