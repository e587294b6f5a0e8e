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

// Reader and writer for the line-oriented game file format:
//
//   game <name>
//   players 2
//   node <id> chance { <childId>:<prob> ... }
//   node <id> player <1|2> infoset <isId> { <action>:<childId> ... }
//   node <id> terminal <u1> <u2>
//   root <id>
//
// Ids are alphanumeric tokens (underscores allowed). Probabilities and
// payoffs are decimal literals or fractions "p/q". Blank lines and lines
// starting with '#' are ignored. Infoset ids live in a per-player namespace,
// so "fav" of player 1 and "fav" of player 2 are different infosets.

#ifndef ESSKIT_GAME_IO_H_
#define ESSKIT_GAME_IO_H_

#include <string>
#include <string_view>

#include "esskit/game_tree.h"

namespace esskit {

class ParseError : public GameError {
 public:
  ParseError(int line, int column, const std::string& what)
      : GameError("line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Throws ParseError for syntax problems and GameError for invariant
// violations of the resulting tree.
GameTree ParseGame(std::string_view text);

// Deterministic: nodes in index order, shortest round-trip number format.
std::string SerializeGame(const GameTree& tree);

GameTree ReadGameFile(const std::string& path);
void WriteGameFile(const GameTree& tree, const std::string& path);

// Shortest decimal form that parses back to the same double.
std::string FormatDouble(double v);

}  // namespace esskit

#endif  // ESSKIT_GAME_IO_H_
