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

#include "esskit/game_io.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace esskit {
namespace {

struct Token {
  std::string text;
  int column;  // 1-based
};

std::vector<Token> Tokenize(std::string_view line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '{' || c == '}') {
      out.push_back({std::string(1, c), static_cast<int>(i) + 1});
      ++i;
    } else {
      const size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
             line[i] != '\r' && line[i] != '{' && line[i] != '}') {
        ++i;
      }
      out.push_back({std::string(line.substr(start, i - start)),
                     static_cast<int>(start) + 1});
    }
  }
  return out;
}

bool IsIdentifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

bool ParseNumber(std::string_view s, double* out) {
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end && std::isfinite(*out);
}

bool ParseRational(std::string_view s, double* out) {
  const size_t slash = s.find('/');
  if (slash == std::string_view::npos) return ParseNumber(s, out);
  double num = 0.0, den = 0.0;
  if (!ParseNumber(s.substr(0, slash), &num) ||
      !ParseNumber(s.substr(slash + 1), &den) || den == 0.0) {
    return false;
  }
  *out = num / den;
  return true;
}

struct PendingNode {
  Node node;
  std::vector<std::string> child_names;
  std::vector<int> child_columns;
  int line = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GameTree Run() {
    std::istringstream in{std::string(text_)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      const std::vector<Token> toks = Tokenize(raw);
      if (toks.empty() || toks[0].text[0] == '#') continue;
      ParseLine(line_no, toks);
    }
    if (name_.empty()) throw ParseError(line_no, 1, "missing 'game' line");
    if (!saw_players_) throw ParseError(line_no, 1, "missing 'players' line");
    if (root_ < 0) throw ParseError(line_no, 1, "missing 'root' line");

    std::vector<Node> nodes;
    nodes.reserve(pending_.size());
    for (PendingNode& pn : pending_) {
      for (size_t k = 0; k < pn.child_names.size(); ++k) {
        auto it = index_.find(pn.child_names[k]);
        if (it == index_.end()) {
          throw ParseError(pn.line, pn.child_columns[k],
                           "dangling child reference '" + pn.child_names[k] +
                               "'");
        }
        pn.node.children.push_back(it->second);
      }
      nodes.push_back(std::move(pn.node));
    }
    return GameTree::Build(name_, std::move(nodes), root_,
                           std::move(infosets_[0]), std::move(infosets_[1]));
  }

 private:
  [[noreturn]] void Fail(int line, const Token& tok, const std::string& what) {
    throw ParseError(line, tok.column, what);
  }

  void Expect(int line, const std::vector<Token>& toks, size_t i,
              const std::string& what) {
    if (i >= toks.size()) {
      const int col = toks.empty() ? 1
                                   : toks.back().column +
                                         static_cast<int>(toks.back().text.size());
      throw ParseError(line, col, "expected " + what);
    }
  }

  void ParseLine(int line, const std::vector<Token>& toks) {
    const std::string& kw = toks[0].text;
    if (kw == "game") {
      if (toks.size() != 2 || !IsIdentifier(toks[1].text)) {
        Fail(line, toks.size() > 1 ? toks[1] : toks[0], "expected 'game <name>'");
      }
      if (!name_.empty()) Fail(line, toks[0], "duplicate 'game' line");
      name_ = toks[1].text;
    } else if (kw == "players") {
      if (toks.size() != 2 || toks[1].text != "2") {
        Fail(line, toks.size() > 1 ? toks[1] : toks[0], "only 'players 2' is supported");
      }
      saw_players_ = true;
    } else if (kw == "root") {
      if (toks.size() != 2) Fail(line, toks[0], "expected 'root <id>'");
      auto it = index_.find(toks[1].text);
      if (it == index_.end()) {
        Fail(line, toks[1], "root '" + toks[1].text + "' is not defined before 'root'");
      }
      if (root_ >= 0) Fail(line, toks[0], "duplicate 'root' line");
      root_ = it->second;
    } else if (kw == "node") {
      ParseNode(line, toks);
    } else {
      Fail(line, toks[0], "unknown keyword '" + kw + "'");
    }
  }

  void ParseNode(int line, const std::vector<Token>& toks) {
    Expect(line, toks, 1, "node id");
    const Token& id = toks[1];
    if (!IsIdentifier(id.text)) Fail(line, id, "invalid node id '" + id.text + "'");
    if (index_.count(id.text)) Fail(line, id, "duplicate node id '" + id.text + "'");
    Expect(line, toks, 2, "node kind");
    const std::string& kind = toks[2].text;

    PendingNode pn;
    pn.line = line;
    pn.node.name = id.text;
    size_t brace = 0;
    if (kind == "terminal") {
      if (toks.size() != 5) Fail(line, toks[2], "expected 'terminal <u1> <u2>'");
      pn.node.kind = NodeKind::kTerminal;
      if (!ParseRational(toks[3].text, &pn.node.u1)) Fail(line, toks[3], "invalid payoff");
      if (!ParseRational(toks[4].text, &pn.node.u2)) Fail(line, toks[4], "invalid payoff");
    } else if (kind == "chance") {
      pn.node.kind = NodeKind::kChance;
      brace = 3;
    } else if (kind == "player") {
      pn.node.kind = NodeKind::kDecision;
      Expect(line, toks, 3, "player number");
      if (toks[3].text != "1" && toks[3].text != "2") Fail(line, toks[3], "player must be 1 or 2");
      pn.node.player = toks[3].text[0] - '0';
      Expect(line, toks, 4, "'infoset'");
      if (toks[4].text != "infoset") Fail(line, toks[4], "expected 'infoset'");
      Expect(line, toks, 5, "infoset id");
      if (!IsIdentifier(toks[5].text)) Fail(line, toks[5], "invalid infoset id");
      brace = 6;
    } else {
      Fail(line, toks[2], "unknown node kind '" + kind + "'");
    }

    if (brace > 0) {
      Expect(line, toks, brace, "'{'");
      if (toks[brace].text != "{") Fail(line, toks[brace], "expected '{'");
      size_t i = brace + 1;
      std::vector<std::string> actions;
      double sum = 0.0;
      for (; i < toks.size() && toks[i].text != "}"; ++i) {
        const Token& t = toks[i];
        const size_t colon = t.text.find(':');
        if (colon == std::string::npos) Fail(line, t, "expected '<label>:<value>'");
        const std::string lhs = t.text.substr(0, colon);
        const std::string rhs = t.text.substr(colon + 1);
        if (pn.node.kind == NodeKind::kChance) {
          if (!IsIdentifier(lhs)) Fail(line, t, "invalid child id '" + lhs + "'");
          double p = 0.0;
          if (!ParseRational(rhs, &p) || p < 0.0 || p > 1.0) {
            Fail(line, t, "invalid probability '" + rhs + "'");
          }
          pn.child_names.push_back(lhs);
          pn.node.probs.push_back(p);
          sum += p;
        } else {
          if (!IsIdentifier(lhs)) Fail(line, t, "invalid action label '" + lhs + "'");
          if (!IsIdentifier(rhs)) Fail(line, t, "invalid child id '" + rhs + "'");
          actions.push_back(lhs);
          pn.child_names.push_back(rhs);
        }
        pn.child_columns.push_back(t.column);
      }
      if (i >= toks.size()) Fail(line, toks.back(), "missing '}'");
      if (i + 1 != toks.size()) Fail(line, toks[i + 1], "trailing tokens after '}'");
      if (pn.child_names.empty()) Fail(line, toks[brace], "node has no children");
      if (pn.node.kind == NodeKind::kChance &&
          std::abs(sum - 1.0) > kProbabilityTolerance) {
        Fail(line, toks[brace], "chance probabilities sum to " + FormatDouble(sum));
      }
      if (pn.node.kind == NodeKind::kDecision) {
        auto& table = infosets_[pn.node.player - 1];
        auto& names = infoset_index_[pn.node.player - 1];
        auto it = names.find(toks[5].text);
        if (it == names.end()) {
          Infoset is;
          is.player = pn.node.player;
          is.name = toks[5].text;
          is.actions = actions;
          it = names.emplace(is.name, static_cast<int>(table.size())).first;
          table.push_back(std::move(is));
        } else if (table[it->second].actions != actions) {
          Fail(line, toks[5], "inconsistent infoset action lists for '" +
                                  toks[5].text + "'");
        }
        pn.node.infoset = it->second;
      }
    }
    index_.emplace(id.text, static_cast<int>(pending_.size()));
    pending_.push_back(std::move(pn));
  }

  std::string_view text_;
  std::string name_;
  bool saw_players_ = false;
  int root_ = -1;
  std::vector<PendingNode> pending_;
  std::map<std::string, int> index_;
  std::vector<Infoset> infosets_[2];
  std::map<std::string, int> infoset_index_[2];
};

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

GameTree ParseGame(std::string_view text) { return Parser(text).Run(); }

std::string SerializeGame(const GameTree& tree) {
  std::ostringstream out;
  out << "game " << tree.name() << "\n";
  out << "players 2\n";
  for (const Node& node : tree.nodes()) {
    out << "node " << node.name << " ";
    switch (node.kind) {
      case NodeKind::kTerminal:
        out << "terminal " << FormatDouble(node.u1) << " "
            << FormatDouble(node.u2);
        break;
      case NodeKind::kChance:
        out << "chance {";
        for (size_t b = 0; b < node.children.size(); ++b) {
          out << " " << tree.node(node.children[b]).name << ":"
              << FormatDouble(node.probs[b]);
        }
        out << " }";
        break;
      case NodeKind::kDecision: {
        const Infoset& is = tree.infoset(node.player, node.infoset);
        out << "player " << node.player << " infoset " << is.name << " {";
        for (size_t b = 0; b < node.children.size(); ++b) {
          out << " " << is.actions[b] << ":" << tree.node(node.children[b]).name;
        }
        out << " }";
        break;
      }
    }
    out << "\n";
  }
  out << "root " << tree.node(tree.root()).name << "\n";
  return out.str();
}

GameTree ReadGameFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GameError("cannot open game file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseGame(buf.str());
}

void WriteGameFile(const GameTree& tree, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GameError("cannot write game file '" + path + "'");
  out << SerializeGame(tree);
  if (!out) throw GameError("failed writing game file '" + path + "'");
}

}  // namespace esskit
