// Copyright 2023 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pcbench/textio.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"

namespace pcbench {
namespace {

using nlohmann::json;

struct Token {
  enum Kind { kWord, kOpen, kClose, kComma, kBar };
  Kind kind = kWord;
  std::string text;
  int column = 1;
};

absl::Status SyntaxError(int line, int column, absl::string_view msg) {
  return InvalidParameter(
      absl::StrCat("line ", line, ", column ", column, ": ", msg));
}

// Inserts the line number after the kind prefix, keeping the kind.
absl::Status AtLine(const absl::Status& s, int line) {
  const std::string msg(s.message());
  const size_t pos = msg.find(": ");
  if (pos == std::string::npos) return s;
  return absl::Status(s.code(), absl::StrCat(msg.substr(0, pos + 2), "line ",
                                             line, ": ", msg.substr(pos + 2)));
}

bool IsNameChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

absl::StatusOr<std::vector<Token>> Tokenize(absl::string_view text, int line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const int column = static_cast<int>(i) + 1;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.column = column;
    if (c == '{' || c == '}' || c == ',' || c == '|') {
      t.kind = c == '{'   ? Token::kOpen
               : c == '}' ? Token::kClose
               : c == ',' ? Token::kComma
                          : Token::kBar;
      t.text = std::string(1, c);
      ++i;
    } else if (IsNameChar(c)) {
      size_t j = i;
      while (j < text.size() && IsNameChar(text[j])) ++j;
      t.text = std::string(text.substr(i, j - i));
      i = j;
    } else {
      return SyntaxError(line, column,
                         absl::StrCat("unexpected character '", std::string(1, c), "'"));
    }
    out.push_back(std::move(t));
  }
  return out;
}

// A cursor over the tokens of one line.
class Cursor {
 public:
  Cursor(std::vector<Token> tokens, int line, int line_length)
      : tokens_(std::move(tokens)), line_(line), end_column_(line_length + 1) {}

  bool AtEnd() const { return pos_ >= tokens_.size(); }
  const Token* Peek() const { return AtEnd() ? nullptr : &tokens_[pos_]; }
  bool PeekWord(absl::string_view w) const {
    return !AtEnd() && tokens_[pos_].kind == Token::kWord && tokens_[pos_].text == w;
  }
  bool PeekKind(Token::Kind k) const { return !AtEnd() && tokens_[pos_].kind == k; }
  const Token& Next() { return tokens_[pos_++]; }
  int line() const { return line_; }
  int Column() const { return AtEnd() ? end_column_ : tokens_[pos_].column; }

  absl::Status Error(absl::string_view msg) const {
    return SyntaxError(line_, Column(), msg);
  }
  absl::StatusOr<std::string> Word(absl::string_view what) {
    if (!PeekKind(Token::kWord)) {
      return Error(absl::StrCat("expected ", what,
                                AtEnd() ? " before end of line"
                                        : absl::StrCat(", found '", Peek()->text, "'")));
    }
    return Next().text;
  }
  absl::Status Keyword(absl::string_view w) {
    if (!PeekWord(w)) {
      return Error(absl::StrCat("expected '", w, "'"));
    }
    ++pos_;
    return absl::OkStatus();
  }
  absl::Status ExpectEnd() const {
    if (!AtEnd()) {
      return Error(absl::StrCat("unexpected '", Peek()->text, "'"));
    }
    return absl::OkStatus();
  }

 private:
  std::vector<Token> tokens_;
  size_t pos_ = 0;
  int line_;
  int end_column_;
};

bool IsReserved(const std::string& w) {
  return w == "uniform" || w == "circuits" || w == "ground";
}

// Names after "ground" up to a body keyword, a bar or the end of the line.
absl::StatusOr<std::vector<std::string>> ParseGround(Cursor& c) {
  if (absl::Status s = c.Keyword("ground"); !s.ok()) return s;
  std::vector<std::string> names;
  std::set<std::string> seen;
  while (c.PeekKind(Token::kWord) && !c.PeekWord("uniform") &&
         !c.PeekWord("circuits")) {
    const int column = c.Column();
    std::string name = c.Next().text;
    if (IsReserved(name)) {
      return SyntaxError(c.line(), column,
                         absl::StrCat("'", name, "' is reserved"));
    }
    if (!seen.insert(name).second) {
      return SyntaxError(c.line(), column,
                         absl::StrCat("duplicate element '", name, "'"));
    }
    names.push_back(std::move(name));
  }
  if (!c.AtEnd() && !c.PeekKind(Token::kWord) && !c.PeekKind(Token::kBar)) {
    return c.Error(absl::StrCat("unexpected '", c.Peek()->text, "'"));
  }
  return names;
}

// "uniform <m>" or "circuits <sets>", stopping at a bar or the line end.
absl::StatusOr<Matroid> ParseBody(Cursor& c, const std::vector<std::string>& names) {
  if (c.PeekWord("uniform")) {
    c.Next();
    const int column = c.Column();
    absl::StatusOr<std::string> w = c.Word("a rank");
    if (!w.ok()) return w.status();
    int rank = 0;
    if (!absl::SimpleAtoi(*w, &rank) || rank < 0 ||
        rank > static_cast<int>(names.size())) {
      return SyntaxError(c.line(), column,
                         absl::StrCat("rank must be an integer in 0..", names.size()));
    }
    absl::StatusOr<Matroid> m = Matroid::Uniform(rank, names);
    if (!m.ok()) return AtLine(m.status(), c.line());
    return m;
  }
  if (!c.PeekWord("circuits")) return c.Error("expected 'uniform' or 'circuits'");
  c.Next();
  std::vector<Mask> circuits;
  while (!c.AtEnd() && !c.PeekKind(Token::kBar)) {
    if (!c.PeekKind(Token::kOpen)) return c.Error("expected '{'");
    c.Next();
    Mask set = 0;
    bool need_name = false;
    while (true) {
      if (c.PeekKind(Token::kClose) && !need_name) {
        c.Next();
        break;
      }
      const int column = c.Column();
      absl::StatusOr<std::string> name = c.Word("an element name");
      if (!name.ok()) return name.status();
      auto it = std::find(names.begin(), names.end(), *name);
      if (it == names.end()) {
        return SyntaxError(c.line(), column,
                           absl::StrCat("'", *name, "' is not in the ground set"));
      }
      set |= Bit(static_cast<int>(it - names.begin()));
      if (c.PeekKind(Token::kComma)) {
        c.Next();
        need_name = true;
      } else if (c.PeekKind(Token::kClose)) {
        need_name = false;
      } else {
        return c.Error("expected ',' or '}'");
      }
    }
    if (set == 0) {
      return SyntaxError(c.line(), c.Column(), "a circuit must be nonempty");
    }
    circuits.push_back(set);
  }
  absl::StatusOr<Matroid> m = Matroid::FromCircuits(names, circuits);
  if (!m.ok()) return AtLine(m.status(), c.line());
  return m;
}

struct Line {
  int number = 0;
  std::string text;
};

// Lines that are neither blank nor comments.
std::vector<Line> ContentLines(absl::string_view text) {
  std::vector<Line> out;
  int number = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++number;
    std::string line(raw);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back({number, std::move(line)});
  }
  return out;
}

absl::StatusOr<Cursor> CursorFor(const Line& line) {
  absl::StatusOr<std::vector<Token>> tokens = Tokenize(line.text, line.number);
  if (!tokens.ok()) return tokens.status();
  return Cursor(*std::move(tokens), line.number, static_cast<int>(line.text.size()));
}

std::string Body(const Matroid& m) {
  if (m == Matroid::Uniform(m.Rank(), m.ground()).value()) {
    return absl::StrCat("uniform ", m.Rank());
  }
  std::vector<Mask> circuits = m.Circuits();
  std::sort(circuits.begin(), circuits.end());
  std::vector<std::string> parts = {"circuits"};
  for (Mask c : circuits) parts.push_back(m.Format(c));
  return absl::StrJoin(parts, " ");
}

std::string InlineSpec(const Matroid& m) {
  return absl::StrCat("ground ", absl::StrJoin(m.ground(), " "), " ", Body(m));
}

json Names(const Matroid& m, Mask s) {
  json out = json::array();
  for (int i : Elements(s)) out.push_back(m.ground()[i]);
  return out;
}

}  // namespace

absl::StatusOr<Matroid> ParseMatroid(absl::string_view text) {
  const std::vector<Line> lines = ContentLines(text);
  if (lines.size() > 2) {
    return SyntaxError(lines[2].number, 1, "unexpected extra line");
  }
  absl::StatusOr<MatroidPair> pair = ParsePair(text);
  if (!pair.ok()) return pair.status();
  return pair->m;
}

absl::StatusOr<MatroidPair> ParsePair(absl::string_view text) {
  const std::vector<Line> lines = ContentLines(text);
  if (lines.empty()) return SyntaxError(1, 1, "expected 'ground'");
  absl::StatusOr<Cursor> head = CursorFor(lines[0]);
  if (!head.ok()) return head.status();
  absl::StatusOr<std::vector<std::string>> names = ParseGround(*head);
  if (!names.ok()) return names.status();
  if (absl::Status s = head->ExpectEnd(); !s.ok()) return s;
  if (lines.size() < 2) {
    return SyntaxError(lines[0].number + 1, 1, "expected 'uniform' or 'circuits'");
  }
  if (lines.size() > 3) {
    return SyntaxError(lines[3].number, 1, "unexpected extra line");
  }
  std::vector<Matroid> bodies;
  for (size_t i = 1; i < lines.size(); ++i) {
    absl::StatusOr<Cursor> c = CursorFor(lines[i]);
    if (!c.ok()) return c.status();
    absl::StatusOr<Matroid> m = ParseBody(*c, *names);
    if (!m.ok()) return m.status();
    if (absl::Status s = c->ExpectEnd(); !s.ok()) return s;
    bodies.push_back(*std::move(m));
  }
  if (bodies.size() == 1) bodies.push_back(bodies[0]);
  return MatroidPair::Make(bodies[0], bodies[1]);
}

absl::StatusOr<PairTree> ParsePairTree(absl::string_view text) {
  std::vector<std::pair<std::string, MatroidPair>> nodes;
  std::vector<TreeEdge> edges;
  std::optional<std::pair<std::string, std::string>> root;
  int root_line = 0;
  for (const Line& line : ContentLines(text)) {
    absl::StatusOr<Cursor> cur = CursorFor(line);
    if (!cur.ok()) return cur.status();
    Cursor& c = *cur;
    if (c.PeekWord("node")) {
      c.Next();
      absl::StatusOr<std::string> id = c.Word("a node id");
      if (!id.ok()) return id.status();
      std::vector<Matroid> sides;
      while (true) {
        absl::StatusOr<std::vector<std::string>> names = ParseGround(c);
        if (!names.ok()) return names.status();
        absl::StatusOr<Matroid> m = ParseBody(c, *names);
        if (!m.ok()) return m.status();
        sides.push_back(*std::move(m));
        if (!c.PeekKind(Token::kBar)) break;
        if (sides.size() == 2) return c.Error("a node has at most two matroids");
        c.Next();
      }
      if (absl::Status s = c.ExpectEnd(); !s.ok()) return s;
      if (sides.size() == 1) sides.push_back(sides[0]);
      absl::StatusOr<MatroidPair> pair = MatroidPair::Make(sides[0], sides[1]);
      if (!pair.ok()) return AtLine(pair.status(), line.number);
      nodes.push_back({*id, *std::move(pair)});
    } else if (c.PeekWord("edge")) {
      c.Next();
      TreeEdge e;
      for (std::string* field : {&e.a, &e.b, &e.dummy}) {
        absl::StatusOr<std::string> w =
            c.Word(field == &e.dummy ? "a dummy element" : "a node id");
        if (!w.ok()) return w.status();
        *field = *w;
      }
      if (absl::Status s = c.ExpectEnd(); !s.ok()) return s;
      edges.push_back(std::move(e));
    } else if (c.PeekWord("root")) {
      if (root) return c.Error(absl::StrCat("second root line; first on line ", root_line));
      c.Next();
      absl::StatusOr<std::string> id = c.Word("a node id");
      if (!id.ok()) return id.status();
      absl::StatusOr<std::string> lower = c.Word("the lower edge element");
      if (!lower.ok()) return lower.status();
      if (absl::Status s = c.ExpectEnd(); !s.ok()) return s;
      root = {*id, *lower};
      root_line = line.number;
    } else {
      return c.Error("expected 'node', 'edge' or 'root'");
    }
  }
  if (!root) return InvalidParameter("missing 'root <id> <lower-edge>' line");
  absl::StatusOr<PairTree> tree = PairTree::Make(nodes, edges, root->first, root->second);
  if (!tree.ok()) return tree.status();
  return tree;
}

std::string SerializeMatroid(const Matroid& m) {
  return absl::StrCat("ground ", absl::StrJoin(m.ground(), " "), "\n", Body(m), "\n");
}

std::string SerializePair(const MatroidPair& pair) {
  return absl::StrCat(SerializeMatroid(pair.m), Body(pair.n), "\n");
}

std::string SerializePairTree(const PairTree& tree) {
  const TreeShape& shape = tree.shape();
  std::string out;
  for (int t = 0; t < shape.size(); ++t) {
    absl::StrAppend(&out, "node ", shape.ids[t], " ", InlineSpec(tree.m.node[t]),
                    " | ", InlineSpec(tree.n.node[t]), "\n");
  }
  for (int t = 1; t < shape.size(); ++t) {
    absl::StrAppend(&out, "edge ", shape.ids[shape.parent[t]], " ", shape.ids[t],
                    " ", shape.dummy[t], "\n");
  }
  absl::StrAppend(&out, "root ", shape.ids[0], " ", tree.m.ground[tree.lower], "\n");
  return out;
}

json WaveJson(const Matroid& ground, const Wave& w) {
  return {{"x", Names(ground, w.x)},
          {"s_m", Names(ground, w.s_m)},
          {"s_n", Names(ground, w.s_n)}};
}

json TacticJson(const Arena& arena, const Tactic& t) {
  const Matroid& m = arena.pair.m;
  json phi = json::object();
  for (int f : Elements(arena.upper)) phi[m.ground()[f]] = PromiseName(t.phi[f]);
  json out = {{"attains", PromiseName(t.attained)},
              {"phi", phi},
              {"wave", WaveJson(m, t.wave)}};
  out["c_m"] = t.c_m ? Names(m, t.c_m) : json(nullptr);
  out["c_n"] = t.c_n ? Names(m, t.c_n) : json(nullptr);
  return out;
}

json SolveResultJson(const PairTree& tree, const SolveResult& r) {
  const TreeShape& shape = tree.shape();
  json table = json::object();
  for (int t = 0; t < shape.size(); ++t) {
    json wins = json::array();
    for (int i = 0; i < kNumPromises; ++i) {
      if (Has(r.table.wins[t], FromIndex(i))) wins.push_back(PromiseName(FromIndex(i)));
    }
    table[shape.ids[t]] = wins;
  }
  json strategy = json::array();
  for (const auto& [state, tactic] : r.table.strategy) {
    strategy.push_back({{"node", shape.ids[state.node]},
                        {"promise", PromiseName(state.promise)},
                        {"tactic", TacticJson(ArenaAt(tree, state.node), tactic)}});
  }
  return {{"game", r.table.starred ? "covering" : "packing"},
          {"start", PromiseName(r.start)},
          {"winner", PlayerName(r.winner)},
          {"tactic_player", PlayerName(r.TacticPlayer())},
          {"wins", table},
          {"strategy", strategy}};
}

json TranscriptJson(const PairTree& tree, const Transcript& t) {
  const TreeShape& shape = tree.shape();
  json moves = json::array();
  for (const Move& m : t.moves) {
    json move = {{"mover", PlayerName(m.mover)},
                 {"node", shape.ids[m.state.node]},
                 {"promise", PromiseName(m.state.promise)}};
    const Arena arena = ArenaAt(tree, m.state.node);
    if (m.tactic) {
      move["tactic"] = TacticJson(arena, *m.tactic);
    } else {
      move["challenge"] = arena.pair.m.ground()[m.challenge];
      move["m_strong"] = m.m_strong;
      move["n_strong"] = m.n_strong;
    }
    moves.push_back(std::move(move));
  }
  return {{"moves", moves},
          {"winner", PlayerName(t.winner)},
          {"stuck", PlayerName(t.stuck)}};
}

std::string TranscriptText(const PairTree& tree, const Transcript& t) {
  const TreeShape& shape = tree.shape();
  std::string out;
  int index = 0;
  for (const Move& m : t.moves) {
    const Arena arena = ArenaAt(tree, m.state.node);
    absl::StrAppend(&out, ++index, ". ", PlayerName(m.mover), " at ",
                    shape.ids[m.state.node], " [", PromiseName(m.state.promise), "]: ");
    if (m.tactic) {
      absl::StrAppend(&out, "tactic ", FormatTactic(arena, *m.tactic), "\n");
    } else {
      absl::StrAppend(&out, "challenge ", arena.pair.m.ground()[m.challenge],
                      m.m_strong ? " M-strong" : " M-weak",
                      m.n_strong ? " N-strong" : " N-weak", "\n");
    }
  }
  absl::StrAppend(&out, PlayerName(t.stuck), " is stuck; ", PlayerName(t.winner),
                  " wins\n");
  return out;
}

}  // namespace pcbench
