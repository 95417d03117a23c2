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

#include "pcbench/game.h"

#include <algorithm>
#include <set>

#include "absl/strings/str_cat.h"

namespace pcbench {
namespace {

using P = Promise;

bool IsBottom(Promise p) { return Plain(p) == P::kBot; }

bool NeedsM(Promise p) {
  return Has(SetOf({P::kTop, P::kMPlus, P::kMMinus}), Plain(p));
}
bool NeedsN(Promise p) {
  return Has(SetOf({P::kTop, P::kNPlus, P::kNMinus}), Plain(p));
}

Tactic Unstar(Tactic t) {
  t.attained = Plain(t.attained);
  for (Promise& p : t.phi) p = Plain(p);
  return t;
}

Tactic Restar(Tactic t) {
  t.attained = Star(t.attained);
  for (Promise& p : t.phi) p = Star(p);
  return t;
}

std::string StateName(const PairTree& tree, const GameState& s) {
  return absl::StrCat("node ", tree.shape().ids[s.node], " promise ",
                      PromiseName(s.promise));
}

// Upper edges of t with a non-bottom promise under phi.
Mask Challengeable(const Arena& arena, const Phi& phi) {
  Mask out = 0;
  for (int f : Elements(arena.upper)) {
    if (!IsBottom(phi[f])) out |= Bit(f);
  }
  return out;
}

bool HasTactic(const Arena& arena, bool starred, Promise p) {
  for (const Phi& phi : AllPhis(arena, starred)) {
    if (FindTactic(arena, phi, p)) return true;
  }
  return false;
}

// Backward induction for plain promises.
GameTable SolvePlain(const PairTree& tree) {
  const TreeShape& shape = tree.shape();
  const int k = shape.size();
  GameTable table;
  table.wins.assign(k, 0);
  for (int t = k - 1; t >= 0; --t) {
    const Arena arena = ArenaAt(tree, t);
    // Assignments whose every challenge leads to a winning child state.
    std::vector<Phi> viable;
    for (const Phi& phi : AllPhis(arena, false)) {
      bool ok = true;
      for (int f : Elements(Challengeable(arena, phi))) {
        ok &= Has(table.wins[ChildAt(tree, t, f)], phi[f]);
      }
      if (ok) viable.push_back(phi);
    }
    for (Promise p : kPlainPromises) {
      for (const Phi& phi : viable) {
        std::optional<Tactic> tactic = FindTactic(arena, phi, p);
        if (!tactic) continue;
        table.wins[t] |= SetOf({p});
        table.strategy.emplace(GameState{t, p}, *std::move(tactic));
        break;
      }
    }
  }
  return table;
}

// The tree whose plain game is the requested game, and the strategy
// translated into it.
const PairTree& PlainTree(const PairTree& tree, bool starred,
                          std::optional<PairTree>& dual) {
  if (!starred) return tree;
  if (!dual) dual = tree.Dual();
  return *dual;
}

TacticStrategy PlainStrategy(const TacticStrategy& s, bool starred) {
  if (!starred) return s;
  TacticStrategy out;
  for (const auto& [state, tactic] : s) {
    out.emplace(GameState{state.node, Plain(state.promise)}, Unstar(tactic));
  }
  return out;
}

absl::Status CheckFrom(const PairTree& tree, const GameState& state,
                       const TacticStrategy& strategy,
                       std::set<GameState>& done) {
  if (done.count(state)) return absl::OkStatus();
  auto it = strategy.find(state);
  if (it == strategy.end()) {
    return InvalidParameter(
        absl::StrCat("no tactic prescribed at ", StateName(tree, state)));
  }
  const Arena arena = ArenaAt(tree, state.node);
  const Tactic& tactic = it->second;
  if (tactic.attained != state.promise) {
    return InvalidParameter(absl::StrCat("tactic at ", StateName(tree, state),
                                         " attains ",
                                         PromiseName(tactic.attained)));
  }
  if (absl::Status s = CheckTactic(arena, tactic); !s.ok()) {
    return InvalidParameter(absl::StrCat("illegal tactic at ",
                                         StateName(tree, state), ": ",
                                         s.message()));
  }
  for (int f : Elements(Challengeable(arena, tactic.phi))) {
    absl::Status s = CheckFrom(
        tree, GameState{ChildAt(tree, state.node, f), tactic.phi[f]}, strategy,
        done);
    if (!s.ok()) return s;
  }
  done.insert(state);
  return absl::OkStatus();
}

// Whether the lazy challenger beats every tactic from `state`.
absl::Status ChallengerWinsFrom(const PairTree& tree, const GameState& state,
                                bool starred, const ChallengeStrategy& lazy,
                                std::set<GameState>& done) {
  if (done.count(state)) return absl::OkStatus();
  const Arena arena = ArenaAt(tree, state.node);
  for (const Phi& phi : AllPhis(arena, starred)) {
    std::optional<Tactic> tactic = FindTactic(arena, phi, state.promise);
    if (!tactic) continue;
    std::optional<int> f = lazy(state, *tactic);
    if (!f) {
      return TheoremViolation(absl::StrCat(
          "tactic player survives at ", StateName(tree, state), " with ",
          FormatPhi(arena, phi)));
    }
    absl::Status s = ChallengerWinsFrom(
        tree, GameState{ChildAt(tree, state.node, *f), phi[*f]}, starred, lazy,
        done);
    if (!s.ok()) return s;
  }
  done.insert(state);
  return absl::OkStatus();
}

// Maps a mask over `tree`'s ground into `sub`'s ground by names.
Mask ToSub(const TreeOfMatroids& tree, const TreeOfMatroids& sub, Mask x) {
  Mask out = 0;
  for (int i = 0; i < sub.size(); ++i) {
    auto it = std::find(tree.ground.begin(), tree.ground.end(), sub.ground[i]);
    if (it != tree.ground.end() && Contains(x, int(it - tree.ground.begin()))) {
      out |= Bit(i);
    }
  }
  return out;
}

// Glues the circuits C^M (or C^N) of the reached tactics into a precircuit
// through the lower edge.
absl::StatusOr<Precircuit> Glue(const TreeOfMatroids& side,
                                const std::map<int, Tactic>& played,
                                bool m_side) {
  const TreeShape& shape = side.shape;
  const int k = shape.size();
  Precircuit p;
  p.in.assign(k, false);
  p.o.assign(k, 0);
  p.in[0] = true;
  p.o[0] = m_side ? played.at(0).c_m : played.at(0).c_n;
  for (int t = 0; t < k; ++t) {
    if (!p.in[t]) continue;
    for (int s : shape.children[t]) {
      if (!Contains(p.o[t], shape.down_local[s])) continue;
      auto it = played.find(s);
      if (it == played.end()) {
        return TheoremViolation(absl::StrCat("circuit crosses into unreached node ",
                                             shape.ids[s]));
      }
      const Mask c = m_side ? it->second.c_m : it->second.c_n;
      if (!(m_side ? NeedsM(it->second.attained) : NeedsN(it->second.attained))) {
        return TheoremViolation(absl::StrCat("circuit crosses into node ",
                                             shape.ids[s],
                                             " whose promise has no circuit"));
      }
      p.in[s] = true;
      p.o[s] = c;
    }
  }
  if (absl::Status s = CheckPrecircuit(side, p); !s.ok()) {
    return TheoremViolation(absl::StrCat("glued precircuit: ", s.message()));
  }
  return p;
}

}  // namespace

std::string PlayerName(Player p) {
  return p == Player::kPacker ? "Packer" : "Coverina";
}

std::vector<Tactic> LegalTactics(const PairTree& tree, int t, Promise p,
                                 const TacticOptions& options) {
  return EnumerateTactics(ArenaAt(tree, t), p, options);
}

int ChildAt(const PairTree& tree, int t, int f) {
  const TreeShape& shape = tree.shape();
  for (int s : shape.children[t]) {
    if (shape.down_local[s] == f) return s;
  }
  return -1;
}

GameTable SolveGameTable(const PairTree& tree, bool starred) {
  if (!starred) return SolvePlain(tree);
  GameTable plain = SolvePlain(tree.Dual());
  GameTable out;
  out.starred = true;
  for (PromiseSet s : plain.wins) out.wins.push_back(PromiseSet(s << 6));
  for (const auto& [state, tactic] : plain.strategy) {
    out.strategy.emplace(GameState{state.node, Star(state.promise)},
                         Restar(tactic));
  }
  return out;
}

absl::StatusOr<SolveResult> SolvePackingGame(const PairTree& tree, Promise p0) {
  if (IsStarred(p0)) {
    return InvalidParameter("the Packing game starts at a plain promise");
  }
  SolveResult r;
  r.start = p0;
  r.table = SolveGameTable(tree, false);
  r.winner = Has(r.table.wins[0], p0) ? Player::kPacker : Player::kCoverina;
  return r;
}

absl::StatusOr<SolveResult> SolveCoveringGame(const PairTree& tree,
                                              Promise p0) {
  if (!IsStarred(p0)) {
    return InvalidParameter("the Covering game starts at a starred promise");
  }
  SolveResult r;
  r.start = p0;
  r.table = SolveGameTable(tree, true);
  r.winner = Has(r.table.wins[0], p0) ? Player::kCoverina : Player::kPacker;
  return r;
}

ChallengeStrategy LazyChallenger(const PairTree& tree, const GameTable& table) {
  TreeShape shape = tree.shape();
  std::vector<PromiseSet> wins = table.wins;
  return [shape, wins](const GameState& state,
                       const Tactic& tactic) -> std::optional<int> {
    // Least losing edge, else least non-bottom edge.
    std::optional<int> losing, any;
    for (int s : shape.children[state.node]) {
      const int f = shape.down_local[s];
      if (IsBottom(tactic.phi[f])) continue;
      if (!any || f < *any) any = f;
      if (!Has(wins[s], tactic.phi[f]) && (!losing || f < *losing)) losing = f;
    }
    return losing ? losing : any;
  };
}

absl::Status CheckWinningStrategy(const PairTree& tree, Promise p0,
                                  const TacticStrategy& strategy) {
  std::set<GameState> done;
  return CheckFrom(tree, GameState{0, p0}, strategy, done);
}

absl::Status VerifySolveResult(const PairTree& tree, const SolveResult& r) {
  if (r.winner == r.TacticPlayer()) {
    return CheckWinningStrategy(tree, r.start, r.table.strategy);
  }
  std::set<GameState> done;
  return ChallengerWinsFrom(tree, GameState{0, r.start}, r.table.starred,
                            LazyChallenger(tree, r.table), done);
}

absl::StatusOr<GluedWave> StrategyToWave(const PairTree& tree, Promise p0,
                                         const TacticStrategy& strategy) {
  if (absl::Status s = CheckWinningStrategy(tree, p0, strategy); !s.ok()) {
    return InvalidParameter(
        absl::StrCat("strategy is not winning: ", s.message()));
  }
  const bool starred = IsStarred(p0);
  std::optional<PairTree> dual;
  const PairTree& w = PlainTree(tree, starred, dual);
  const TacticStrategy plain = PlainStrategy(strategy, starred);
  const Promise p = Plain(p0);
  // Walk the reachable states.
  std::map<int, Tactic> played;
  std::vector<GameState> queue = {{0, p}};
  GluedWave out;
  for (size_t i = 0; i < queue.size(); ++i) {
    const GameState state = queue[i];
    const Tactic& tactic = plain.at(state);
    const Arena arena = ArenaAt(w, state.node);
    if (!IsNormalized(arena, tactic)) {
      return InvalidParameter(absl::StrCat(
          "tactic at ", StateName(tree, state),
          " is not normalized: M- and N- edges must lie on their sides"));
    }
    played.emplace(state.node, tactic);
    out.reached.push_back(state.node);
    out.wave.x |= w.m.ToGlobal(state.node, tactic.wave.x);
    out.wave.s_m |= w.m.ToGlobal(state.node, tactic.wave.s_m);
    out.wave.s_n |= w.m.ToGlobal(state.node, tactic.wave.s_n);
    for (int f : Elements(Challengeable(arena, tactic.phi))) {
      queue.push_back({ChildAt(w, state.node, f), tactic.phi[f]});
    }
  }
  absl::StatusOr<MatroidPair> assembled = Assemble(w);
  if (!assembled.ok()) return assembled.status();
  const int e = w.lower;
  auto witness = [&](bool m_side, std::optional<Precircuit>& pc,
                     Mask& circuit) -> absl::Status {
    const TreeOfMatroids& side = m_side ? w.m : w.n;
    absl::StatusOr<Precircuit> glued = Glue(side, played, m_side);
    if (!glued.ok()) return glued.status();
    const Mask under = Underlying(side, *glued);
    const Mask s = m_side ? out.wave.s_m : out.wave.s_n;
    if (!Contains(under, e) || !IsSubset(under, s | Bit(e))) {
      return TheoremViolation("glued precircuit leaves S + e");
    }
    const Matroid& m = m_side ? assembled->m : assembled->n;
    for (Mask c : m.Circuits()) {
      if (Contains(c, e) && IsSubset(c, under)) {
        circuit = c;
        break;
      }
    }
    if (circuit == 0) {
      return TheoremViolation("no assembled circuit through e in the glued set");
    }
    pc = *std::move(glued);
    return absl::OkStatus();
  };
  if (NeedsM(p)) {
    if (absl::Status s = witness(true, out.witness_m, out.circuit_m); !s.ok()) {
      return s;
    }
  }
  if (NeedsN(p)) {
    if (absl::Status s = witness(false, out.witness_n, out.circuit_n); !s.ok()) {
      return s;
    }
  }
  if (!IsWave(*assembled, out.wave)) {
    return TheoremViolation(absl::StrCat(
        "glued sets are not a wave: ",
        WaveDefectName(CheckWave(*assembled, out.wave))));
  }
  if (!FulfilsPlain(*assembled, e, out.wave, p)) {
    return TheoremViolation(
        absl::StrCat("glued wave does not fulfil ", PromiseName(p)));
  }
  return out;
}

absl::StatusOr<DerivedStrategy> WaveToStrategy(const PairTree& tree,
                                               Promise p0, const Wave& wave) {
  const bool starred = IsStarred(p0);
  std::optional<PairTree> dual;
  const PairTree& w = PlainTree(tree, starred, dual);
  const Promise p = Plain(p0);
  absl::StatusOr<MatroidPair> assembled = Assemble(w);
  if (!assembled.ok()) return assembled.status();
  const int e = w.lower;
  if (!IsWave(*assembled, wave)) {
    return InvalidParameter(
        absl::StrCat(starred ? "not a cowave: " : "not a wave: ",
                     WaveDefectName(CheckWave(*assembled, wave))));
  }
  if (!FulfilsPlain(*assembled, e, wave, p)) {
    return InvalidParameter(
        absl::StrCat("the wave does not fulfil ", PromiseName(p0)));
  }
  const TreeShape& shape = w.shape();
  const int k = shape.size();
  DerivedStrategy out;
  out.promise.assign(k, P::kBot);
  out.promise[0] = p;
  for (int t = 1; t < k; ++t) {
    auto [sub_m, nodes] = w.m.Subtree(t);
    auto [sub_n, unused] = w.n.Subtree(t);
    absl::StatusOr<Matroid> am = Assemble(sub_m);
    if (!am.ok()) return am.status();
    absl::StatusOr<Matroid> an = Assemble(sub_n);
    if (!an.ok()) return an.status();
    const MatroidPair pair{*am, *an};
    const int d = static_cast<int>(
        std::find(sub_m.ground.begin(), sub_m.ground.end(), shape.dummy[t]) -
        sub_m.ground.begin());
    const Wave z{ToSub(w.m, sub_m, wave.x), ToSub(w.m, sub_m, wave.s_m),
                 ToSub(w.m, sub_m, wave.s_n)};
    const bool z_wave = IsWave(pair, z);
    const bool m_span = am->Spans(z.s_m, Bit(d));
    const bool n_span = an->Spans(z.s_n, Bit(d));
    Promise q = P::kBot;
    if (z_wave && m_span && n_span) {
      q = P::kTop;
    } else if (z_wave && m_span) {
      q = P::kMPlus;
    } else if (IsWave(pair, {z.x | Bit(d), z.s_m, z.s_n | Bit(d)})) {
      q = P::kMMinus;
    } else if (z_wave && n_span) {
      q = P::kNPlus;
    } else if (IsWave(pair, {z.x | Bit(d), z.s_m | Bit(d), z.s_n})) {
      q = P::kNMinus;
    }
    out.promise[t] = q;
  }
  const auto pick_m = PickCompatiblePrecircuits(w.m, wave.s_m, e);
  const auto pick_n = PickCompatiblePrecircuits(w.n, wave.s_n, e);
  std::vector<bool> reached(k, false);
  for (int t = 0; t < k; ++t) {
    reached[t] = t == 0 || (reached[shape.parent[t]] && out.promise[t] != P::kBot);
    if (!reached[t]) continue;
    const Arena arena = ArenaAt(w, t);
    Tactic tactic;
    tactic.attained = out.promise[t];
    tactic.phi.assign(arena.size(), P::kBot);
    tactic.wave = {w.m.ToLocal(t, wave.x), w.m.ToLocal(t, wave.s_m),
                   w.m.ToLocal(t, wave.s_n)};
    for (int s : shape.children[t]) {
      const int f = shape.down_local[s];
      tactic.phi[f] = out.promise[s];
      if (out.promise[s] == P::kMMinus) {
        tactic.wave.x |= Bit(f);
        tactic.wave.s_m |= Bit(f);
      } else if (out.promise[s] == P::kNMinus) {
        tactic.wave.x |= Bit(f);
        tactic.wave.s_n |= Bit(f);
      }
    }
    if (t > 0) {
      const int up = shape.up_local[t];
      if (out.promise[t] == P::kMMinus) {
        tactic.wave.x |= Bit(up);
        tactic.wave.s_n |= Bit(up);
      } else if (out.promise[t] == P::kNMinus) {
        tactic.wave.x |= Bit(up);
        tactic.wave.s_m |= Bit(up);
      }
    }
    if (NeedsM(tactic.attained)) {
      if (!pick_m[t]) {
        return TheoremViolation(absl::StrCat("no M-precircuit picked at node ",
                                             shape.ids[t]));
      }
      tactic.c_m = pick_m[t]->o[t];
    }
    if (NeedsN(tactic.attained)) {
      if (!pick_n[t]) {
        return TheoremViolation(absl::StrCat("no N-precircuit picked at node ",
                                             shape.ids[t]));
      }
      tactic.c_n = pick_n[t]->o[t];
    }
    if (absl::Status s = CheckTactic(arena, tactic); !s.ok()) {
      return TheoremViolation(absl::StrCat("derived tactic at node ",
                                           shape.ids[t], " ",
                                           FormatTactic(arena, tactic), ": ",
                                           s.message()));
    }
    out.strategy.emplace(GameState{t, tactic.attained}, std::move(tactic));
  }
  if (starred) {
    TacticStrategy restarred;
    for (auto& [state, tactic] : out.strategy) {
      restarred.emplace(GameState{state.node, Star(state.promise)},
                        Restar(tactic));
    }
    out.strategy = std::move(restarred);
    for (Promise& q : out.promise) q = Star(q);
  }
  return out;
}

absl::StatusOr<Transcript> PlayTrace(const PairTree& tree, Promise p0,
                                     const TacticStrategy& tactics,
                                     const ChallengeStrategy& challenger) {
  const bool starred = IsStarred(p0);
  const Player tactic_player = starred ? Player::kCoverina : Player::kPacker;
  const Player other =
      starred ? Player::kPacker : Player::kCoverina;
  Transcript out;
  GameState state{0, p0};
  while (true) {
    const Arena arena = ArenaAt(tree, state.node);
    auto it = tactics.find(state);
    if (it == tactics.end()) {
      if (HasTactic(arena, starred, state.promise)) {
        return InvalidParameter(absl::StrCat(
            "strategy-invalid: no tactic prescribed at ", StateName(tree, state),
            " although legal tactics exist"));
      }
      out.winner = other;
      out.stuck = tactic_player;
      return out;
    }
    const Tactic& tactic = it->second;
    absl::Status legal = CheckTactic(arena, tactic);
    if (legal.ok() && tactic.attained != state.promise) {
      legal = InvalidParameter("attains a different promise");
    }
    if (!legal.ok()) {
      return InvalidParameter(absl::StrCat("strategy-invalid: illegal tactic at ",
                                           StateName(tree, state), ": ",
                                           legal.message()));
    }
    Move move;
    move.mover = tactic_player;
    move.state = state;
    move.tactic = tactic;
    out.moves.push_back(move);
    const Mask open = Challengeable(arena, tactic.phi);
    const std::optional<int> f = challenger(state, tactic);
    if (!f) {
      if (open != 0) {
        return InvalidParameter(absl::StrCat(
            "strategy-invalid: challenger passes at ", StateName(tree, state),
            " although challenges exist"));
      }
      out.winner = tactic_player;
      out.stuck = other;
      return out;
    }
    if (*f < 0 || *f >= arena.size() || !Contains(open, *f)) {
      return InvalidParameter(absl::StrCat(
          "strategy-invalid: illegal challenge at ", StateName(tree, state)));
    }
    Move challenge;
    challenge.mover = other;
    challenge.state = state;
    challenge.challenge = *f;
    challenge.m_strong = IsMStrong(tactic, *f);
    challenge.n_strong = IsNStrong(tactic, *f);
    out.moves.push_back(challenge);
    state = GameState{ChildAt(tree, state.node, *f), tactic.phi[*f]};
  }
}

}  // namespace pcbench
