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

#include "pcbench/arena.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace pcbench {
namespace {

using P = Promise;

int Local(int e, Mask keep) { return Popcount(keep & (Bit(e) - 1)); }

Wave Lower(const Wave& w, Mask keep) {
  return {Compress(w.x, keep), Compress(w.s_m, keep), Compress(w.s_n, keep)};
}

Wave Lift(const Wave& w, Mask keep) {
  return {Expand(w.x, keep), Expand(w.s_m, keep), Expand(w.s_n, keep)};
}

bool IsCircuitOf(const Matroid& m, Mask c) {
  if (c == 0 || m.IsIndependent(c)) return false;
  for (int x : Elements(c)) {
    if (!m.IsIndependent(c & ~Bit(x))) return false;
  }
  return true;
}

// Elements of F whose plain promise lies in `set`.
Mask PreImage(const Arena& arena, const Phi& phi, PromiseSet set) {
  Mask out = 0;
  for (int f : Elements(arena.upper)) {
    if (Has(set, Plain(phi[f]))) out |= Bit(f);
  }
  return out;
}

bool NeedsM(Promise p) {
  return Has(SetOf({P::kTop, P::kMPlus, P::kMMinus}), Plain(p));
}
bool NeedsN(Promise p) {
  return Has(SetOf({P::kTop, P::kNPlus, P::kNMinus}), Plain(p));
}

// A cotactic is a tactic of the dual arena with the stars removed.
std::pair<Arena, Tactic> ToPlain(const Arena& arena, const Tactic& t) {
  if (!IsStarred(t.attained)) return {arena, t};
  Tactic plain = t;
  plain.attained = Plain(t.attained);
  for (Promise& p : plain.phi) p = Plain(p);
  return {arena.Dual(), plain};
}

Tactic Restar(Tactic t) {
  t.attained = Star(t.attained);
  for (Promise& p : t.phi) p = Star(p);
  return t;
}

// Calls `emit` on every normalized plain tactic with this phi attaining p,
// in canonical order, until it returns false.
template <typename Emit>
void ForEachPlainTactic(const Arena& arena, const Phi& phi, Promise p,
                        const std::vector<Mask>& circuits_m,
                        const std::vector<Mask>& circuits_n, bool all_sides,
                        bool all_circuits, Emit emit) {
  const RelyingPair rp = DeriveRelyingPair(arena, phi);
  const int e = arena.lower;
  const int le = Local(e, rp.keep);
  const Mask full = rp.pair.ground_mask();
  const Mask req_m = Compress(PreImage(arena, phi, SetOf({P::kMMinus})), rp.keep);
  const Mask req_n = Compress(PreImage(arena, phi, SetOf({P::kNMinus})), rp.keep);
  const Mask pool_m =
      PreImage(arena, phi, SetOf({P::kTop, P::kMPlus, P::kMMinus})) | Bit(e);
  const Mask pool_n =
      PreImage(arena, phi, SetOf({P::kTop, P::kNPlus, P::kNMinus})) | Bit(e);
  const bool need_m = NeedsM(p);
  const bool need_n = NeedsN(p);
  bool go = true;
  auto with_circuits = [&](const Wave& local) {
    Tactic t{p, phi, Lift(local, rp.keep), 0, 0};
    std::vector<Mask> cms = {0}, cns = {0};
    if (need_m) {
      cms.clear();
      for (Mask c : circuits_m) {
        if (Contains(c, e) && IsSubset(c, t.wave.s_m | pool_m)) {
          cms.push_back(c);
          if (!all_circuits) break;
        }
      }
    }
    if (need_n) {
      cns.clear();
      for (Mask c : circuits_n) {
        if (Contains(c, e) && IsSubset(c, t.wave.s_n | pool_n)) {
          cns.push_back(c);
          if (!all_circuits) break;
        }
      }
    }
    for (Mask cm : cms) {
      for (Mask cn : cns) {
        if (!go) return;
        t.c_m = cm;
        t.c_n = cn;
        go = emit(t);
      }
    }
  };
  const Mask req = req_m | req_n;
  ForEachSubset(full & ~req, [&](Mask extra_x) {
    if (!go) return;
    const Mask x = req | extra_x;
    const int rm = rp.pair.m.Rank(x);
    const int rn = rp.pair.n.Rank(x);
    ForEachSubset(x & ~req, [&](Mask extra_m) {
      if (!go) return;
      const Mask s_m = req_m | extra_m;
      if (rp.pair.m.Rank(s_m) != rm) return;
      const Mask rest = x & ~s_m;
      if (!all_sides) {
        const Wave w{x, s_m, rest};
        if (rp.pair.n.Rank(rest) == rn && FulfilsPlain(rp.pair, le, w, p)) {
          with_circuits(w);
        }
        return;
      }
      ForEachSubset(rest & ~req_n, [&](Mask extra_n) {
        if (!go) return;
        const Wave w{x, s_m, req_n | extra_n};
        if (rp.pair.n.Rank(w.s_n) == rn && FulfilsPlain(rp.pair, le, w, p)) {
          with_circuits(w);
        }
      });
    });
  });
}

// Least Z inside `pool` making c + Z a circuit of m.
std::optional<Mask> ExtendCircuit(const Matroid& m, Mask c, Mask pool) {
  std::optional<Mask> out;
  ForEachSubset(pool, [&](Mask z) {
    if (!out && IsCircuitOf(m, c | z)) out = c | z;
  });
  return out;
}

}  // namespace

absl::StatusOr<Arena> Arena::Make(MatroidPair pair, Mask upper, int lower) {
  if (lower < 0 || lower >= pair.size()) {
    return InvalidParameter("lower edge outside the ground set");
  }
  if (!IsSubset(upper, pair.ground_mask())) {
    return InvalidParameter("upper edges outside the ground set");
  }
  if (Contains(upper, lower)) {
    return InvalidParameter("lower edge must not be an upper edge");
  }
  return Arena{std::move(pair), upper, lower};
}

std::string FormatPhi(const Arena& arena, const Phi& phi) {
  std::vector<std::string> parts;
  for (int f : Elements(arena.upper)) {
    parts.push_back(
        absl::StrCat(arena.pair.m.ground()[f], ":", PromiseName(phi[f])));
  }
  return absl::StrCat("{", absl::StrJoin(parts, ","), "}");
}

std::string FormatTactic(const Arena& arena, const Tactic& t) {
  const Matroid& m = arena.pair.m;
  std::string out = absl::StrCat(PromiseName(t.attained), " phi=",
                                 FormatPhi(arena, t.phi),
                                 " wave=", FormatWave(m, t.wave));
  if (NeedsM(t.attained)) absl::StrAppend(&out, " CM=", m.Format(t.c_m));
  if (NeedsN(t.attained)) absl::StrAppend(&out, " CN=", m.Format(t.c_n));
  return out;
}

RelyingPair DeriveRelyingPair(const Arena& arena, const Phi& phi) {
  const Mask remove =
      PreImage(arena, phi, SetOf({P::kBot, P::kMPlus, P::kNPlus, P::kTop}));
  const Mask contract_m = PreImage(arena, phi, SetOf({P::kTop, P::kMPlus}));
  const Mask contract_n = PreImage(arena, phi, SetOf({P::kTop, P::kNPlus}));
  return {arena.pair.Reduce(remove, contract_m, contract_n),
          arena.pair.ground_mask() & ~remove};
}

bool FulfilsPlain(const MatroidPair& pair, int e, const Wave& w, Promise p) {
  const bool outside = !Contains(w.x, e);
  switch (p) {
    case P::kBot:
      return true;
    case P::kMPlus:
      return outside && pair.m.Spans(w.x, Bit(e));
    case P::kMMinus:
      return Contains(w.s_n, e);
    case P::kNPlus:
      return outside && pair.n.Spans(w.x, Bit(e));
    case P::kNMinus:
      return Contains(w.s_m, e);
    case P::kTop:
      return outside && pair.m.Spans(w.x, Bit(e)) && pair.n.Spans(w.x, Bit(e));
    default:
      return false;
  }
}

absl::StatusOr<bool> Fulfils(const MatroidPair& pair, int e, const Wave& w,
                             Promise p) {
  if (IsStarred(p)) {
    return InvalidParameter(
        "a wave cannot fulfil a starred promise; use the dual pair");
  }
  if (e < 0 || e >= pair.size()) return InvalidParameter("e outside ground");
  if (!IsWave(pair, w)) {
    return InvalidParameter(
        absl::StrCat("not a wave: ", WaveDefectName(CheckWave(pair, w))));
  }
  return FulfilsPlain(pair, e, w, p);
}

absl::Status CheckTactic(const Arena& arena, const Tactic& t) {
  if (static_cast<int>(t.phi.size()) != arena.size()) {
    return InvalidParameter("phi must have one entry per element");
  }
  for (int f : Elements(arena.upper)) {
    if (IsStarred(t.phi[f]) != IsStarred(t.attained)) {
      return InvalidParameter("phi mixes plain and starred promises");
    }
  }
  auto [a, k] = ToPlain(arena, t);
  const RelyingPair rp = DeriveRelyingPair(a, k.phi);
  const int e = a.lower;
  if (!IsSubset(k.wave.x, rp.keep)) {
    return InvalidParameter("wave uses edges removed by phi");
  }
  const Wave local = Lower(k.wave, rp.keep);
  if (!IsWave(rp.pair, local)) {
    return InvalidParameter(absl::StrCat(
        "wave does not rely on phi: ",
        WaveDefectName(CheckWave(rp.pair, local))));
  }
  if (!FulfilsPlain(rp.pair, Local(e, rp.keep), local, k.attained)) {
    return InvalidParameter(absl::StrCat("wave does not fulfil ",
                                         PromiseName(t.attained)));
  }
  if (NeedsM(k.attained)) {
    const Mask pool =
        PreImage(a, k.phi, SetOf({P::kTop, P::kMPlus, P::kMMinus})) | Bit(e);
    if (!IsCircuitOf(a.pair.m, k.c_m) || !Contains(k.c_m, e) ||
        !IsSubset(k.c_m, k.wave.s_m | pool)) {
      return InvalidParameter("C^M is not a suitable circuit through e");
    }
  }
  if (NeedsN(k.attained)) {
    const Mask pool =
        PreImage(a, k.phi, SetOf({P::kTop, P::kNPlus, P::kNMinus})) | Bit(e);
    if (!IsCircuitOf(a.pair.n, k.c_n) || !Contains(k.c_n, e) ||
        !IsSubset(k.c_n, k.wave.s_n | pool)) {
      return InvalidParameter("C^N is not a suitable circuit through e");
    }
  }
  return absl::OkStatus();
}

bool IsNormalized(const Arena& arena, const Tactic& t) {
  return IsSubset(PreImage(arena, t.phi, SetOf({P::kMMinus})), t.wave.s_m) &&
         IsSubset(PreImage(arena, t.phi, SetOf({P::kNMinus})), t.wave.s_n);
}

bool IsMStrong(const Tactic& t, int f) {
  return NeedsM(t.phi[f]) && Contains(t.c_m, f);
}

bool IsNStrong(const Tactic& t, int f) {
  return NeedsN(t.phi[f]) && Contains(t.c_n, f);
}

std::vector<Phi> AllPhis(const Arena& arena, bool starred) {
  const std::vector<int> fs = Elements(arena.upper);
  std::vector<Phi> out;
  std::vector<int> digit(fs.size(), 0);
  while (true) {
    Phi phi(arena.size(), P::kBot);
    for (size_t i = 0; i < fs.size(); ++i) {
      phi[fs[i]] = FromIndex(digit[i] + (starred ? 6 : 0));
    }
    out.push_back(std::move(phi));
    int i = static_cast<int>(fs.size()) - 1;
    while (i >= 0 && digit[i] == 5) digit[i--] = 0;
    if (i < 0) break;
    ++digit[i];
  }
  return out;
}

std::optional<Tactic> FindTactic(const Arena& arena, const Phi& phi,
                                 Promise p) {
  if (IsStarred(p)) {
    Phi plain = phi;
    for (Promise& q : plain) q = Plain(q);
    std::optional<Tactic> t = FindTactic(arena.Dual(), plain, Plain(p));
    if (!t) return std::nullopt;
    return Restar(*t);
  }
  std::optional<Tactic> found;
  ForEachPlainTactic(arena, phi, p, arena.pair.m.Circuits(),
                     arena.pair.n.Circuits(), false, false,
                     [&](const Tactic& t) {
                       found = t;
                       return false;
                     });
  return found;
}

std::vector<Tactic> EnumerateTactics(const Arena& arena, Promise p,
                                     const TacticOptions& options) {
  if (IsStarred(p)) {
    std::vector<Tactic> out = EnumerateTactics(arena.Dual(), Plain(p), options);
    for (Tactic& t : out) t = Restar(std::move(t));
    return out;
  }
  std::vector<Tactic> out;
  const std::vector<Mask> cm = arena.pair.m.Circuits();
  const std::vector<Mask> cn = arena.pair.n.Circuits();
  for (const Phi& phi : AllPhis(arena, false)) {
    ForEachPlainTactic(arena, phi, p, cm, cn, options.all_sides,
                       options.all_circuits, [&](const Tactic& t) {
                         out.push_back(t);
                         return out.size() < options.limit;
                       });
    if (out.size() >= options.limit) break;
  }
  return out;
}

absl::StatusOr<PromiseSet> AttainableSet(const Arena& arena) {
  if (arena.upper != 0) {
    return InvalidParameter("attainable sets need an arena without upper edges");
  }
  PromiseSet out = 0;
  const int e = arena.lower;
  for (int star = 0; star < 2; ++star) {
    const MatroidPair pair = star ? arena.pair.Dual() : arena.pair;
    auto add = [&](Promise p, bool yes) {
      if (yes) out |= SetOf({star ? Star(p) : p});
    };
    add(P::kBot, true);
    add(P::kMPlus, FindWaveMSpanning(pair, e).has_value());
    add(P::kMMinus, FindWaveWithNSide(pair, e).has_value());
    add(P::kNPlus, FindWaveNSpanning(pair, e).has_value());
    add(P::kNMinus, FindWaveWithMSide(pair, e).has_value());
    add(P::kTop, FindWaveBothSpanning(pair, e).has_value());
  }
  return out;
}

PromiseSet AttainableSetBruteForce(const Arena& arena) {
  PromiseSet out = 0;
  for (int star = 0; star < 2; ++star) {
    const MatroidPair pair = star ? arena.pair.Dual() : arena.pair;
    for (const Wave& w : AllWaves(pair)) {
      for (Promise p : kPlainPromises) {
        if (FulfilsPlain(pair, arena.lower, w, p)) {
          out |= SetOf({star ? Star(p) : p});
        }
      }
    }
  }
  return out;
}

ReducedArena ReduceArena(const Arena& arena,
                         const std::vector<PromiseSet>& rho) {
  ReducedArena out;
  out.value.assign(arena.size(), 0);
  Mask f_sets[6] = {0, 0, 0, 0, 0, 0};
  for (int f : Elements(arena.upper)) {
    const int v = FirstUnmetValue(rho[f]);
    out.value[f] = v;
    f_sets[v] |= Bit(f);
  }
  const Mask remove = f_sets[1] | f_sets[2] | f_sets[3] | f_sets[4];
  out.keep = arena.pair.ground_mask() & ~remove;
  out.arena.pair =
      arena.pair.Reduce(remove, f_sets[1] | f_sets[3], f_sets[1] | f_sets[4]);
  out.arena.upper = Compress(f_sets[0], out.keep);
  out.arena.lower = Local(arena.lower, out.keep);
  return out;
}

absl::StatusOr<Tactic> LiftTactic(const Arena& original,
                                  const ReducedArena& reduced,
                                  const Tactic& t) {
  if (absl::Status s = CheckTactic(reduced.arena, t); !s.ok()) return s;
  const bool starred = IsStarred(t.attained);
  Tactic out;
  out.attained = t.attained;
  out.wave = Lift(t.wave, reduced.keep);
  out.phi.assign(original.size(), P::kBot);
  Mask f_sets[6] = {0, 0, 0, 0, 0, 0};
  for (int f : Elements(original.upper)) f_sets[reduced.value[f]] |= Bit(f);
  for (int f : Elements(original.upper)) {
    Promise p = P::kBot;
    switch (reduced.value[f]) {
      case 0:
        p = t.phi[Local(f, reduced.keep)];
        break;
      case 1:
        p = starred ? P::kBotStar : P::kTop;
        break;
      case 2:
        p = starred ? P::kTopStar : P::kBot;
        break;
      case 3:
        p = starred ? P::kNPlusStar : P::kMPlus;
        break;
      case 4:
        p = starred ? P::kMPlusStar : P::kNPlus;
        break;
      case 5: {
        const bool in_m = Contains(out.wave.s_m, f);
        p = in_m ? P::kMMinus : P::kNMinus;
        if (starred) p = Star(p);
        break;
      }
    }
    out.phi[f] = p;
  }
  // Circuits of a contraction extend by contracted elements.
  const Mask contracted_m =
      starred ? (f_sets[2] | f_sets[4]) : (f_sets[1] | f_sets[3]);
  const Mask contracted_n =
      starred ? (f_sets[2] | f_sets[3]) : (f_sets[1] | f_sets[4]);
  const Matroid m = starred ? original.pair.m.Dual() : original.pair.m;
  const Matroid n = starred ? original.pair.n.Dual() : original.pair.n;
  if (NeedsM(t.attained)) {
    auto c = ExtendCircuit(m, Expand(t.c_m, reduced.keep), contracted_m);
    if (!c) return TheoremViolation("C^M does not extend to a circuit");
    out.c_m = *c;
  }
  if (NeedsN(t.attained)) {
    auto c = ExtendCircuit(n, Expand(t.c_n, reduced.keep), contracted_n);
    if (!c) return TheoremViolation("C^N does not extend to a circuit");
    out.c_n = *c;
  }
  return out;
}

}  // namespace pcbench
