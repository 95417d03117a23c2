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

#include "pcbench/waves.h"

#include <algorithm>
#include <array>
#include <cassert>
#include <deque>
#include <limits>

#include "absl/strings/str_cat.h"

namespace pcbench {
namespace {

// Position of original element e inside the minor with ground `keep`.
int Local(int e, Mask keep) { return Popcount(keep & (Bit(e) - 1)); }

Wave Lift(const Wave& w, Mask keep) {
  return {Expand(w.x, keep), Expand(w.s_m, keep), Expand(w.s_n, keep)};
}

Wave Lower(const Wave& w, Mask keep) {
  return {Compress(w.x, keep), Compress(w.s_m, keep), Compress(w.s_n, keep)};
}

// Drops elements of s in increasing order while the rank is kept, leaving a
// basis of s.
Mask Shrink(const Matroid& m, Mask s) {
  const int r = m.Rank(s);
  for (int x : Elements(s)) {
    if (m.Rank(s & ~Bit(x)) == r) s &= ~Bit(x);
  }
  return s;
}

bool IsCircuitOf(const Matroid& m, Mask c) {
  if (c == 0 || m.IsIndependent(c)) return false;
  for (int x : Elements(c)) {
    if (!m.IsIndependent(c & ~Bit(x))) return false;
  }
  return true;
}

// A cohindrance (Y, T^M, T^N) of `pair` focusing on `e` whose M-side
// contains b - e, for some b among `cocircuits` (original indexing) with
// e in b, b inside `keep` and b avoiding `forbid`. Returns the wave in the
// original indexing together with b.
std::optional<std::pair<Wave, Mask>> FindCohindranceWithCocircuit(
    const MatroidPair& pair, Mask keep, int e,
    const std::vector<Mask>& cocircuits, Mask forbid) {
  const MatroidPair dual = pair.Dual();
  const int le = Local(e, keep);
  const Mask full = dual.ground_mask();
  for (Mask b : cocircuits) {
    if (!Contains(b, e) || (b & forbid) || !IsSubset(b, keep)) continue;
    const Mask lb = Compress(b, keep);
    const Mask lb_rest = lb & ~Bit(le);
    std::optional<Wave> found;
    ForEachSubset(full & ~lb, [&](Mask extra) {
      if (found) return;
      const Mask y = lb | extra;
      const int rm = dual.m.Rank(y);
      const int rn = dual.n.Rank(y);
      ForEachSubset(extra, [&](Mask t_n) {
        if (found) return;
        const Mask t_m = y & ~Bit(le) & ~t_n;
        if (dual.n.Rank(t_n) == rn && dual.m.Rank(t_m) == rm &&
            IsSubset(lb_rest, t_m)) {
          found = Wave{y, t_m, t_n};
        }
      });
    });
    if (found) return std::make_pair(Lift(*found, keep), b);
  }
  return std::nullopt;
}

// A wave (X, S^M, S^N) of `pair` with e in S^M and o - e inside S^N, for
// some o among `circuits` with e in o, o inside `keep` and o avoiding
// `forbid`.
std::optional<std::pair<Wave, Mask>> FindMSideWaveWithCircuit(
    const MatroidPair& pair, Mask keep, int e,
    const std::vector<Mask>& circuits, Mask forbid) {
  const int le = Local(e, keep);
  const Mask full = pair.ground_mask();
  for (Mask o : circuits) {
    if (!Contains(o, e) || (o & forbid) || !IsSubset(o, keep)) continue;
    const Mask lo = Compress(o, keep);
    std::optional<Wave> found;
    ForEachSubset(full & ~lo, [&](Mask extra) {
      if (found) return;
      const Mask x = lo | extra;
      const int rm = pair.m.Rank(x);
      const int rn = pair.n.Rank(x);
      ForEachSubset(extra, [&](Mask more) {
        if (found) return;
        const Mask s_m = more | Bit(le);
        const Mask s_n = x & ~s_m;
        if (pair.m.Rank(s_m) == rm && pair.n.Rank(s_n) == rn) {
          found = Wave{x, s_m, s_n};
        }
      });
    });
    if (found) return std::make_pair(Lift(*found, keep), o);
  }
  return std::nullopt;
}

}  // namespace

const char* WaveDefectName(WaveDefect d) {
  switch (d) {
    case WaveDefect::kNone:
      return "ok";
    case WaveDefect::kOutsideGround:
      return "outside-ground";
    case WaveDefect::kSideOutsideX:
      return "side-outside-X";
    case WaveDefect::kSidesOverlap:
      return "sides-overlap";
    case WaveDefect::kMNotSpanning:
      return "M-side-not-spanning";
    case WaveDefect::kNNotSpanning:
      return "N-side-not-spanning";
  }
  return "unknown";
}

WaveDefect CheckWave(const MatroidPair& pair, const Wave& w) {
  if (!IsSubset(w.x, pair.ground_mask())) return WaveDefect::kOutsideGround;
  if (!IsSubset(w.s_m | w.s_n, w.x)) return WaveDefect::kSideOutsideX;
  if (w.s_m & w.s_n) return WaveDefect::kSidesOverlap;
  if (pair.m.Rank(w.s_m) != pair.m.Rank(w.x)) return WaveDefect::kMNotSpanning;
  if (pair.n.Rank(w.s_n) != pair.n.Rank(w.x)) return WaveDefect::kNNotSpanning;
  return WaveDefect::kNone;
}

bool IsHindranceFocusing(const MatroidPair& pair, const Wave& w, int e) {
  return IsWave(pair, w) && Contains(w.x, e) && !Contains(w.s_m | w.s_n, e);
}

bool MSpans(const MatroidPair& pair, const Wave& w, int e) {
  return !Contains(w.x, e) && pair.m.Spans(w.x, Bit(e));
}

bool NSpans(const MatroidPair& pair, const Wave& w, int e) {
  return !Contains(w.x, e) && pair.n.Spans(w.x, Bit(e));
}

std::string FormatWave(const Matroid& m, const Wave& w) {
  return absl::StrCat("(", m.Format(w.x), ",", m.Format(w.s_m), ",",
                      m.Format(w.s_n), ")");
}

Wave JoinUnchecked(const Wave& a, const Wave& b) {
  return {a.x | b.x, a.s_m | (b.s_m & ~a.x), a.s_n | (b.s_n & ~a.x)};
}

absl::StatusOr<Wave> JoinWaves(const MatroidPair& pair, const Wave& a,
                               const Wave& b) {
  if (!IsWave(pair, a) || !IsWave(pair, b)) {
    return InvalidParameter("join_waves needs two valid waves");
  }
  return JoinUnchecked(a, b);
}

std::optional<Wave> WaveOn(const MatroidPair& pair, Mask x) {
  const int rm = pair.m.Rank(x);
  const int rn = pair.n.Rank(x);
  std::optional<Wave> found;
  ForEachSubset(x, [&](Mask s_m) {
    if (found) return;
    if (pair.m.Rank(s_m) == rm && pair.n.Rank(x & ~s_m) == rn) {
      found = Wave{x, Shrink(pair.m, s_m), Shrink(pair.n, x & ~s_m)};
    }
  });
  return found;
}

Wave MaximalWave(const MatroidPair& pair) {
  Mask covered = 0;
  for (Mask x = 1; x <= pair.ground_mask(); ++x) {
    if (IsSubset(x, covered)) continue;
    if (WaveOn(pair, x)) covered |= x;
  }
  std::optional<Wave> w = WaveOn(pair, covered);
  assert(w.has_value());
  return *w;
}

std::vector<Wave> AllWaves(const MatroidPair& pair) {
  std::vector<Wave> out;
  for (Mask x = 0; x <= pair.ground_mask(); ++x) {
    ForEachSubset(x, [&](Mask s_m) {
      ForEachSubset(x & ~s_m, [&](Mask s_n) {
        Wave w{x, s_m, s_n};
        if (IsWave(pair, w)) out.push_back(w);
      });
    });
  }
  return out;
}

std::optional<Wave> FindWaveMSpanning(const MatroidPair& pair, int e) {
  const Mask keep = pair.ground_mask() & ~Bit(e);
  Wave w = Lift(MaximalWave(pair.Reduce(Bit(e), 0, 0)), keep);
  if (MSpans(pair, w, e)) return w;
  return std::nullopt;
}

std::optional<Wave> FindWaveNSpanning(const MatroidPair& pair, int e) {
  const Mask keep = pair.ground_mask() & ~Bit(e);
  Wave w = Lift(MaximalWave(pair.Reduce(Bit(e), 0, 0)), keep);
  if (NSpans(pair, w, e)) return w;
  return std::nullopt;
}

std::optional<Wave> FindWaveBothSpanning(const MatroidPair& pair, int e) {
  const Mask keep = pair.ground_mask() & ~Bit(e);
  Wave w = Lift(MaximalWave(pair.Reduce(Bit(e), 0, 0)), keep);
  if (MSpans(pair, w, e) && NSpans(pair, w, e)) return w;
  return std::nullopt;
}

std::optional<Wave> FindWaveWithNSide(const MatroidPair& pair, int e) {
  const Mask keep = pair.ground_mask() & ~Bit(e);
  Wave w = Lift(MaximalWave(pair.Reduce(Bit(e), 0, Bit(e))), keep);
  if (!pair.m.Spans(w.x, Bit(e))) return std::nullopt;
  return Wave{w.x | Bit(e), w.s_m, w.s_n | Bit(e)};
}

std::optional<Wave> FindWaveWithMSide(const MatroidPair& pair, int e) {
  const Mask keep = pair.ground_mask() & ~Bit(e);
  Wave w = Lift(MaximalWave(pair.Reduce(Bit(e), Bit(e), 0)), keep);
  if (!pair.n.Spans(w.x, Bit(e))) return std::nullopt;
  return Wave{w.x | Bit(e), w.s_m | Bit(e), w.s_n};
}

std::optional<Wave> FindHindranceFocusing(const MatroidPair& pair, int e) {
  std::optional<Wave> w = FindWaveBothSpanning(pair, e);
  if (!w) return std::nullopt;
  return Wave{w->x | Bit(e), w->s_m, w->s_n};
}

absl::Status CheckExchangeChain(const MatroidPair& pair, Mask i_m, Mask i_n,
                                const ExchangeChain& chain) {
  if (chain.nodes.empty()) return InvalidParameter("empty chain");
  const size_t n = chain.nodes.size() - 1;
  if (chain.circuits.size() != n) {
    return InvalidParameter("chain needs one circuit per step");
  }
  const int x = chain.nodes.back();
  if (!Contains(i_m | i_n, x)) {
    return InvalidParameter("chain must end in I_M or I_N");
  }
  for (size_t i = 0; i < n; ++i) {
    const int a = chain.nodes[i];
    const int b = chain.nodes[i + 1];
    if (a == b) return InvalidParameter("consecutive chain nodes coincide");
    const bool use_m = (i % 2 == 0) == chain.even;
    const Matroid& mat = use_m ? pair.m : pair.n;
    const Mask base = use_m ? i_m : i_n;
    const Mask c = chain.circuits[i];
    if (!IsCircuitOf(mat, c) || !Contains(c, a) || !Contains(c, b) ||
        !IsSubset(c, base | Bit(a))) {
      return InvalidParameter(absl::StrCat("chain step ", i, " has no valid ",
                                           use_m ? "M" : "N", "-circuit"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<std::optional<ExchangeChain>> FindExchangeChain(
    const MatroidPair& pair, Mask i_m, Mask i_n, int y, int x, bool even) {
  const int n = pair.size();
  if (y < 0 || y >= n || x < 0 || x >= n) {
    return InvalidParameter("chain endpoints outside the ground set");
  }
  if (!pair.m.IsIndependent(i_m) || !pair.n.IsIndependent(i_n)) {
    return InvalidParameter("I_M and I_N must be independent");
  }
  if (!Contains(i_m | i_n, x)) {
    return InvalidParameter("chain target must lie in I_M or I_N");
  }
  if (y == x) return ExchangeChain{{y}, even, {}};
  // State (u, p): at u, next step has parity p.
  auto matroid_for = [&](int p) -> const Matroid& {
    return (p == 0) == even ? pair.m : pair.n;
  };
  auto base_for = [&](int p) { return (p == 0) == even ? i_m : i_n; };
  // Fundamental circuit of u over the step's base, or 0 if none.
  std::array<std::vector<Mask>, 2> fundamental;
  for (int p = 0; p < 2; ++p) {
    const Matroid& mat = matroid_for(p);
    const Mask base = base_for(p);
    fundamental[p].assign(n, 0);
    for (int u = 0; u < n; ++u) {
      if (Contains(base, u) || mat.IsIndependent(base | Bit(u))) continue;
      Mask c = Bit(u);
      for (int v : Elements(base)) {
        if (mat.IsIndependent((base | Bit(u)) & ~Bit(v))) c |= Bit(v);
      }
      fundamental[p][u] = c;
    }
  }
  constexpr int kInf = std::numeric_limits<int>::max();
  std::array<std::vector<int>, 2> dist = {std::vector<int>(n, kInf),
                                          std::vector<int>(n, kInf)};
  std::deque<std::pair<int, int>> queue;
  for (int p = 0; p < 2; ++p) {
    dist[p][x] = 0;
    queue.push_back({x, p});
  }
  while (!queue.empty()) {
    auto [v, q] = queue.front();
    queue.pop_front();
    const int p = 1 - q;
    for (int u = 0; u < n; ++u) {
      if (u == v || dist[p][u] != kInf) continue;
      if (Contains(fundamental[p][u], v)) {
        dist[p][u] = dist[q][v] + 1;
        queue.push_back({u, p});
      }
    }
  }
  if (dist[0][y] == kInf) return std::optional<ExchangeChain>();
  ExchangeChain chain{{y}, even, {}};
  int u = y;
  int p = 0;
  while (dist[p][u] > 0) {
    for (int v = 0; v < n; ++v) {
      if (v != u && Contains(fundamental[p][u], v) &&
          dist[1 - p][v] == dist[p][u] - 1) {
        chain.circuits.push_back(fundamental[p][u]);
        chain.nodes.push_back(v);
        u = v;
        p = 1 - p;
        break;
      }
    }
    if (u == x) break;
  }
  return std::optional<ExchangeChain>(chain);
}

absl::Status CheckAugmentation(const MatroidPair& pair, Mask b_m, Mask b_n,
                               int z, int f, Mask b_m2, Mask b_n2) {
  const Mask target = z == f ? (b_m | b_n) : ((b_m | b_n | Bit(z)) & ~Bit(f));
  if (!pair.m.IsIndependent(b_m2) || !pair.n.IsIndependent(b_n2)) {
    return InvalidParameter("augmented sets are not independent");
  }
  if ((b_m2 | b_n2) != target) {
    return InvalidParameter("augmented union differs from B_M u B_N + z - f");
  }
  if (pair.m.Closure(b_m2) != pair.m.Closure(b_m) ||
      pair.n.Closure(b_n2) != pair.n.Closure(b_n)) {
    return InvalidParameter("augmentation changed a closure");
  }
  return absl::OkStatus();
}

absl::StatusOr<std::pair<Mask, Mask>> AugmentChain(const MatroidPair& pair,
                                                   Mask b_m, Mask b_n,
                                                   const ExchangeChain& chain) {
  if (absl::Status s = CheckExchangeChain(pair, b_m, b_n, chain); !s.ok()) {
    return s;
  }
  const int z = chain.nodes.front();
  const int f = chain.nodes.back();
  if (chain.nodes.size() == 1) return std::make_pair(b_m, b_n);
  std::array<Mask, 2> sides = {b_m, b_n};
  for (size_t i = 0; i + 1 < chain.nodes.size(); ++i) {
    const int s = (i % 2 == 0) == chain.even ? 0 : 1;
    sides[s] = (sides[s] | Bit(chain.nodes[i])) & ~Bit(chain.nodes[i + 1]);
  }
  auto ok = [&](Mask a, Mask b) {
    return CheckAugmentation(pair, b_m, b_n, z, f, a, b).ok();
  };
  if (ok(sides[0], sides[1])) return std::make_pair(sides[0], sides[1]);
  // The end of the chain may still sit in the other set; swap it for a
  // spanned element of the target union.
  const Mask target = (b_m | b_n | Bit(z)) & ~Bit(f);
  for (int s = 0; s < 2; ++s) {
    if (!Contains(sides[s], f)) continue;
    const Matroid& mat = s == 0 ? pair.m : pair.n;
    const Mask span = mat.Closure(s == 0 ? b_m : b_n);
    const Mask rest = sides[s] & ~Bit(f);
    for (int g : Elements(target & span & ~rest)) {
      std::array<Mask, 2> trial = sides;
      trial[s] = rest | Bit(g);
      if (ok(trial[0], trial[1])) return std::make_pair(trial[0], trial[1]);
    }
  }
  // Exhaustive fallback over the target union.
  const Mask span_n = pair.n.Closure(b_n);
  const int rank_n = pair.n.Rank(b_n);
  std::optional<std::pair<Mask, Mask>> found;
  ForEachSubset(target, [&](Mask a) {
    if (found || !pair.m.IsIndependent(a)) return;
    if (pair.m.Closure(a) != pair.m.Closure(b_m)) return;
    Mask b = target & ~a;
    if (!IsSubset(b, span_n) || !pair.n.IsIndependent(b)) return;
    for (int g : Elements(target & span_n & ~b)) {
      if (pair.n.Rank(b) == rank_n) break;
      if (pair.n.IsIndependent(b | Bit(g))) b |= Bit(g);
    }
    if (ok(a, b)) found = std::make_pair(a, b);
  });
  if (found) return *found;
  return TheoremViolation(absl::StrCat(
      "no augmentation exists for B_M=", pair.m.Format(b_m),
      " B_N=", pair.m.Format(b_n), " along a chain from ",
      pair.m.ground()[z], " to ", pair.m.ground()[f]));
}

absl::StatusOr<PCPartition> SolvePackingCovering(const MatroidPair& pair) {
  PCPartition pc;
  pc.packing = MaximalWave(pair);
  pc.p = pc.packing.x;
  pc.q = pair.ground_mask() & ~pc.p;
  const int base_m = pair.m.Rank(pc.p);
  const int base_n = pair.n.Rank(pc.p);
  bool found = false;
  ForEachSubset(pc.q, [&](Mask i_n) {
    if (found) return;
    const Mask i_m = pc.q & ~i_n;
    if (pair.m.Rank(i_m | pc.p) - base_m == Popcount(i_m) &&
        pair.n.Rank(i_n | pc.p) - base_n == Popcount(i_n)) {
      pc.i_m = i_m;
      pc.i_n = i_n;
      found = true;
    }
  });
  if (!found) {
    return TheoremViolation("complement of the maximal wave has no covering");
  }
  if (absl::Status s = VerifyPCPartition(pair, pc); !s.ok()) return s;
  return pc;
}

absl::Status VerifyPCPartition(const MatroidPair& pair,
                               const PCPartition& pc) {
  if ((pc.p & pc.q) || (pc.p | pc.q) != pair.ground_mask()) {
    return InvalidParameter("P and Q must partition the ground set");
  }
  if (pc.packing.x != pc.p || !IsWave(pair, pc.packing)) {
    return InvalidParameter("packing is not a wave on P");
  }
  if ((pc.i_m | pc.i_n) != pc.q) {
    return InvalidParameter("covering does not cover Q");
  }
  const int base_m = pair.m.Rank(pc.p);
  const int base_n = pair.n.Rank(pc.p);
  if (!IsSubset(pc.i_m | pc.i_n, pc.q) ||
      pair.m.Rank(pc.i_m | pc.p) - base_m != Popcount(pc.i_m) ||
      pair.n.Rank(pc.i_n | pc.p) - base_n != Popcount(pc.i_n)) {
    return InvalidParameter("covering sets are not independent in M.Q, N.Q");
  }
  return absl::OkStatus();
}

absl::StatusOr<WaveOrCohindrance> FindWaveOrCohindrance(
    const MatroidPair& pair, int e) {
  if (e < 0 || e >= pair.size()) return InvalidParameter("e outside ground");
  Wave w = MaximalWave(pair);
  if (Contains(w.x, e)) return WaveOrCohindrance{true, w};
  if (std::optional<Wave> c = FindHindranceFocusing(pair.Dual(), e)) {
    return WaveOrCohindrance{false, *c};
  }
  return TheoremViolation(
      absl::StrCat("neither a wave containing nor a cohindrance focusing on ",
                   pair.m.ground()[e]));
}

absl::StatusOr<LemmaOutcome> VerifyLemma27(const MatroidPair& pair, Mask g,
                                           Mask h, Mask j, int e) {
  const Mask full = pair.ground_mask();
  if ((g & h) || (g & j) || (h & j) || !IsSubset(g | h | j, full) ||
      e < 0 || e >= pair.size() || Contains(g | h | j, e)) {
    return InvalidParameter("lemma27 needs disjoint G, H, J avoiding e");
  }
  {
    const Mask keep = full & ~(h | j);
    MatroidPair minor = pair.Reduce(h | j, h | j, h | j);
    if (auto w = FindWaveWithNSide(minor, Local(e, keep))) {
      return LemmaOutcome{1, Lift(*w, keep), 0, 0};
    }
  }
  {
    const Mask keep = full & ~(g | j);
    MatroidPair minor = pair.Reduce(g | j, 0, j);
    if (auto w = FindWaveNSpanning(minor, Local(e, keep))) {
      return LemmaOutcome{2, Lift(*w, keep), 0, 0};
    }
  }
  const std::vector<Mask> cocircuits = pair.m.Cocircuits();
  std::optional<LemmaOutcome> out;
  ForEachSubset(g, [&](Mask g2) {
    if (out) return;
    const Mask keep = full & ~(g2 | j);
    MatroidPair minor = pair.Reduce(g2 | j, 0, j);
    if (auto found =
            FindCohindranceWithCocircuit(minor, keep, e, cocircuits, h)) {
      out = LemmaOutcome{3, found->first, g2, found->second};
    }
  });
  if (out) return *out;
  return TheoremViolation("lemma27: no outcome holds");
}

absl::Status CheckLemma27Outcome(const MatroidPair& pair, Mask g, Mask h,
                                 Mask j, int e, const LemmaOutcome& out) {
  const Mask full = pair.ground_mask();
  auto fail = [&](const char* why) {
    return TheoremViolation(absl::StrCat("lemma27 outcome ", out.case_index,
                                         " does not verify: ", why));
  };
  switch (out.case_index) {
    case 1: {
      const Mask keep = full & ~(h | j);
      MatroidPair minor = pair.Reduce(h | j, h | j, h | j);
      if (!IsSubset(out.witness.x, keep) ||
          !IsWave(minor, Lower(out.witness, keep)) ||
          !Contains(out.witness.s_n, e)) {
        return fail("not a wave with e on the N-side");
      }
      return absl::OkStatus();
    }
    case 2: {
      const Mask keep = full & ~(g | j);
      MatroidPair minor = pair.Reduce(g | j, 0, j);
      if (!IsSubset(out.witness.x, keep) ||
          !IsWave(minor, Lower(out.witness, keep)) ||
          !NSpans(minor, Lower(out.witness, keep), Local(e, keep))) {
        return fail("not a wave N-spanning e");
      }
      return absl::OkStatus();
    }
    case 3: {
      if (!IsSubset(out.aux, g)) return fail("G' is not inside G");
      const Mask keep = full & ~(out.aux | j);
      MatroidPair minor = pair.Reduce(out.aux | j, 0, j);
      if (!IsSubset(out.witness.x, keep) ||
          !IsHindranceFocusing(minor.Dual(), Lower(out.witness, keep),
                               Local(e, keep))) {
        return fail("not a cohindrance focusing on e");
      }
      const Mask b = out.circuit;
      if (!IsCircuitOf(pair.m.Dual(), b) || !Contains(b, e) ||
          !IsSubset(b, (out.witness.s_m | Bit(e)) & ~h)) {
        return fail("b is not a suitable M-cocircuit");
      }
      return absl::OkStatus();
    }
  }
  return fail("unknown case");
}

absl::StatusOr<LemmaOutcome> VerifyLemma17(const MatroidPair& pair, Mask h,
                                           Mask j, int e) {
  const Mask full = pair.ground_mask();
  if ((h & j) || !IsSubset(h | j, full) || e < 0 || e >= pair.size() ||
      Contains(h | j, e)) {
    return InvalidParameter("lemma17 needs disjoint H, J avoiding e");
  }
  std::optional<LemmaOutcome> out;
  ForEachSubset(h, [&](Mask h2) {
    if (out) return;
    const Mask keep = full & ~(h2 | j);
    MatroidPair minor = pair.Reduce(h2 | j, h2 | j, j);
    if (auto w = FindWaveMSpanning(minor, Local(e, keep))) {
      out = LemmaOutcome{1, Lift(*w, keep), h2, 0};
    }
  });
  if (out) return *out;
  const std::vector<Mask> circuits = pair.n.Circuits();
  ForEachSubset(j, [&](Mask j2) {
    if (out) return;
    const Mask keep = full & ~j2;
    MatroidPair minor = pair.Reduce(j2, j2, j2);
    if (auto found = FindMSideWaveWithCircuit(minor, keep, e, circuits, h)) {
      out = LemmaOutcome{2, found->first, j2, found->second};
    }
  });
  if (out) return *out;
  const std::vector<Mask> cocircuits = pair.m.Cocircuits();
  ForEachSubset(h, [&](Mask h2) {
    if (out) return;
    const Mask keep = full & ~h2;
    MatroidPair minor = pair.Reduce(h2, h2, 0);
    if (auto found =
            FindCohindranceWithCocircuit(minor, keep, e, cocircuits, j)) {
      out = LemmaOutcome{3, found->first, h2, found->second};
    }
  });
  if (out) return *out;
  return TheoremViolation("lemma17: no outcome holds");
}

absl::Status CheckLemma17Outcome(const MatroidPair& pair, Mask h, Mask j,
                                 int e, const LemmaOutcome& out) {
  const Mask full = pair.ground_mask();
  auto fail = [&](const char* why) {
    return TheoremViolation(absl::StrCat("lemma17 outcome ", out.case_index,
                                         " does not verify: ", why));
  };
  switch (out.case_index) {
    case 1: {
      if (!IsSubset(out.aux, h)) return fail("H' is not inside H");
      const Mask keep = full & ~(out.aux | j);
      MatroidPair minor = pair.Reduce(out.aux | j, out.aux | j, j);
      const Wave w = Lower(out.witness, keep);
      if (!IsSubset(out.witness.x, keep) || !IsWave(minor, w) ||
          !MSpans(minor, w, Local(e, keep))) {
        return fail("not a wave M-spanning e");
      }
      return absl::OkStatus();
    }
    case 2: {
      if (!IsSubset(out.aux, j)) return fail("J' is not inside J");
      const Mask keep = full & ~out.aux;
      MatroidPair minor = pair.Reduce(out.aux, out.aux, out.aux);
      if (!IsSubset(out.witness.x, keep) ||
          !IsWave(minor, Lower(out.witness, keep)) ||
          !Contains(out.witness.s_m, e)) {
        return fail("not a wave with e on the M-side");
      }
      const Mask o = out.circuit;
      if (!IsCircuitOf(pair.n, o) || !Contains(o, e) ||
          !IsSubset(o, (out.witness.s_n | Bit(e)) & ~h)) {
        return fail("o is not a suitable N-circuit");
      }
      return absl::OkStatus();
    }
    case 3: {
      if (!IsSubset(out.aux, h)) return fail("H' is not inside H");
      const Mask keep = full & ~out.aux;
      MatroidPair minor = pair.Reduce(out.aux, out.aux, 0);
      if (!IsSubset(out.witness.x, keep) ||
          !IsHindranceFocusing(minor.Dual(), Lower(out.witness, keep),
                               Local(e, keep))) {
        return fail("not a cohindrance focusing on e");
      }
      const Mask b = out.circuit;
      if (!IsCircuitOf(pair.m.Dual(), b) || !Contains(b, e) ||
          !IsSubset(b, (out.witness.s_m | Bit(e)) & ~j)) {
        return fail("b is not a suitable M-cocircuit");
      }
      return absl::OkStatus();
    }
  }
  return fail("unknown case");
}

}  // namespace pcbench
