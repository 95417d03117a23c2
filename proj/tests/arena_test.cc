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

#include "doctest.h"
#include "test_util.h"

namespace pcbench {
namespace {

using P = Promise;
using testing::AllPairs;
using testing::OracleRank;
using testing::Pair;
using testing::S;
using testing::U;

Arena MakeArena(const MatroidPair& pair, Mask upper, int lower) {
  return Arena::Make(pair, upper, lower).value();
}

bool OracleIsCircuit(const Matroid& m, Mask c) {
  if (c == 0 || OracleRank(m, c) == Popcount(c)) return false;
  for (int x : Elements(c)) {
    if (OracleRank(m, c & ~Bit(x)) != Popcount(c) - 1) return false;
  }
  return true;
}

Mask Pre(const Arena& a, const Phi& phi, std::initializer_list<P> ps) {
  Mask out = 0;
  for (int f : Elements(a.upper)) {
    for (P p : ps) {
      if (phi[f] == p) out |= Bit(f);
    }
  }
  return out;
}

// Counts plain tactics attaining p straight from the definition, using
// ranks of the original matroids.
int64_t OracleTacticCount(const Arena& a, const Phi& phi, P p) {
  const Matroid& m = a.pair.m;
  const Matroid& n = a.pair.n;
  const Mask con_m = Pre(a, phi, {P::kTop, P::kMPlus});
  const Mask con_n = Pre(a, phi, {P::kTop, P::kNPlus});
  const Mask ground =
      a.pair.ground_mask() & ~Pre(a, phi, {P::kBot, P::kMPlus, P::kNPlus,
                                           P::kTop});
  auto rm = [&](Mask y) { return OracleRank(m, y | con_m) - OracleRank(m, con_m); };
  auto rn = [&](Mask y) { return OracleRank(n, y | con_n) - OracleRank(n, con_n); };
  const Mask pool_m = Pre(a, phi, {P::kTop, P::kMPlus, P::kMMinus});
  const Mask pool_n = Pre(a, phi, {P::kTop, P::kNPlus, P::kNMinus});
  const int e = a.lower;
  const bool need_m = p == P::kTop || p == P::kMPlus || p == P::kMMinus;
  const bool need_n = p == P::kTop || p == P::kNPlus || p == P::kNMinus;
  int64_t count = 0;
  const Mask full = a.pair.ground_mask();
  for (Mask x = 0; x <= full; ++x) {
    if (!IsSubset(x, ground)) continue;
    for (Mask sm = 0; sm <= full; ++sm) {
      for (Mask sn = 0; sn <= full; ++sn) {
        if (!IsSubset(sm | sn, x) || (sm & sn)) continue;
        if (rm(sm) != rm(x) || rn(sn) != rn(x)) continue;
        if (!IsSubset(Pre(a, phi, {P::kMMinus}), sm) ||
            !IsSubset(Pre(a, phi, {P::kNMinus}), sn)) {
          continue;
        }
        const bool out = !Contains(x, e);
        const bool span_m = out && rm(x | Bit(e)) == rm(x);
        const bool span_n = out && rn(x | Bit(e)) == rn(x);
        bool ok = false;
        switch (p) {
          case P::kBot: ok = true; break;
          case P::kMPlus: ok = span_m; break;
          case P::kNPlus: ok = span_n; break;
          case P::kMMinus: ok = Contains(sn, e); break;
          case P::kNMinus: ok = Contains(sm, e); break;
          case P::kTop: ok = span_m && span_n; break;
          default: break;
        }
        if (!ok) continue;
        int64_t cms = 1, cns = 1;
        if (need_m) {
          cms = 0;
          for (Mask c = 0; c <= full; ++c) {
            if (Contains(c, e) && IsSubset(c, sm | pool_m | Bit(e)) &&
                OracleIsCircuit(m, c)) {
              ++cms;
            }
          }
        }
        if (need_n) {
          cns = 0;
          for (Mask c = 0; c <= full; ++c) {
            if (Contains(c, e) && IsSubset(c, sn | pool_n | Bit(e)) &&
                OracleIsCircuit(n, c)) {
              ++cns;
            }
          }
        }
        count += cms * cns;
      }
    }
  }
  return count;
}

// Attainable set from every oracle wave and cowave.
PromiseSet OracleAttainable(const MatroidPair& pair, int e) {
  PromiseSet out = 0;
  for (int star = 0; star < 2; ++star) {
    const MatroidPair p = star ? pair.Dual() : pair;
    const Arena a = MakeArena(p, 0, e);
    const Phi phi(p.size(), P::kBot);
    for (P q : kPlainPromises) {
      if (OracleTacticCount(a, phi, q) > 0) out |= SetOf({star ? Star(q) : q});
    }
  }
  return out;
}

TEST_CASE("arena construction validates the lower edge") {
  const MatroidPair p = Pair(U(1, "ef"), U(1, "ef"));
  CHECK(Arena::Make(p, 0, 0).ok());
  CHECK(HasKind(Arena::Make(p, Bit(0), 0).status(), "invalid-parameter"));
  CHECK(HasKind(Arena::Make(p, 0, 2).status(), "invalid-parameter"));
  CHECK(HasKind(Arena::Make(p, Bit(5), 0).status(), "invalid-parameter"));
}

TEST_CASE("fulfilment examples") {
  const MatroidPair u12 = Pair(U(1, "ef"), U(1, "ef"));
  const Wave w{S(u12.m, "ef"), S(u12.m, "f"), S(u12.m, "e")};
  CHECK(Fulfils(u12, 0, w, P::kMMinus).value());
  CHECK(!Fulfils(u12, 0, w, P::kNMinus).value());
  CHECK(Fulfils(u12, 0, Wave{}, P::kBot).value());
  const MatroidPair u01 = Pair(U(0, "e"), U(0, "e"));
  CHECK(Fulfils(u01, 0, Wave{}, P::kTop).value());
  CHECK(HasKind(Fulfils(u12, 0, Wave{}, P::kTopStar).status(),
                "invalid-parameter"));
  CHECK(HasKind(Fulfils(u12, 0, Wave{S(u12.m, "e"), 0, 0}, P::kBot).status(),
                "invalid-parameter"));
}

TEST_CASE("relying pair examples") {
  const Matroid m = testing::FromCircuits("efg", {"efg"});
  const Matroid n = U(1, "efg");
  const Arena a = MakeArena(Pair(m, n), S(m, "fg"), 0);
  auto ranks_match = [](const Matroid& got, Mask keep, const Matroid& orig,
                        Mask contract) {
    bool ok = true;
    ForEachSubset(keep, [&](Mask y) {
      ok &= got.Rank(Compress(y, keep)) ==
            OracleRank(orig, y | contract) - OracleRank(orig, contract);
    });
    return ok;
  };
  Phi phi(3, P::kBot);
  RelyingPair rp = DeriveRelyingPair(a, phi);
  CHECK(rp.keep == S(m, "e"));
  CHECK(ranks_match(rp.pair.m, rp.keep, m, 0));
  CHECK(ranks_match(rp.pair.n, rp.keep, n, 0));
  phi = {P::kBot, P::kTop, P::kTop};
  rp = DeriveRelyingPair(a, phi);
  CHECK(rp.keep == S(m, "e"));
  CHECK(ranks_match(rp.pair.m, rp.keep, m, S(m, "fg")));
  CHECK(ranks_match(rp.pair.n, rp.keep, n, S(m, "fg")));
  CHECK(rp.pair.n.IsLoop(0));
  phi = {P::kBot, P::kMPlus, P::kMMinus};
  rp = DeriveRelyingPair(a, phi);
  CHECK(rp.keep == S(m, "eg"));
  CHECK(ranks_match(rp.pair.m, rp.keep, m, S(m, "f")));
  CHECK(ranks_match(rp.pair.n, rp.keep, n, 0));
}

TEST_CASE("tactic enumeration examples") {
  const MatroidPair u12 = Pair(U(1, "ef"), U(1, "ef"));
  const Arena a = MakeArena(u12, 0, 0);
  std::vector<Tactic> ts = EnumerateTactics(a, P::kMMinus);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].wave == Wave{S(u12.m, "ef"), S(u12.m, "f"), S(u12.m, "e")});
  CHECK(ts[0].c_m == S(u12.m, "ef"));
  CHECK(CheckTactic(a, ts[0]).ok());

  ts = EnumerateTactics(a, P::kBot);
  REQUIRE(!ts.empty());
  CHECK(ts[0].wave == Wave{});

  const MatroidPair u11 = Pair(U(1, "e"), U(1, "e"));
  CHECK(EnumerateTactics(MakeArena(u11, 0, 0), P::kMPlus).empty());
  CHECK(!FindTactic(MakeArena(u11, 0, 0), Phi(1, P::kBot), P::kMPlus));
}

TEST_CASE("tactic check rejects malformed tactics") {
  const MatroidPair u12 = Pair(U(1, "ef"), U(1, "ef"));
  const Arena a = MakeArena(u12, S(u12.m, "f"), 0);
  Tactic t = FindTactic(a, {P::kBot, P::kMMinus}, P::kMMinus).value();
  CHECK(CheckTactic(a, t).ok());
  CHECK(IsNormalized(a, t));
  CHECK(IsMStrong(t, 1));
  CHECK(!IsNStrong(t, 1));
  Tactic bad = t;
  bad.c_m = 0;
  CHECK(HasKind(CheckTactic(a, bad), "invalid-parameter"));
  bad = t;
  bad.phi[1] = P::kMMinusStar;
  CHECK(HasKind(CheckTactic(a, bad), "invalid-parameter"));
  bad = t;
  bad.attained = P::kNMinus;
  CHECK(HasKind(CheckTactic(a, bad), "invalid-parameter"));
  bad = t;
  bad.phi[1] = P::kTop;
  CHECK(HasKind(CheckTactic(a, bad), "invalid-parameter"));
}

TEST_CASE("tactic search agrees with the definition on small arenas") {
  int arenas = 0;
  for (int n = 1; n <= 3; ++n) {
    const std::vector<MatroidPair> pairs = AllPairs(n);
    for (size_t i = 0; i < pairs.size(); ++i) {
      for (int e = 0; e < n; ++e) {
        const Mask others = pairs[i].ground_mask() & ~Bit(e);
        ForEachSubset(others, [&](Mask upper) {
          const Arena a = MakeArena(pairs[i], upper, e);
          ++arenas;
          for (int star = 0; star < 2; ++star) {
            const Arena plain = star ? a.Dual() : a;
            for (P p : kPlainPromises) {
              const P q = star ? Star(p) : p;
              TacticOptions all;
              all.all_circuits = true;
              const std::vector<Tactic> ts = EnumerateTactics(a, q, all);
              int64_t expected = 0;
              for (const Phi& phi : AllPhis(plain, false)) {
                const int64_t c = OracleTacticCount(plain, phi, p);
                expected += c;
                Phi starred = phi;
                if (star) {
                  for (P& x : starred) x = Star(x);
                }
                std::optional<Tactic> found = FindTactic(a, starred, q);
                CHECK(found.has_value() == (c > 0));
                if (found) CHECK(CheckTactic(a, *found).ok());
              }
              CHECK(static_cast<int64_t>(ts.size()) == expected);
              for (const Tactic& t : ts) {
                CHECK(CheckTactic(a, t).ok());
                CHECK(IsNormalized(a, t));
                CHECK(t.attained == q);
              }
            }
          }
        });
      }
    }
  }
  CHECK(arenas > 100);
}

TEST_CASE("attainable set examples") {
  const Arena u01 = MakeArena(Pair(U(0, "e"), U(0, "e")), 0, 0);
  CHECK(AttainableSet(u01).value() == (kPlainSet | SetOf({P::kBotStar})));
  CHECK(ClassifyAttainable(AttainableSet(u01).value()) == 1);
  const Arena u11 = MakeArena(Pair(U(1, "e"), U(1, "e")), 0, 0);
  CHECK(AttainableSet(u11).value() == (kStarSet | SetOf({P::kBot})));
  CHECK(ClassifyAttainable(AttainableSet(u11).value()) == 2);
  const Arena u12 = MakeArena(Pair(U(1, "ef"), U(1, "ef")), 0, 0);
  CHECK(AttainableSet(u12).value() ==
        SetOf({P::kBot, P::kMMinus, P::kNMinus, P::kBotStar, P::kMMinusStar,
               P::kNMinusStar}));
  CHECK(ClassifyAttainable(AttainableSet(u12).value()) == 5);
  const Arena mixed = MakeArena(Pair(U(0, "e"), U(1, "e")), 0, 0);
  CHECK(ClassifyAttainable(AttainableSet(mixed).value()) == 3);
  const Arena mixed2 = MakeArena(Pair(U(1, "e"), U(0, "e")), 0, 0);
  CHECK(ClassifyAttainable(AttainableSet(mixed2).value()) == 4);
  CHECK(HasKind(AttainableSet(MakeArena(Pair(U(1, "ef"), U(1, "ef")), 2, 0))
                    .status(),
                "invalid-parameter"));
}

TEST_CASE("attainable sets agree with the oracle and fall in five classes") {
  int seen[6] = {0, 0, 0, 0, 0, 0};
  for (int n = 1; n <= 3; ++n) {
    for (const MatroidPair& pair : AllPairs(n)) {
      for (int e = 0; e < n; ++e) {
        const Arena a = MakeArena(pair, 0, e);
        const PromiseSet got = AttainableSet(a).value();
        CHECK(got == AttainableSetBruteForce(a));
        if (n <= 2) CHECK(got == OracleAttainable(pair, e));
        const std::optional<int> cls = ClassifyAttainable(got);
        REQUIRE(cls.has_value());
        ++seen[*cls];
        CHECK(DownClosure(got) == got);
        const std::pair<P, P> pairs[] = {{P::kMPlus, P::kMMinusStar},
                                         {P::kMMinus, P::kMPlusStar},
                                         {P::kNPlus, P::kNMinusStar},
                                         {P::kNMinus, P::kNPlusStar}};
        for (auto [x, y] : pairs) CHECK(Has(got, x) != Has(got, y));
      }
    }
  }
  for (int i = 1; i <= 5; ++i) CHECK(seen[i] > 0);
}

TEST_CASE("reduce arena examples") {
  const Matroid m = U(2, "efg");
  const Matroid n = U(1, "efg");
  const Arena a = MakeArena(Pair(m, n), S(m, "fg"), 0);
  std::vector<PromiseSet> rho(3, 0);
  rho[1] = rho[2] = SetOf({P::kBot});
  ReducedArena r = ReduceArena(a, rho);
  CHECK(r.keep == a.pair.ground_mask());
  CHECK(r.arena.upper == a.upper);
  CHECK(r.arena.lower == 0);
  for (Mask y = 0; y < 8; ++y) {
    CHECK(r.arena.pair.m.Rank(y) == m.Rank(y));
    CHECK(r.arena.pair.n.Rank(y) == n.Rank(y));
  }

  rho[1] = rho[2] = 0;
  r = ReduceArena(a, rho);
  CHECK(r.keep == S(m, "e"));
  CHECK(r.arena.upper == 0);
  CHECK(r.value[1] == 1);
  CHECK(r.value[2] == 1);
  CHECK(r.arena.pair.m.IsLoop(0));
  CHECK(r.arena.pair.n.IsLoop(0));

  // Misses only value 3: f is contracted in M and deleted in N.
  const Arena b = MakeArena(Pair(U(1, "ef"), U(1, "ef")), S(m, "f"), 0);
  rho.assign(2, 0);
  rho[1] = SetOf({P::kTop, P::kTopStar});
  r = ReduceArena(b, rho);
  CHECK(r.value[1] == 3);
  CHECK(r.keep == Bit(0));
  CHECK(r.arena.pair.m.IsLoop(0));
  CHECK(!r.arena.pair.n.IsLoop(0));
}

TEST_CASE("tactics of reduced arenas lift") {
  // Representatives missing value v first, v = 0 (blocking) .. 5.
  const PromiseSet reps[6] = {
      SetOf({P::kBot}),
      0,
      SetOf({P::kTop}),
      SetOf({P::kTop, P::kTopStar}),
      SetOf({P::kTop, P::kTopStar, P::kMPlus}),
      SetOf({P::kTop, P::kTopStar, P::kMPlus, P::kNPlus}),
  };
  for (int v = 0; v < 6; ++v) CHECK(FirstUnmetValue(reps[v]) == v);
  int64_t lifted = 0;
  for (int n = 2; n <= 3; ++n) {
    const std::vector<MatroidPair> pairs = AllPairs(n);
    for (size_t i = 0; i < pairs.size(); ++i) {
      const int e = 0;
      const Mask others = pairs[i].ground_mask() & ~Bit(e);
      ForEachSubset(others, [&](Mask upper) {
        if (upper == 0) return;
        const Arena a = MakeArena(pairs[i], upper, e);
        const std::vector<int> fs = Elements(upper);
        int combos = 1;
        for (size_t k = 0; k < fs.size(); ++k) combos *= 6;
        for (int code = 0; code < combos; ++code) {
          std::vector<PromiseSet> rho(n, 0);
          int c = code;
          for (int f : fs) {
            rho[f] = reps[c % 6];
            c /= 6;
          }
          const ReducedArena r = ReduceArena(a, rho);
          for (int k = 0; k < kNumPromises; ++k) {
            for (const Tactic& t : EnumerateTactics(r.arena, FromIndex(k))) {
              absl::StatusOr<Tactic> up = LiftTactic(a, r, t);
              REQUIRE(up.ok());
              ++lifted;
              CHECK(CheckTactic(a, *up).ok());
              for (int f : fs) {
                if (r.value[f] != 0) CHECK(!Has(rho[f], up->phi[f]));
                if (r.value[f] == 0) {
                  CHECK(up->phi[f] == t.phi[Popcount(r.keep & (Bit(f) - 1))]);
                }
              }
              const Mask kept_upper = Expand(r.arena.upper, r.keep);
              CHECK((up->c_m & kept_upper) ==
                    (Expand(t.c_m, r.keep) & kept_upper));
              CHECK((up->c_n & kept_upper) ==
                    (Expand(t.c_n, r.keep) & kept_upper));
              CHECK(up->wave == Wave{Expand(t.wave.x, r.keep),
                                     Expand(t.wave.s_m, r.keep),
                                     Expand(t.wave.s_n, r.keep)});
            }
          }
        }
      });
    }
  }
  CHECK(lifted > 1000);
}

}  // namespace
}  // namespace pcbench
