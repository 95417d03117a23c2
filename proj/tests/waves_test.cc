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

#include <set>

#include "doctest.h"
#include "test_util.h"

namespace pcbench {
namespace {

using testing::AllPairs;
using testing::OracleRank;
using testing::Pair;
using testing::S;
using testing::U;

// Wave check straight from the definition via the oracle rank.
bool OracleIsWave(const MatroidPair& p, const Wave& w) {
  return IsSubset(w.s_m | w.s_n, w.x) && !(w.s_m & w.s_n) &&
         IsSubset(w.x, p.ground_mask()) &&
         OracleRank(p.m, w.s_m) == OracleRank(p.m, w.x) &&
         OracleRank(p.n, w.s_n) == OracleRank(p.n, w.x);
}

// Every triple of subsets, filtered by the oracle.
std::vector<Wave> OracleWaves(const MatroidPair& p) {
  std::vector<Wave> out;
  const Mask full = p.ground_mask();
  for (Mask x = 0; x <= full; ++x) {
    for (Mask a = 0; a <= full; ++a) {
      for (Mask b = 0; b <= full; ++b) {
        Wave w{x, a, b};
        if (OracleIsWave(p, w)) out.push_back(w);
      }
    }
  }
  return out;
}

// Disjoint (G, H, J) avoiding e, every assignment of the other elements.
template <typename F>
void ForEachSplit(int n, int e, F f) {
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  for (int code = 0; code < total; ++code) {
    Mask sets[4] = {0, 0, 0, 0};
    int c = code;
    bool skip = false;
    for (int i = 0; i < n; ++i) {
      const int which = c % 4;
      c /= 4;
      if (i == e && which != 0) skip = true;
      sets[which] |= Bit(i);
    }
    if (!skip) f(sets[1], sets[2], sets[3]);
  }
}

TEST_CASE("wave verification examples") {
  MatroidPair p = Pair(U(1, "ef"), U(1, "ef"));
  CHECK(IsWave(p, {S(p.m, "ef"), S(p.m, "f"), S(p.m, "e")}));
  CHECK(IsWave(p, {0, 0, 0}));
  MatroidPair q = Pair(U(1, "a"), U(1, "a"));
  CHECK(CheckWave(q, {1, 1, 1}) == WaveDefect::kSidesOverlap);
  CHECK(CheckWave(q, {1, 1, 0}) == WaveDefect::kNNotSpanning);
  CHECK(CheckWave(q, {0, 1, 0}) == WaveDefect::kSideOutsideX);
  CHECK(CheckWave(q, {2, 0, 0}) == WaveDefect::kOutsideGround);
  CHECK(std::string(WaveDefectName(WaveDefect::kSidesOverlap)) ==
        "sides-overlap");
}

TEST_CASE("join examples") {
  MatroidPair p = Pair(U(1, "ef"), U(1, "ef"));
  Wave w{S(p.m, "ef"), S(p.m, "f"), S(p.m, "e")};
  Wave v{S(p.m, "ef"), S(p.m, "e"), S(p.m, "f")};
  CHECK(JoinWaves(p, w, Wave{}).value() == w);
  CHECK(JoinWaves(p, Wave{}, w).value() == w);
  CHECK(JoinWaves(p, w, v).value() == w);
  CHECK(HasKind(JoinWaves(p, Wave{3, 3, 3}, w).status(), "invalid-parameter"));
}

TEST_CASE("maximal wave examples") {
  CHECK(MaximalWave(Pair(U(1, "a"), U(1, "a"))) == Wave{});
  CHECK(MaximalWave(Pair(U(0, "a"), U(0, "a"))) == Wave{1, 0, 0});
  CHECK(MaximalWave(Pair(U(1, "ab"), U(1, "ab"))).x == 3);
}

TEST_CASE("waves agree with the brute-force oracle") {
  for (int n = 0; n <= 3; ++n) {
    for (const MatroidPair& p : AllPairs(n)) {
      std::vector<Wave> oracle = OracleWaves(p);
      std::vector<Wave> got = AllWaves(p);
      std::sort(got.begin(), got.end());
      std::sort(oracle.begin(), oracle.end());
      CHECK(got == oracle);
      Mask covered = 0;
      for (const Wave& w : oracle) covered |= w.x;
      Wave max = MaximalWave(p);
      CHECK(OracleIsWave(p, max));
      CHECK(max.x == covered);
      for (const Wave& a : oracle) {
        for (const Wave& b : oracle) {
          Wave j = JoinWaves(p, a, b).value();
          CHECK(OracleIsWave(p, j));
          for (int g = 0; g < n; ++g) {
            if (IsHindranceFocusing(p, a, g)) {
              CHECK(IsHindranceFocusing(p, j, g));
            }
          }
        }
      }
      // Contracting the maximal wave leaves no nonempty wave.
      MatroidPair rest = p.Reduce(max.x, max.x, max.x);
      CHECK(MaximalWave(rest).x == 0);
    }
  }
}

TEST_CASE("witness searches agree with the oracle") {
  for (int n = 1; n <= 3; ++n) {
    for (const MatroidPair& p : AllPairs(n)) {
      std::vector<Wave> waves = OracleWaves(p);
      for (int e = 0; e < n; ++e) {
        bool m_span = false, n_span = false, both = false, n_side = false,
             m_side = false, focus = false;
        for (const Wave& w : waves) {
          if (!Contains(w.x, e)) {
            const bool sm = OracleRank(p.m, w.x | Bit(e)) ==
                            OracleRank(p.m, w.x);
            const bool sn = OracleRank(p.n, w.x | Bit(e)) ==
                            OracleRank(p.n, w.x);
            m_span |= sm;
            n_span |= sn;
            both |= sm && sn;
          } else {
            n_side |= Contains(w.s_n, e);
            m_side |= Contains(w.s_m, e);
            focus |= !Contains(w.s_m | w.s_n, e);
          }
        }
        auto wm = FindWaveMSpanning(p, e);
        CHECK(wm.has_value() == m_span);
        if (wm) CHECK((OracleIsWave(p, *wm) && MSpans(p, *wm, e)));
        auto wn = FindWaveNSpanning(p, e);
        CHECK(wn.has_value() == n_span);
        if (wn) CHECK((OracleIsWave(p, *wn) && NSpans(p, *wn, e)));
        auto wb = FindWaveBothSpanning(p, e);
        CHECK(wb.has_value() == both);
        auto ns = FindWaveWithNSide(p, e);
        CHECK(ns.has_value() == n_side);
        if (ns) CHECK((OracleIsWave(p, *ns) && Contains(ns->s_n, e)));
        auto ms = FindWaveWithMSide(p, e);
        CHECK(ms.has_value() == m_side);
        if (ms) CHECK((OracleIsWave(p, *ms) && Contains(ms->s_m, e)));
        auto h = FindHindranceFocusing(p, e);
        CHECK(h.has_value() == focus);
        if (h) CHECK(IsHindranceFocusing(p, *h, e));
      }
    }
  }
}

TEST_CASE("exchange chain examples") {
  MatroidPair p = Pair(U(1, "ab"), U(1, "ab"));
  auto chain = FindExchangeChain(p, 1, 1, 1, 0, true).value();
  REQUIRE(chain.has_value());
  CHECK(chain->nodes == std::vector<int>{1, 0});
  CHECK(chain->circuits == std::vector<Mask>{3});
  auto zero = FindExchangeChain(p, 1, 1, 0, 0, true).value();
  REQUIRE(zero.has_value());
  CHECK(zero->nodes == std::vector<int>{0});
  MatroidPair q = Pair(U(1, "ab"), U(1, "ab"));
  CHECK(!FindExchangeChain(q, 0, 1, 1, 0, true).value().has_value());
  CHECK(HasKind(FindExchangeChain(Pair(U(0, "ab"), U(0, "ab")), 1, 0, 1, 0,
                                  true)
                    .status(),
                "invalid-parameter"));
  CHECK(HasKind(FindExchangeChain(p, 0, 0, 1, 0, true).status(),
                "invalid-parameter"));

  auto aug = AugmentChain(p, 1, 1, *chain).value();
  CHECK(aug == std::make_pair(Mask{2}, Mask{2}));
  CHECK(AugmentChain(p, 1, 1, *zero).value() ==
        std::make_pair(Mask{1}, Mask{1}));
  ExchangeChain bogus{{1, 0}, true, {1}};
  CHECK(HasKind(AugmentChain(p, 1, 1, bogus).status(), "invalid-parameter"));
}

// Shortest chain length by enumerating every node sequence.
int OracleChainLength(const MatroidPair& p, Mask i_m, Mask i_n, int y, int x,
                      bool even) {
  const int n = p.size();
  if (y == x) return 0;
  std::vector<std::vector<int>> frontier = {{y}};
  for (int len = 1; len <= 2 * n + 2; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& seq : frontier) {
      const int u = seq.back();
      const bool use_m = ((len - 1) % 2 == 0) == even;
      const Matroid& mat = use_m ? p.m : p.n;
      const Mask base = use_m ? i_m : i_n;
      for (int v = 0; v < n; ++v) {
        if (v == u || Contains(base, u)) continue;
        // Some circuit inside base + u holds both u and v.
        bool ok = false;
        for (Mask c : mat.Circuits()) {
          if (Contains(c, u) && Contains(c, v) && IsSubset(c, base | Bit(u))) {
            ok = true;
          }
        }
        if (!ok) continue;
        if (v == x) return len;
        auto s = seq;
        s.push_back(v);
        next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  return -1;
}

TEST_CASE("exchange chains are shortest and augment correctly") {
  int failures_outside_intersection = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const MatroidPair& p : AllPairs(n)) {
      for (Mask i_m : p.m.Independents()) {
        for (Mask i_n : p.n.Independents()) {
          for (int x : Elements(i_m | i_n)) {
            for (int y = 0; y < n; ++y) {
              for (bool even : {true, false}) {
                auto chain = FindExchangeChain(p, i_m, i_n, y, x, even).value();
                const int len = OracleChainLength(p, i_m, i_n, y, x, even);
                CHECK(chain.has_value() == (len >= 0));
                if (!chain) continue;
                CHECK(static_cast<int>(chain->nodes.size()) - 1 == len);
                CHECK(CheckExchangeChain(p, i_m, i_n, *chain).ok());
                auto aug = AugmentChain(p, i_m, i_n, *chain);
                if (aug.ok()) {
                  CHECK(CheckAugmentation(p, i_m, i_n, y, x, aug->first,
                                          aug->second)
                            .ok());
                  CHECK(Popcount(aug->first) == Popcount(i_m));
                  CHECK(Popcount(aug->second) == Popcount(i_n));
                } else {
                  CHECK(HasKind(aug.status(), "theorem-violation"));
                  if (!Contains(i_m & i_n, x)) ++failures_outside_intersection;
                }
              }
            }
          }
        }
      }
    }
  }
  CHECK(failures_outside_intersection == 0);
}

TEST_CASE("packing covering examples") {
  PCPartition a = SolvePackingCovering(Pair(U(1, "a"), U(1, "a"))).value();
  CHECK(a.p == 0);
  CHECK(a.q == 1);
  CHECK(a.i_m == 1);
  CHECK(a.i_n == 0);
  PCPartition b = SolvePackingCovering(Pair(U(0, "a"), U(0, "a"))).value();
  CHECK(b.p == 1);
  CHECK(b.packing == Wave{1, 0, 0});
  PCPartition c = SolvePackingCovering(Pair(U(1, "ab"), U(1, "ab"))).value();
  CHECK(c.p == 3);
  CHECK(IsWave(Pair(U(1, "ab"), U(1, "ab")), c.packing));
  CHECK(Popcount(c.packing.s_m) == 1);
  CHECK(Popcount(c.packing.s_n) == 1);
}

TEST_CASE("packing covering holds on every small pair, with duality") {
  for (int n = 0; n <= 3; ++n) {
    for (const MatroidPair& p : AllPairs(n)) {
      auto pc = SolvePackingCovering(p);
      REQUIRE(pc.ok());
      CHECK(VerifyPCPartition(p, *pc).ok());
      // The swapped partition is a partition for the dual pair.
      PCPartition swapped;
      swapped.p = pc->q;
      swapped.q = pc->p;
      swapped.packing = {pc->q, pc->i_n, pc->i_m};
      swapped.i_m = pc->p & ~pc->packing.s_m;
      swapped.i_n = pc->p & ~pc->packing.s_n;
      CHECK(VerifyPCPartition(p.Dual(), swapped).ok());
      // The maximal wave is the largest packable part.
      auto dual = SolvePackingCovering(p.Dual());
      REQUIRE(dual.ok());
      CHECK(IsSubset(pc->q, dual->p));
    }
  }
}

TEST_CASE("wave or cohindrance") {
  auto loop = FindWaveOrCohindrance(Pair(U(0, "e"), U(0, "e")), 0).value();
  CHECK(loop.is_wave);
  CHECK(loop.witness == Wave{1, 0, 0});
  auto coloop = FindWaveOrCohindrance(Pair(U(1, "e"), U(1, "e")), 0).value();
  CHECK(!coloop.is_wave);
  CHECK(coloop.witness == Wave{1, 0, 0});
  MatroidPair p = Pair(U(1, "ef"), U(1, "ef"));
  auto two = FindWaveOrCohindrance(p, 0).value();
  CHECK(two.is_wave);
  CHECK(two.witness.x == 3);
  CHECK(IsWave(p, two.witness));
  for (int n = 1; n <= 3; ++n) {
    for (const MatroidPair& q : AllPairs(n)) {
      for (int e = 0; e < n; ++e) {
        auto r = FindWaveOrCohindrance(q, e);
        REQUIRE(r.ok());
        if (r->is_wave) {
          CHECK((IsWave(q, r->witness) && Contains(r->witness.x, e)));
        } else {
          CHECK(IsHindranceFocusing(q.Dual(), r->witness, e));
        }
      }
    }
  }
}

TEST_CASE("lemma outcomes") {
  MatroidPair coloop = Pair(U(1, "e"), U(1, "e"));
  auto a = VerifyLemma27(coloop, 0, 0, 0, 0).value();
  CHECK(a.case_index == 3);
  CHECK(a.circuit == 1);
  MatroidPair two = Pair(U(1, "ef"), U(1, "ef"));
  auto b = VerifyLemma27(two, 0, 0, 0, 0).value();
  CHECK(b.case_index == 1);
  CHECK(Contains(b.witness.s_n, 0));
  auto c = VerifyLemma17(Pair(U(0, "e"), U(0, "e")), 0, 0, 0).value();
  CHECK(c.case_index == 1);
  auto d = VerifyLemma17(coloop, 0, 0, 0).value();
  CHECK(d.case_index == 3);
  CHECK(HasKind(VerifyLemma27(two, 1, 0, 0, 0).status(), "invalid-parameter"));
  CHECK(HasKind(VerifyLemma17(two, 2, 2, 0).status(), "invalid-parameter"));
}

TEST_CASE("lemma outcomes always exist and re-verify on small pairs") {
  for (int n = 1; n <= 3; ++n) {
    for (const MatroidPair& p : AllPairs(n)) {
      for (int e = 0; e < n; ++e) {
        ForEachSplit(n, e, [&](Mask g, Mask h, Mask j) {
          auto o27 = VerifyLemma27(p, g, h, j, e);
          REQUIRE(o27.ok());
          CHECK(CheckLemma27Outcome(p, g, h, j, e, *o27).ok());
          auto o17a = VerifyLemma17(p, h, j, e);
          REQUIRE(o17a.ok());
          CHECK(CheckLemma17Outcome(p, h, j, e, *o17a).ok());
          auto o17b = VerifyLemma17(p, g | h, j, e);
          REQUIRE(o17b.ok());
          CHECK(CheckLemma17Outcome(p, g | h, j, e, *o17b).ok());
        });
      }
    }
  }
}

}  // namespace
}  // namespace pcbench
