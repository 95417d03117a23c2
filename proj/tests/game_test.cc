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

#include "doctest.h"
#include "pcbench/catalog.h"
#include "test_util.h"

namespace pcbench {
namespace {

using P = Promise;
using testing::Pair;
using testing::U;

// Root {e,p} and leaf {p,g}, every node matroid U_{1,2}.
PairTree TwoNode() {
  return PairTree::Make({{"r", Pair(U(1, "ep"), U(1, "ep"))},
                         {"l", Pair(U(1, "pg"), U(1, "pg"))}},
                        {{"r", "l", "p"}}, "r", "e")
      .value();
}

PairTree Single(const MatroidPair& pair, const std::string& lower) {
  return PairTree::Make({{"r", pair}}, {}, "r", lower).value();
}

// Plain promises fulfilled by some wave of the pair at e, straight from the
// definitions: sides disjoint inside X, each side spanning X.
PromiseSet OracleFulfilled(const MatroidPair& pair, int e) {
  const Matroid& m = pair.m;
  const Matroid& n = pair.n;
  const Mask full = pair.ground_mask();
  PromiseSet out = SetOf({P::kBot});
  for (Mask x = 0; x <= full; ++x) {
    const int rm = m.Rank(x), rn = n.Rank(x);
    const bool out_e = !Contains(x, e);
    const bool m_spans_e = m.Rank(x | Bit(e)) == rm;
    const bool n_spans_e = n.Rank(x | Bit(e)) == rn;
    ForEachSubset(x, [&](Mask sm) {
      if (m.Rank(sm) != rm) return;
      ForEachSubset(x & ~sm, [&](Mask sn) {
        if (n.Rank(sn) != rn) return;
        if (out_e && m_spans_e) out |= SetOf({P::kMPlus});
        if (out_e && n_spans_e) out |= SetOf({P::kNPlus});
        if (out_e && m_spans_e && n_spans_e) out |= SetOf({P::kTop});
        if (Contains(sn, e)) out |= SetOf({P::kMMinus});
        if (Contains(sm, e)) out |= SetOf({P::kNMinus});
      });
    });
  }
  return out;
}

// Some wave fulfilling p, found by brute force.
std::optional<Wave> OracleWave(const MatroidPair& pair, int e, Promise p) {
  const Mask full = pair.ground_mask();
  std::optional<Wave> found;
  for (Mask x = 0; x <= full && !found; ++x) {
    ForEachSubset(x, [&](Mask sm) {
      if (found || pair.m.Rank(sm) != pair.m.Rank(x)) return;
      ForEachSubset(x & ~sm, [&](Mask sn) {
        if (found || pair.n.Rank(sn) != pair.n.Rank(x)) return;
        const Wave w{x, sm, sn};
        if (FulfilsPlain(pair, e, w, p)) found = w;
      });
    });
  }
  return found;
}

bool IsEmptyTactic(const Tactic& t) {
  for (Promise p : t.phi) {
    if (Plain(p) != P::kBot) return false;
  }
  return t.wave == Wave{};
}

TEST_CASE("legal tactics") {
  const PairTree t = TwoNode();
  bool empty = false;
  for (const Tactic& k : LegalTactics(t, 1, P::kBot)) empty |= IsEmptyTactic(k);
  CHECK(empty);

  const PairTree coloop =
      PairTree::Make({{"r", Pair(U(1, "ep"), U(1, "ep"))},
                      {"l", Pair(U(1, "p"), U(1, "p"))}},
                     {{"r", "l", "p"}}, "r", "e")
          .value();
  CHECK(LegalTactics(coloop, 1, P::kMPlus).empty());

  bool found = false;
  for (const Tactic& k : LegalTactics(t, 0, P::kMMinus)) {
    // Root ground {e,p}: e = bit 0, p = bit 1.
    if (k.phi[1] == P::kMMinus && k.wave == Wave{0b11, 0b10, 0b01}) found = true;
  }
  CHECK(found);
  CHECK(ChildAt(t, 0, 1) == 1);
  CHECK(ChildAt(t, 0, 0) == -1);
}

TEST_CASE("the two-node example") {
  const PairTree t = TwoNode();
  const SolveResult r = SolvePackingGame(t, P::kMMinus).value();
  CHECK(r.winner == Player::kPacker);
  CHECK(VerifySolveResult(t, r).ok());
  const Tactic& root = r.table.strategy.at({0, P::kMMinus});
  CHECK(root.phi[1] == P::kMMinus);
  CHECK(root.wave == Wave{0b11, 0b10, 0b01});
  const Tactic& leaf = r.table.strategy.at({1, P::kMMinus});
  // Leaf ground {p,g}: p = bit 0, g = bit 1.
  CHECK(leaf.wave == Wave{0b11, 0b10, 0b01});

  const GluedWave glued = StrategyToWave(t, P::kMMinus, r.table.strategy).value();
  // Assembled ground {e,g}.
  CHECK(glued.wave == Wave{0b11, 0b10, 0b01});
  CHECK(glued.reached == std::vector<int>{0, 1});
  REQUIRE(glued.witness_m);
  CHECK(glued.circuit_m == 0b11);
  const MatroidPair assembled = Assemble(t).value();
  CHECK(assembled.m == Matroid::Uniform(1, {"e", "g"}).value());
  CHECK(FulfilsPlain(assembled, 0, glued.wave, P::kMMinus));

  const DerivedStrategy derived =
      WaveToStrategy(t, P::kMMinus, Wave{0b11, 0b10, 0b01}).value();
  CHECK(derived.promise == std::vector<P>{P::kMMinus, P::kMMinus});
  CHECK(derived.strategy.size() == 2);
  CHECK(derived.strategy.at({0, P::kMMinus}) == root);
  CHECK(derived.strategy.at({1, P::kMMinus}) == leaf);

  const Transcript trace =
      PlayTrace(t, P::kMMinus, r.table.strategy, LazyChallenger(t, r.table))
          .value();
  REQUIRE(trace.moves.size() == 3);
  CHECK(trace.moves[0].tactic.has_value());
  CHECK(trace.moves[1].challenge == 1);
  CHECK(trace.moves[1].mover == Player::kCoverina);
  CHECK(trace.moves[1].m_strong);
  CHECK_FALSE(trace.moves[1].n_strong);
  CHECK(trace.moves[2].state == GameState{1, P::kMMinus});
  CHECK(trace.winner == Player::kPacker);
  CHECK(trace.stuck == Player::kCoverina);
}

TEST_CASE("single-node examples") {
  const PairTree coloop = Single(Pair(U(1, "e"), U(1, "e")), "e");
  const SolveResult r = SolvePackingGame(coloop, P::kMMinus).value();
  CHECK(r.winner == Player::kCoverina);
  CHECK(VerifySolveResult(coloop, r).ok());
  const Transcript stuck =
      PlayTrace(coloop, P::kMMinus, r.table.strategy, LazyChallenger(coloop, r.table))
          .value();
  CHECK(stuck.moves.empty());
  CHECK(stuck.winner == Player::kCoverina);
  CHECK(stuck.stuck == Player::kPacker);

  const SolveResult bot = SolvePackingGame(coloop, P::kBot).value();
  CHECK(bot.winner == Player::kPacker);
  const Transcript one =
      PlayTrace(coloop, P::kBot, bot.table.strategy, LazyChallenger(coloop, bot.table))
          .value();
  REQUIRE(one.moves.size() == 1);
  CHECK(IsEmptyTactic(*one.moves[0].tactic));
  CHECK(one.winner == Player::kPacker);

  const GluedWave empty = StrategyToWave(coloop, P::kBot, bot.table.strategy).value();
  CHECK(empty.wave == Wave{});
  const DerivedStrategy all_bot = WaveToStrategy(coloop, P::kBot, Wave{}).value();
  CHECK(all_bot.promise == std::vector<P>{P::kBot});
}

TEST_CASE("Packer wins bottom on any tree") {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const PairTree t = RandomPairTree(seed, {});
    const SolveResult r = SolvePackingGame(t, P::kBot).value();
    CHECK(r.winner == Player::kPacker);
    // The empty wave gives bottom except where the dummy is a loop of the
    // assembled subtree, which the empty side already spans.
    const DerivedStrategy d = WaveToStrategy(t, P::kBot, Wave{}).value();
    for (int u = 1; u < t.nodes(); ++u) {
      auto loop = [&](const TreeOfMatroids& side) {
        const TreeOfMatroids sub = side.Subtree(u).first;
        const Matroid a = Assemble(sub).value();
        for (int i = 0; i < sub.size(); ++i) {
          if (sub.ground[i] == t.shape().dummy[u]) return a.IsLoop(i);
        }
        return false;
      };
      const bool lm = loop(t.m), ln = loop(t.n);
      const P expected = lm && ln ? P::kTop
                         : lm     ? P::kMPlus
                         : ln     ? P::kNPlus
                                  : P::kBot;
      CHECK(d.promise[u] == expected);
    }
  }
}

TEST_CASE("argument validation") {
  const PairTree t = TwoNode();
  CHECK(HasKind(SolvePackingGame(t, P::kTopStar).status(), "invalid-parameter"));
  CHECK(HasKind(SolveCoveringGame(t, P::kTop).status(), "invalid-parameter"));
  // Not a wave, and a wave not fulfilling the promise.
  CHECK(HasKind(WaveToStrategy(t, P::kMMinus, Wave{0b11, 0, 0}).status(),
                "invalid-parameter"));
  CHECK(HasKind(WaveToStrategy(t, P::kMMinus, Wave{}).status(),
                "invalid-parameter"));
  // A strategy that does not cover the challenged leaf.
  const SolveResult r = SolvePackingGame(t, P::kMMinus).value();
  TacticStrategy partial = r.table.strategy;
  partial.erase({1, P::kMMinus});
  CHECK(HasKind(StrategyToWave(t, P::kMMinus, partial).status(),
                "invalid-parameter"));
  absl::StatusOr<Transcript> missing =
      PlayTrace(t, P::kMMinus, partial, LazyChallenger(t, r.table));
  CHECK(HasKind(missing.status(), "invalid-parameter"));
  CHECK(missing.status().message().find("strategy-invalid") != std::string::npos);
  // A tactic claiming the wrong promise.
  TacticStrategy wrong = r.table.strategy;
  wrong.at({0, P::kMMinus}).attained = P::kMPlus;
  CHECK_FALSE(PlayTrace(t, P::kMMinus, wrong, LazyChallenger(t, r.table)).ok());
  CHECK_FALSE(CheckWinningStrategy(t, P::kMMinus, wrong).ok());
  // Challenges must be non-bottom upper edges; passing is only for the stuck.
  auto illegal = [](const GameState&, const Tactic&) -> std::optional<int> {
    return 0;
  };
  CHECK_FALSE(PlayTrace(t, P::kMMinus, r.table.strategy, illegal).ok());
  auto pass = [](const GameState&, const Tactic&) -> std::optional<int> {
    return std::nullopt;
  };
  CHECK_FALSE(PlayTrace(t, P::kMMinus, r.table.strategy, pass).ok());
}

// Runs every check of the game/wave correspondence on one tree.
void CheckTree(const PairTree& t) {
  const MatroidPair assembled = Assemble(t).value();
  const int e = t.lower;
  const PromiseSet waves = OracleFulfilled(assembled, e);
  const PromiseSet cowaves = OracleFulfilled(assembled.Dual(), e);
  for (Promise p : kPlainPromises) {
    const SolveResult pack = SolvePackingGame(t, p).value();
    CHECK((pack.winner == Player::kPacker) == Has(waves, p));
    CHECK(VerifySolveResult(t, pack).ok());
    const SolveResult cover = SolveCoveringGame(t, Star(p)).value();
    CHECK((cover.winner == Player::kCoverina) == Has(cowaves, p));
    CHECK(VerifySolveResult(t, cover).ok());
    // Duality with the dual tree's Packing game.
    const SolveResult dual = SolvePackingGame(t.Dual(), p).value();
    CHECK((dual.winner == Player::kPacker) == (cover.winner == Player::kCoverina));

    if (pack.winner == Player::kPacker) {
      absl::StatusOr<GluedWave> glued = StrategyToWave(t, p, pack.table.strategy);
      REQUIRE_MESSAGE(glued.ok(), glued.status().ToString());
      CHECK(FulfilsPlain(assembled, e, glued->wave, p));
      const Wave w = *OracleWave(assembled, e, p);
      absl::StatusOr<DerivedStrategy> d = WaveToStrategy(t, p, w);
      REQUIRE_MESSAGE(d.ok(), d.status().ToString());
      CHECK(CheckWinningStrategy(t, p, d->strategy).ok());
      absl::StatusOr<GluedWave> back = StrategyToWave(t, p, d->strategy);
      REQUIRE_MESSAGE(back.ok(), back.status().ToString());
      CHECK(FulfilsPlain(assembled, e, back->wave, p));
    }
    if (cover.winner == Player::kCoverina) {
      const Promise q = Star(p);
      absl::StatusOr<GluedWave> glued = StrategyToWave(t, q, cover.table.strategy);
      REQUIRE_MESSAGE(glued.ok(), glued.status().ToString());
      CHECK(FulfilsPlain(assembled.Dual(), e, glued->wave, p));
      const Wave w = *OracleWave(assembled.Dual(), e, p);
      absl::StatusOr<DerivedStrategy> d = WaveToStrategy(t, q, w);
      REQUIRE_MESSAGE(d.ok(), d.status().ToString());
      CHECK(CheckWinningStrategy(t, q, d->strategy).ok());
    }
  }
}

TEST_CASE("game and wave equivalence on random trees") {
  for (uint64_t seed = 0; seed < 120; ++seed) {
    CAPTURE(seed);
    CheckTree(RandomPairTree(seed, {}));
  }
}

TEST_CASE("game and wave equivalence on template trees") {
  const std::vector<PairTree> templates = TemplatePairTrees();
  for (size_t i = 0; i < templates.size(); i += 37) {
    CAPTURE(i);
    CheckTree(templates[i]);
  }
}

TEST_CASE("per-node tables are down-closed in the promise order") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    const PairTree t = RandomPairTree(seed, {});
    const GameTable table = SolveGameTable(t, false);
    for (PromiseSet s : table.wins) {
      for (Promise p : kPlainPromises) {
        for (Promise q : kPlainPromises) {
          if (Has(s, q) && PromiseLeq(p, q)) CHECK(Has(s, p));
        }
      }
    }
  }
}

}  // namespace
}  // namespace pcbench
