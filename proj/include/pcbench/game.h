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

#ifndef PCBENCH_GAME_H_
#define PCBENCH_GAME_H_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pcbench/arena.h"
#include "pcbench/promise.h"
#include "pcbench/tree.h"
#include "pcbench/waves.h"

namespace pcbench {

enum class Player { kPacker, kCoverina };
std::string PlayerName(Player p);

// A position before a tactic move: the current node (its lower edge is the
// current edge) and the current promise.
struct GameState {
  int node = 0;
  Promise promise = Promise::kBot;

  bool operator<(const GameState& o) const {
    return std::pair(node, promise) < std::pair(o.node, o.promise);
  }
  bool operator==(const GameState& o) const {
    return node == o.node && promise == o.promise;
  }
};

// The tactic player's strategy: one tactic per state it is prepared for.
// In the Packing game this is Packer; in the Covering game it is Coverina,
// playing cotactics at starred promises.
using TacticStrategy = std::map<GameState, Tactic>;
// The challenger's strategy: an upper edge (local to the node) with a
// non-bottom promise, or nullopt when there is none.
using ChallengeStrategy =
    std::function<std::optional<int>(const GameState&, const Tactic&)>;

// Normalized tactics attaining p in the arena at node t.
std::vector<Tactic> LegalTactics(const PairTree& tree, int t, Promise p,
                                 const TacticOptions& options = {});
// The node reached by challenging upper edge f (local index) of node t.
int ChildAt(const PairTree& tree, int t, int f);

// Backward induction over every state of one game type.
struct GameTable {
  bool starred = false;
  // Per node, the promises from which the tactic player wins.
  std::vector<PromiseSet> wins;
  // A winning tactic for every winning state.
  TacticStrategy strategy;
};
GameTable SolveGameTable(const PairTree& tree, bool starred);

struct SolveResult {
  Promise start = Promise::kBot;
  Player winner = Player::kPacker;
  GameTable table;

  Player TacticPlayer() const {
    return table.starred ? Player::kCoverina : Player::kPacker;
  }
};
// Packing game from the root at a plain promise.
absl::StatusOr<SolveResult> SolvePackingGame(const PairTree& tree, Promise p0);
// Covering game from the root at a starred promise.
absl::StatusOr<SolveResult> SolveCoveringGame(const PairTree& tree,
                                              Promise p0);
// Re-derives the result by walking the game tree: the winner's strategy
// (the tactic strategy, or the lazy challenger) beats every reply.
absl::Status VerifySolveResult(const PairTree& tree, const SolveResult& r);

// Challenges the least upper edge whose child state the tactic player
// loses according to the table, else the least non-bottom edge.
ChallengeStrategy LazyChallenger(const PairTree& tree, const GameTable& table);

// Whether `strategy` wins for the tactic player from (root, p0) against
// every challenge.
absl::Status CheckWinningStrategy(const PairTree& tree, Promise p0,
                                  const TacticStrategy& strategy);

// A wave of the assembled pair glued from a winning Packer strategy, with
// the witnessing precircuit and circuit through the lower edge for the
// sides that the promise requires. For a starred promise everything refers
// to the dual tree, so the wave is a cowave of the assembled pair.
struct GluedWave {
  Wave wave;
  std::vector<int> reached;  // nodes of Z
  std::optional<Precircuit> witness_m;
  std::optional<Precircuit> witness_n;
  Mask circuit_m = 0;
  Mask circuit_n = 0;
};
absl::StatusOr<GluedWave> StrategyToWave(const PairTree& tree, Promise p0,
                                         const TacticStrategy& strategy);

// Per-node promises and tactics derived from a wave of the assembled pair
// fulfilling p0 (a cowave for a starred p0). Entries cover the states
// reachable from the root.
struct DerivedStrategy {
  std::vector<Promise> promise;  // P(t) for every node
  TacticStrategy strategy;
};
absl::StatusOr<DerivedStrategy> WaveToStrategy(const PairTree& tree,
                                               Promise p0, const Wave& wave);

struct Move {
  Player mover = Player::kPacker;
  GameState state;
  std::optional<Tactic> tactic;  // tactic moves
  int challenge = -1;            // challenge moves: local upper edge
  bool m_strong = false;
  bool n_strong = false;
};
struct Transcript {
  std::vector<Move> moves;
  Player winner = Player::kPacker;
  Player stuck = Player::kCoverina;
};
// Replays one play; a missing tactic where a legal tactic exists, an
// illegal tactic, or an illegal challenge is a strategy-invalid error.
absl::StatusOr<Transcript> PlayTrace(const PairTree& tree, Promise p0,
                                     const TacticStrategy& tactics,
                                     const ChallengeStrategy& challenger);

}  // namespace pcbench

#endif  // PCBENCH_GAME_H_
