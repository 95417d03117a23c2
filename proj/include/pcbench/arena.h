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

#ifndef PCBENCH_ARENA_H_
#define PCBENCH_ARENA_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pcbench/bits.h"
#include "pcbench/matroid.h"
#include "pcbench/promise.h"
#include "pcbench/waves.h"

namespace pcbench {

// A matroid pair with upper edges F and a lower edge e outside F.
struct Arena {
  MatroidPair pair;
  Mask upper = 0;
  int lower = 0;

  static absl::StatusOr<Arena> Make(MatroidPair pair, Mask upper, int lower);
  int size() const { return pair.size(); }
  Arena Dual() const { return {pair.Dual(), upper, lower}; }
};

// A promise per ground element; only the entries on F are meaningful.
using Phi = std::vector<Promise>;

std::string FormatPhi(const Arena& arena, const Phi& phi);

// The pair (M', N') a wave relying on a plain phi lives in, on the ground
// E'' = E minus phi^-1{bot, M+, N+, top}.
struct RelyingPair {
  MatroidPair pair;
  Mask keep = 0;  // E'' in the arena's indexing
};
RelyingPair DeriveRelyingPair(const Arena& arena, const Phi& phi);

// Whether the wave fulfils a plain promise at e in a pair without upper
// edges. Starred promises are rejected; cowaves use the dual pair.
absl::StatusOr<bool> Fulfils(const MatroidPair& pair, int e, const Wave& w,
                             Promise p);
bool FulfilsPlain(const MatroidPair& pair, int e, const Wave& w, Promise p);

// A tactic attaining `attained` at the lower edge. For a starred promise
// this is a cotactic: phi is starred, the wave is a cowave and the
// circuits are circuits of the dual matroids. All sets use the arena's
// indexing; a circuit that is not required is 0.
struct Tactic {
  Promise attained = Promise::kBot;
  Phi phi;
  Wave wave;
  Mask c_m = 0;
  Mask c_n = 0;

  bool operator==(const Tactic& o) const {
    return attained == o.attained && phi == o.phi && wave == o.wave &&
           c_m == o.c_m && c_n == o.c_n;
  }
};

std::string FormatTactic(const Arena& arena, const Tactic& t);

// The defining conditions of a tactic.
absl::Status CheckTactic(const Arena& arena, const Tactic& t);
// phi^-1(M-) inside S^M and phi^-1(N-) inside S^N.
bool IsNormalized(const Arena& arena, const Tactic& t);
// f is an M-strong (N-strong) challenge to t. For cotactics this is
// M*-strong (N*-strong).
bool IsMStrong(const Tactic& t, int f);
bool IsNStrong(const Tactic& t, int f);

// All phi assignments over F, lexicographic in (element, promise index).
std::vector<Phi> AllPhis(const Arena& arena, bool starred);

// The first normalized tactic with this phi attaining p, in canonical
// order (X, then S^M ascending, S^N the rest of X, least circuits).
std::optional<Tactic> FindTactic(const Arena& arena, const Phi& phi,
                                 Promise p);

struct TacticOptions {
  // Every valid circuit choice rather than the least one.
  bool all_circuits = false;
  // Every disjoint side pair rather than S^N = X minus S^M.
  bool all_sides = true;
  size_t limit = 1u << 20;
};
// Normalized tactics attaining p; exhaustive over phi and waves.
std::vector<Tactic> EnumerateTactics(const Arena& arena, Promise p,
                                     const TacticOptions& options = {});

// Promises fulfilled by some wave plus starred promises fulfilled by some
// cowave. Requires F empty.
absl::StatusOr<PromiseSet> AttainableSet(const Arena& arena);
// The same set computed from every wave and cowave; exponential.
PromiseSet AttainableSetBruteForce(const Arena& arena);

// Result of removing the upper edges whose promise set is not blocking.
struct ReducedArena {
  Arena arena;
  Mask keep = 0;           // surviving elements of the original arena
  std::vector<int> value;  // per element of F: 0 if kept, else 1..5
};
ReducedArena ReduceArena(const Arena& arena,
                         const std::vector<PromiseSet>& rho);
// Lifts a tactic of the reduced arena to the original arena.
absl::StatusOr<Tactic> LiftTactic(const Arena& original,
                                  const ReducedArena& reduced,
                                  const Tactic& t);

}  // namespace pcbench

#endif  // PCBENCH_ARENA_H_
