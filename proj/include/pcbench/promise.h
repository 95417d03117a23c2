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

#ifndef PCBENCH_PROMISE_H_
#define PCBENCH_PROMISE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace pcbench {

// Six plain promises followed by their six starred duals.
enum class Promise : uint8_t {
  kBot,
  kMMinus,
  kMPlus,
  kNMinus,
  kNPlus,
  kTop,
  kBotStar,
  kMMinusStar,
  kMPlusStar,
  kNMinusStar,
  kNPlusStar,
  kTopStar,
};

inline constexpr int kNumPromises = 12;
inline constexpr std::array<Promise, 6> kPlainPromises = {
    Promise::kBot,    Promise::kMMinus, Promise::kMPlus,
    Promise::kNMinus, Promise::kNPlus,  Promise::kTop};

inline int Index(Promise p) { return static_cast<int>(p); }
inline Promise FromIndex(int i) { return static_cast<Promise>(i); }
inline bool IsStarred(Promise p) { return Index(p) >= 6; }
inline Promise Star(Promise p) { return FromIndex((Index(p) + 6) % 12); }
inline Promise Plain(Promise p) { return FromIndex(Index(p) % 6); }

// "bot", "M-", "M+", "N-", "N+", "top", with a trailing "*" when starred.
std::string PromiseName(Promise p);
absl::StatusOr<Promise> ParsePromise(absl::string_view text);

// p <= q in the promise order; plain and starred promises are incomparable.
bool PromiseLeq(Promise p, Promise q);
// Covering pairs (lower, upper) of the order, plain and starred.
std::vector<std::pair<Promise, Promise>> HasseEdges();

// A set of promises, bit i for promise i.
using PromiseSet = uint16_t;
inline constexpr PromiseSet kAllPromises = 0x0fff;
inline constexpr PromiseSet kPlainSet = 0x003f;
inline constexpr PromiseSet kStarSet = 0x0fc0;

inline PromiseSet SetOf(std::initializer_list<Promise> ps) {
  PromiseSet s = 0;
  for (Promise p : ps) s |= PromiseSet(1u << Index(p));
  return s;
}
inline bool Has(PromiseSet s, Promise p) { return (s >> Index(p)) & 1; }
std::string FormatPromiseSet(PromiseSet s);

PromiseSet UpClosure(PromiseSet s);
PromiseSet DownClosure(PromiseSet s);
inline bool IsUpClosed(PromiseSet s) { return UpClosure(s) == s; }

// The five possible attainable sets of an arena without upper edges, in
// order 1..5.
const std::array<PromiseSet, 5>& CanonicalValues();
// The case index 1..5 whose value equals s exactly.
std::optional<int> ClassifyAttainable(PromiseSet s);
bool IsBlocking(PromiseSet s);
// First canonical value (1..5) that s does not meet, or 0 if s is blocking.
int FirstUnmetValue(PromiseSet s);
// The ten minimal up-closed blocking sets.
const std::array<PromiseSet, 10>& MinimalBlockingSets();

struct SweepReport {
  int64_t checked = 0;
  int64_t failures = 0;
  std::string first_failure;
  std::vector<int64_t> tallies;  // per outcome, where applicable
};

// Up-closed and blocking iff a superset of a listed minimal set, over all
// 4096 subsets; also checks blocking is invariant under up-closure.
SweepReport VerifyBlockstr();

// All up-closed subsets of the given universe (plain or starred, minus
// bottom), in increasing mask order.
std::vector<PromiseSet> UpClosedSubsets(PromiseSet universe);

// Outcome bitmask (bit i-1 for outcome i) of the two promise-set lemmas.
int Lem5MinusOutcomes(PromiseSet g_m_minus, PromiseSet g_n_plus,
                      PromiseSet g_top_star);
int Lem4MinusOutcomes(PromiseSet g_m_plus, PromiseSet g_n_minus,
                      PromiseSet g_top_star);
// Full enumeration over up-closed triples with blocking union; tallies
// count triples per outcome.
SweepReport VerifyLem5Minus();
SweepReport VerifyLem4Minus();

}  // namespace pcbench

#endif  // PCBENCH_PROMISE_H_
