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

#include "pcbench/promise.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "pcbench/matroid.h"

namespace pcbench {
namespace {

using P = Promise;

constexpr const char* kNames[6] = {"bot", "M-", "M+", "N-", "N+", "top"};

// leq[p][q] over the 12 promises, the reflexive-transitive closure of the
// six generators on each half.
struct LeqTable {
  bool leq[kNumPromises][kNumPromises] = {};

  LeqTable() {
    const std::pair<P, P> generators[] = {
        {P::kMPlus, P::kTop},   {P::kNPlus, P::kTop},
        {P::kMMinus, P::kMPlus}, {P::kNMinus, P::kNPlus},
        {P::kBot, P::kMMinus},  {P::kBot, P::kNMinus},
    };
    for (int i = 0; i < kNumPromises; ++i) leq[i][i] = true;
    for (auto [lo, hi] : generators) {
      leq[Index(lo)][Index(hi)] = true;
      leq[Index(Star(lo))][Index(Star(hi))] = true;
    }
    for (int k = 0; k < kNumPromises; ++k) {
      for (int i = 0; i < kNumPromises; ++i) {
        for (int j = 0; j < kNumPromises; ++j) {
          if (leq[i][k] && leq[k][j]) leq[i][j] = true;
        }
      }
    }
  }
};

const LeqTable& Table() {
  static const LeqTable* table = new LeqTable();
  return *table;
}

bool Subset(PromiseSet a, PromiseSet b) { return (a & ~b) == 0; }

}  // namespace

std::string PromiseName(Promise p) {
  std::string name = kNames[Index(p) % 6];
  if (IsStarred(p)) name += "*";
  return name;
}

absl::StatusOr<Promise> ParsePromise(absl::string_view text) {
  for (int i = 0; i < kNumPromises; ++i) {
    if (PromiseName(FromIndex(i)) == text) return FromIndex(i);
  }
  return InvalidParameter(absl::StrCat(
      "unknown promise '", text, "', expected one of bot M- M+ N- N+ top",
      " optionally followed by *"));
}

bool PromiseLeq(Promise p, Promise q) {
  return Table().leq[Index(p)][Index(q)];
}

std::vector<std::pair<Promise, Promise>> HasseEdges() {
  std::vector<std::pair<Promise, Promise>> out;
  for (int i = 0; i < kNumPromises; ++i) {
    for (int j = 0; j < kNumPromises; ++j) {
      if (i == j || !Table().leq[i][j]) continue;
      bool covers = true;
      for (int k = 0; k < kNumPromises; ++k) {
        if (k != i && k != j && Table().leq[i][k] && Table().leq[k][j]) {
          covers = false;
        }
      }
      if (covers) out.push_back({FromIndex(i), FromIndex(j)});
    }
  }
  return out;
}

std::string FormatPromiseSet(PromiseSet s) {
  std::vector<std::string> names;
  for (int i = 0; i < kNumPromises; ++i) {
    if (Has(s, FromIndex(i))) names.push_back(PromiseName(FromIndex(i)));
  }
  return absl::StrCat("{", absl::StrJoin(names, ","), "}");
}

PromiseSet UpClosure(PromiseSet s) {
  PromiseSet out = 0;
  for (int i = 0; i < kNumPromises; ++i) {
    if (!((s >> i) & 1)) continue;
    for (int j = 0; j < kNumPromises; ++j) {
      if (Table().leq[i][j]) out |= PromiseSet(1u << j);
    }
  }
  return out;
}

PromiseSet DownClosure(PromiseSet s) {
  PromiseSet out = 0;
  for (int i = 0; i < kNumPromises; ++i) {
    if (!((s >> i) & 1)) continue;
    for (int j = 0; j < kNumPromises; ++j) {
      if (Table().leq[j][i]) out |= PromiseSet(1u << j);
    }
  }
  return out;
}

const std::array<PromiseSet, 5>& CanonicalValues() {
  static const std::array<PromiseSet, 5> values = {
      PromiseSet(kPlainSet | SetOf({P::kBotStar})),
      PromiseSet(kStarSet | SetOf({P::kBot})),
      SetOf({P::kBot, P::kMMinus, P::kMPlus, P::kBotStar, P::kNMinusStar,
             P::kNPlusStar}),
      SetOf({P::kBot, P::kNMinus, P::kNPlus, P::kBotStar, P::kMMinusStar,
             P::kMPlusStar}),
      SetOf({P::kBot, P::kMMinus, P::kNMinus, P::kBotStar, P::kMMinusStar,
             P::kNMinusStar}),
  };
  return values;
}

std::optional<int> ClassifyAttainable(PromiseSet s) {
  for (int i = 0; i < 5; ++i) {
    if (CanonicalValues()[i] == s) return i + 1;
  }
  return std::nullopt;
}

int FirstUnmetValue(PromiseSet s) {
  for (int i = 0; i < 5; ++i) {
    if (!(CanonicalValues()[i] & s)) return i + 1;
  }
  return 0;
}

bool IsBlocking(PromiseSet s) { return FirstUnmetValue(s) == 0; }

const std::array<PromiseSet, 10>& MinimalBlockingSets() {
  static const std::array<PromiseSet, 10> sets = {
      SetOf({P::kBot}),
      SetOf({P::kBotStar}),
      SetOf({P::kMPlus, P::kMMinusStar}),
      SetOf({P::kMMinus, P::kMPlusStar}),
      SetOf({P::kNPlus, P::kNMinusStar}),
      SetOf({P::kNMinus, P::kNPlusStar}),
      SetOf({P::kMPlus, P::kNMinus, P::kTopStar}),
      SetOf({P::kMMinus, P::kNPlus, P::kTopStar}),
      SetOf({P::kMPlusStar, P::kNMinusStar, P::kTop}),
      SetOf({P::kMMinusStar, P::kNPlusStar, P::kTop}),
  };
  return sets;
}

SweepReport VerifyBlockstr() {
  SweepReport report;
  for (int s = 0; s <= kAllPromises; ++s) {
    const PromiseSet set = PromiseSet(s);
    ++report.checked;
    bool listed = false;
    for (PromiseSet m : MinimalBlockingSets()) listed |= Subset(m, set);
    const bool lhs = IsUpClosed(set) && IsBlocking(set);
    const bool rhs = IsUpClosed(set) ? listed : lhs;
    const bool closure_ok = IsBlocking(set) == IsBlocking(UpClosure(set));
    if (lhs != rhs || !closure_ok) {
      if (report.failures++ == 0) report.first_failure = FormatPromiseSet(set);
    }
  }
  return report;
}

std::vector<PromiseSet> UpClosedSubsets(PromiseSet universe) {
  std::vector<PromiseSet> out;
  for (int s = 0; s <= kAllPromises; ++s) {
    const PromiseSet set = PromiseSet(s);
    if (Subset(set, universe) && IsUpClosed(set)) out.push_back(set);
  }
  return out;
}

int Lem5MinusOutcomes(PromiseSet g_m, PromiseSet g_n, PromiseSet g_t) {
  const PromiseSet g = g_m | g_n | g_t;
  auto in = [&](PromiseSet s, std::initializer_list<Promise> ps) {
    return Subset(SetOf(ps), s);
  };
  int out = 0;
  if (in(g, {P::kMPlus, P::kMMinusStar}) || in(g, {P::kMMinus, P::kMPlusStar}) ||
      in(g, {P::kNPlus, P::kNMinusStar}) || in(g, {P::kNMinus, P::kNPlusStar})) {
    out |= 1 << 0;
  }
  if (Has(g_m, P::kMMinus) && in(g, {P::kNPlus, P::kTopStar})) out |= 1 << 1;
  if (Has(g_m, P::kNMinus) && in(g, {P::kMPlus, P::kTopStar})) out |= 1 << 2;
  if (Has(g_m, P::kTop) && (in(g_t, {P::kMMinusStar, P::kNPlusStar}) ||
                            in(g_t, {P::kMPlusStar, P::kNMinusStar}))) {
    out |= 1 << 3;
  }
  if (Subset(g_m, SetOf({P::kMPlus, P::kNPlus, P::kTop})) &&
      Subset(g_t, SetOf({P::kMPlusStar, P::kNPlusStar, P::kTopStar})) &&
      (in(g, {P::kMMinus, P::kNPlus}) || in(g, {P::kMPlus, P::kNMinus}))) {
    out |= 1 << 4;
  }
  if (g_m == 0 && !Has(g_t, P::kNMinusStar) &&
      in(g, {P::kMMinusStar, P::kNPlusStar, P::kTop}) &&
      Subset(g_n, SetOf({P::kNPlus, P::kTop}))) {
    out |= 1 << 5;
  }
  if (g_m == 0 && in(g, {P::kMPlusStar, P::kNMinusStar, P::kTop}) &&
      Subset(g_n, SetOf({P::kMPlus, P::kTop}))) {
    out |= 1 << 6;
  }
  return out;
}

int Lem4MinusOutcomes(PromiseSet g_m, PromiseSet g_n, PromiseSet g_t) {
  const PromiseSet g = g_m | g_n | g_t;
  auto in = [&](PromiseSet s, std::initializer_list<Promise> ps) {
    return Subset(SetOf(ps), s);
  };
  int out = 0;
  if (in(g, {P::kMPlus, P::kMMinusStar}) || in(g, {P::kMMinus, P::kMPlusStar}) ||
      in(g, {P::kNPlus, P::kNMinusStar}) || in(g, {P::kNMinus, P::kNPlusStar}) ||
      in(g, {P::kMMinus, P::kNPlus, P::kTopStar}) ||
      in(g, {P::kMPlusStar, P::kNMinusStar, P::kTop})) {
    out |= 1 << 0;
  }
  if (in(g, {P::kMPlus, P::kNMinus, P::kTopStar}) &&
      (g_m & SetOf({P::kMPlus, P::kNMinus}))) {
    out |= 1 << 1;
  }
  if (Has(g_m, P::kTop) && in(g_t, {P::kMMinusStar, P::kNPlusStar})) {
    out |= 1 << 2;
  }
  if (Subset(g_m, SetOf({P::kTop, P::kNPlus})) &&
      g_n == SetOf({P::kTop, P::kMPlus, P::kNPlus, P::kNMinus}) &&
      Has(g_t, P::kTopStar) &&
      Subset(g_t, SetOf({P::kTopStar, P::kMPlusStar}))) {
    out |= 1 << 3;
  }
  if (g_m == 0 && Has(g_n, P::kTop) &&
      Subset(g_n, SetOf({P::kTop, P::kNPlus})) &&
      g_t == SetOf({P::kTopStar, P::kMPlusStar, P::kMMinusStar,
                    P::kNPlusStar})) {
    out |= 1 << 4;
  }
  return out;
}

namespace {

SweepReport SweepTriples(int outcomes, int (*check)(PromiseSet, PromiseSet,
                                                    PromiseSet)) {
  SweepReport report;
  report.tallies.assign(outcomes, 0);
  const PromiseSet plain = kPlainSet & ~SetOf({P::kBot});
  const PromiseSet star = kStarSet & ~SetOf({P::kBotStar});
  const std::vector<PromiseSet> ups = UpClosedSubsets(plain);
  const std::vector<PromiseSet> stars = UpClosedSubsets(star);
  for (PromiseSet a : ups) {
    for (PromiseSet b : ups) {
      for (PromiseSet c : stars) {
        if (!IsBlocking(a | b | c)) continue;
        ++report.checked;
        const int got = check(a, b, c);
        for (int i = 0; i < outcomes; ++i) {
          if ((got >> i) & 1) ++report.tallies[i];
        }
        if (got == 0 && report.failures++ == 0) {
          report.first_failure =
              absl::StrCat("(", FormatPromiseSet(a), ", ", FormatPromiseSet(b),
                           ", ", FormatPromiseSet(c), ")");
        }
      }
    }
  }
  return report;
}

}  // namespace

SweepReport VerifyLem5Minus() { return SweepTriples(7, Lem5MinusOutcomes); }

SweepReport VerifyLem4Minus() { return SweepTriples(5, Lem4MinusOutcomes); }

}  // namespace pcbench
