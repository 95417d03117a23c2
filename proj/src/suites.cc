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

#include "pcbench/suites.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <thread>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "pcbench/catalog.h"
#include "pcbench/game.h"
#include "pcbench/promise.h"
#include "pcbench/textio.h"
#include "pcbench/waves.h"

namespace pcbench {
namespace {

using Clock = std::chrono::steady_clock;
using P = Promise;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(seconds))) {}
  bool Expired() const { return Clock::now() > end_; }

 private:
  Clock::time_point end_;
};

enum class Verdict { kPass, kFail, kSkip };

struct Outcome {
  Verdict verdict = Verdict::kPass;
  int64_t weight = 1;
  std::map<std::string, int64_t> tallies;
  std::string trace;

  void Fail(std::string why) {
    if (verdict != Verdict::kFail) trace = std::move(why);
    verdict = Verdict::kFail;
  }
};

Outcome Skipped(std::string why) {
  Outcome o;
  o.verdict = Verdict::kSkip;
  o.trace = std::move(why);
  return o;
}

uint64_t Mix(uint64_t seed, uint64_t index) {
  // splitmix64 over the seed and the instance index.
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// A family of instances of one type with its check, shrinking and text form.
template <typename T>
struct Family {
  std::vector<T> instances;
  std::function<Outcome(const T&, const Deadline&)> check;
  std::function<std::vector<T>(const T&)> shrink;
  std::function<std::string(const T&)> serialize;
};

template <typename T>
Report RunFamily(const SuiteSpec& spec, const Family<T>& family) {
  Report report;
  report.suite = spec.name;
  report.spec = spec;
  const Clock::time_point start = Clock::now();
  const size_t count = family.instances.size();
  std::vector<Outcome> outcomes(count);
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i = next++; i < count; i = next++) {
      outcomes[i] = family.check(family.instances[i], Deadline(spec.instance_seconds));
    }
  };
  int threads = spec.threads > 0 ? spec.threads
                                 : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1, std::max<int>(1, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::optional<size_t> first_failure;
  for (size_t i = 0; i < count; ++i) {
    const Outcome& o = outcomes[i];
    report.instances += o.weight;
    switch (o.verdict) {
      case Verdict::kPass:
        report.passed += o.weight;
        break;
      case Verdict::kFail:
        report.failed += o.weight;
        if (!first_failure) first_failure = i;
        break;
      case Verdict::kSkip:
        report.skipped += o.weight;
        break;
    }
    for (const auto& [k, v] : o.tallies) report.tallies[k] += v;
  }
  if (first_failure) {
    T current = family.instances[*first_failure];
    std::string trace = outcomes[*first_failure].trace;
    // Greedy deletion while the failure persists.
    bool shrunk = spec.minimize && family.shrink != nullptr;
    while (shrunk) {
      shrunk = false;
      for (const T& smaller : family.shrink(current)) {
        const Outcome o = family.check(smaller, Deadline(spec.instance_seconds));
        if (o.verdict == Verdict::kFail) {
          current = smaller;
          trace = o.trace;
          shrunk = true;
          break;
        }
      }
    }
    report.counterexample =
        Counterexample{static_cast<int64_t>(*first_failure),
                       family.serialize(current), trace};
  }
  report.wall_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

// ----- Parameters carried in comment lines.

std::string ParamLine(absl::string_view key, const std::vector<std::string>& values) {
  return absl::StrCat("# param ", key, values.empty() ? "" : " ",
                      absl::StrJoin(values, " "), "\n");
}

std::map<std::string, std::vector<std::string>> ReadParams(absl::string_view text) {
  std::map<std::string, std::vector<std::string>> out;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    if (!absl::ConsumePrefix(&line, "# param ")) continue;
    std::vector<std::string> words = absl::StrSplit(line, ' ', absl::SkipEmpty());
    if (words.empty()) continue;
    const std::string key = words.front();
    out[key] = std::vector<std::string>(words.begin() + 1, words.end());
  }
  return out;
}

std::vector<std::string> Names(const std::vector<std::string>& ground, Mask s) {
  std::vector<std::string> out;
  for (int i : Elements(s)) out.push_back(ground[i]);
  return out;
}

absl::StatusOr<Mask> MaskOf(const std::vector<std::string>& ground,
                            const std::vector<std::string>& names) {
  Mask out = 0;
  for (const std::string& name : names) {
    auto it = std::find(ground.begin(), ground.end(), name);
    if (it == ground.end()) return InvalidParameter(absl::StrCat("unknown element '", name, "'"));
    out |= Bit(static_cast<int>(it - ground.begin()));
  }
  return out;
}

// ----- Pairs.

MatroidPair DeletePairElement(const MatroidPair& pair, int x) {
  return {pair.m.Delete(Bit(x)).value(), pair.n.Delete(Bit(x)).value()};
}

std::vector<MatroidPair> ShrinkPair(const MatroidPair& pair) {
  std::vector<MatroidPair> out;
  for (int x = 0; x < pair.size(); ++x) out.push_back(DeletePairElement(pair, x));
  return out;
}

// Catalog pairs on 0..min(n, catalog) elements, then random pairs on
// catalog+1..n elements.
std::vector<MatroidPair> CatalogThenRandom(int n, int catalog, int64_t trials,
                                           uint64_t seed) {
  std::vector<MatroidPair> out;
  for (int k = 0; k <= std::min(n, catalog); ++k) {
    for (MatroidPair& p : LabeledPairs(k)) out.push_back(std::move(p));
  }
  if (n > catalog) {
    for (int64_t i = 0; i < trials; ++i) {
      const uint64_t s = Mix(seed, i);
      const int k = catalog + 1 + static_cast<int>(s % (n - catalog));
      out.push_back(RandomPair(s, k));
    }
  }
  return out;
}

std::vector<MatroidPair> RandomPairs(int lo, int n, int64_t trials, uint64_t seed) {
  std::vector<MatroidPair> out;
  for (int64_t i = 0; i < trials; ++i) {
    const uint64_t s = Mix(seed, i);
    const int k = lo + static_cast<int>(s % (n - lo + 1));
    out.push_back(RandomPair(s, k));
  }
  return out;
}

Family<MatroidPair> PairFamily(
    std::vector<MatroidPair> instances,
    std::function<Outcome(const MatroidPair&, const Deadline&)> check) {
  Family<MatroidPair> f;
  f.instances = std::move(instances);
  f.check = std::move(check);
  f.shrink = ShrinkPair;
  f.serialize = [](const MatroidPair& p) { return SerializePair(p); };
  return f;
}

// ----- Single sweeps.

Outcome FromSweep(const SweepReport& sweep, const std::vector<std::string>& labels) {
  Outcome o;
  o.tallies["checked"] = sweep.checked;
  for (size_t i = 0; i < sweep.tallies.size(); ++i) {
    const std::string label = i < labels.size() ? labels[i] : absl::StrCat(i + 1);
    o.tallies[absl::StrCat("outcome-", label)] = sweep.tallies[i];
  }
  if (sweep.failures > 0) {
    o.Fail(absl::StrCat(sweep.failures, " failures; first: ", sweep.first_failure));
  }
  return o;
}

Family<int> SweepFamily(std::function<SweepReport()> sweep) {
  Family<int> f;
  f.instances = {0};
  f.check = [sweep](const int&, const Deadline&) { return FromSweep(sweep(), {}); };
  f.serialize = [](const int&) { return std::string(); };
  return f;
}

// ----- Attainable sets.

Outcome CheckFiveSets(const MatroidPair& pair, const Deadline& deadline) {
  Outcome o;
  const std::pair<P, P> exclusive[] = {{P::kMPlus, P::kMMinusStar},
                                       {P::kMMinus, P::kMPlusStar},
                                       {P::kNPlus, P::kNMinusStar},
                                       {P::kNMinus, P::kNPlusStar}};
  for (int e = 0; e < pair.size(); ++e) {
    if (deadline.Expired()) return Skipped("wall-time guard");
    const Arena arena{pair, 0, e};
    const PromiseSet got = AttainableSet(arena).value();
    const std::optional<int> cls = ClassifyAttainable(got);
    if (!cls) {
      o.Fail(absl::StrCat("lower edge ", pair.m.ground()[e], ": attainable set ",
                          FormatPromiseSet(got), " is none of the five values"));
      continue;
    }
    ++o.tallies[absl::StrCat("value-", *cls)];
    if (pair.size() <= 4 && AttainableSetBruteForce(arena) != got) {
      o.Fail(absl::StrCat("lower edge ", pair.m.ground()[e],
                          ": witness search disagrees with exhaustive waves"));
    }
    for (auto [x, y] : exclusive) {
      if (Has(got, x) == Has(got, y)) {
        o.Fail(absl::StrCat("lower edge ", pair.m.ground()[e], ": exactly one of ",
                            PromiseName(x), ", ", PromiseName(y), " expected"));
      }
    }
  }
  return o;
}

Outcome CheckLeqP(int n, const Deadline& deadline) {
  Outcome o;
  // implied[p][q]: every arena attaining q attains p.
  bool implied[kNumPromises][kNumPromises];
  for (auto& row : implied) std::fill(std::begin(row), std::end(row), true);
  int64_t arenas = 0;
  for (int k = 1; k <= n; ++k) {
    for (const MatroidPair& pair : LabeledPairs(k)) {
      if (deadline.Expired()) return Skipped("wall-time guard");
      for (int e = 0; e < k; ++e) {
        const PromiseSet a = AttainableSet(Arena{pair, 0, e}).value();
        ++arenas;
        for (int p = 0; p < kNumPromises; ++p) {
          for (int q = 0; q < kNumPromises; ++q) {
            if (Has(a, FromIndex(q)) && !Has(a, FromIndex(p))) implied[p][q] = false;
          }
        }
      }
    }
  }
  o.tallies["arenas"] = arenas;
  std::vector<std::string> mismatches;
  for (int p = 0; p < kNumPromises; ++p) {
    for (int q = 0; q < kNumPromises; ++q) {
      const Promise a = FromIndex(p);
      const Promise b = FromIndex(q);
      if (IsStarred(a) != IsStarred(b)) continue;
      if (implied[p][q] != PromiseLeq(a, b)) {
        mismatches.push_back(absl::StrCat(PromiseName(a), (implied[p][q] ? "<=" : "!<="),
                                          PromiseName(b)));
      }
    }
  }
  // Covering pairs of the computed order.
  std::vector<std::pair<Promise, Promise>> hasse;
  for (int p = 0; p < kNumPromises; ++p) {
    for (int q = 0; q < kNumPromises; ++q) {
      if (p == q || IsStarred(FromIndex(p)) != IsStarred(FromIndex(q)) || !implied[p][q]) {
        continue;
      }
      bool covering = true;
      for (int r = 0; r < kNumPromises && covering; ++r) {
        if (r == p || r == q || IsStarred(FromIndex(r)) != IsStarred(FromIndex(p))) continue;
        if (implied[p][r] && implied[r][q]) covering = false;
      }
      if (covering) hasse.emplace_back(FromIndex(p), FromIndex(q));
    }
  }
  std::sort(hasse.begin(), hasse.end());
  std::vector<std::pair<Promise, Promise>> expected = HasseEdges();
  std::sort(expected.begin(), expected.end());
  o.tallies["hasse-edges"] = static_cast<int64_t>(hasse.size());
  if (hasse != expected) mismatches.push_back("covering pairs differ from the generators");
  if (!mismatches.empty()) o.Fail(absl::StrJoin(mismatches, "; "));
  return o;
}

// ----- Packing/Covering partitions.

Outcome CheckPC(const MatroidPair& pair, const Deadline&) {
  Outcome o;
  absl::StatusOr<PCPartition> pc = SolvePackingCovering(pair);
  if (!pc.ok()) {
    o.Fail(pc.status().ToString());
    return o;
  }
  if (absl::Status s = VerifyPCPartition(pair, *pc); !s.ok()) {
    o.Fail(s.ToString());
    return o;
  }
  ++o.tallies[absl::StrCat("packing-side-", Popcount(pc->p))];
  return o;
}

// ----- Lemma trichotomies.

struct Split {
  Mask g = 0, h = 0, j = 0;
};

// Disjoint (G, H, J) avoiding e with each part of size at most two.
std::vector<Split> SmallSplits(int n, int e, bool with_g) {
  std::vector<Split> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 4;
  for (int code = 0; code < total; ++code) {
    Mask sets[4] = {0, 0, 0, 0};
    int c = code;
    bool skip = false;
    for (int i = 0; i < n; ++i) {
      const int which = c % 4;
      c /= 4;
      if ((i == e && which != 0) || (!with_g && which == 1)) skip = true;
      sets[which] |= Bit(i);
    }
    if (skip) continue;
    if (Popcount(sets[1]) > 2 || Popcount(sets[2]) > 2 || Popcount(sets[3]) > 2) continue;
    out.push_back({sets[1], sets[2], sets[3]});
  }
  return out;
}

Outcome CheckLemma(const MatroidPair& pair, const Deadline& deadline, bool is27) {
  Outcome o;
  const std::vector<std::string>& g = pair.m.ground();
  for (int e = 0; e < pair.size(); ++e) {
    for (const Split& s : SmallSplits(pair.size(), e, is27)) {
      if (deadline.Expired()) return Skipped("wall-time guard");
      absl::StatusOr<LemmaOutcome> r = is27 ? VerifyLemma27(pair, s.g, s.h, s.j, e)
                                            : VerifyLemma17(pair, s.h, s.j, e);
      const std::string where = absl::StrCat(
          "e=", g[e], is27 ? absl::StrCat(" G=", pair.m.Format(s.g)) : "",
          " H=", pair.m.Format(s.h), " J=", pair.m.Format(s.j));
      if (!r.ok()) {
        o.Fail(absl::StrCat(where, ": ", r.status().ToString()));
        return o;
      }
      absl::Status check = is27 ? CheckLemma27Outcome(pair, s.g, s.h, s.j, e, *r)
                                : CheckLemma17Outcome(pair, s.h, s.j, e, *r);
      if (!check.ok()) {
        o.Fail(absl::StrCat(where, ": witness rejected: ", check.ToString()));
        return o;
      }
      ++o.tallies[absl::StrCat("outcome-", r->case_index)];
      ++o.tallies["splits"];
    }
  }
  return o;
}

// ----- Exchange chains.

Outcome CheckChains(const MatroidPair& pair, int64_t weight, const Deadline& deadline) {
  Outcome o;
  o.weight = weight;
  int64_t chains = 0, failing = 0;
  const int n = pair.size();
  for (Mask i_m : pair.m.Independents()) {
    if (deadline.Expired()) return Skipped("wall-time guard");
    for (Mask i_n : pair.n.Independents()) {
      for (int x : Elements(i_m | i_n)) {
        for (int y = 0; y < n; ++y) {
          for (bool even : {true, false}) {
            absl::StatusOr<std::optional<ExchangeChain>> chain =
                FindExchangeChain(pair, i_m, i_n, y, x, even);
            if (!chain.ok()) {
              o.Fail(chain.status().ToString());
              return o;
            }
            if (!chain->has_value()) continue;
            ++chains;
            absl::StatusOr<std::pair<Mask, Mask>> aug =
                AugmentChain(pair, i_m, i_n, **chain);
            if (aug.ok()) continue;
            ++failing;
            if (o.verdict != Verdict::kFail) {
              std::vector<std::string> nodes;
              for (int v : (*chain)->nodes) nodes.push_back(pair.m.ground()[v]);
              o.Fail(absl::StrCat("B_M=", pair.m.Format(i_m), " B_N=", pair.n.Format(i_n),
                                  " chain ", absl::StrJoin(nodes, ","),
                                  even ? " (even)" : " (odd)", ": ",
                                  aug.status().ToString()));
            }
          }
        }
      }
    }
  }
  o.tallies["chains"] = chains * weight;
  o.tallies["failing-chains"] = failing * weight;
  return o;
}

struct WeightedPair {
  MatroidPair pair;
  int64_t weight = 1;
};

Family<WeightedPair> ChainFamily(int n) {
  Family<WeightedPair> f;
  for (int k = 0; k <= n; ++k) {
    for (PairOrbit& orbit : PairOrbits(k)) {
      f.instances.push_back({std::move(orbit.representative), orbit.size});
    }
  }
  f.check = [](const WeightedPair& w, const Deadline& d) {
    return CheckChains(w.pair, w.weight, d);
  };
  f.shrink = [](const WeightedPair& w) {
    std::vector<WeightedPair> out;
    for (MatroidPair& p : ShrinkPair(w.pair)) out.push_back({std::move(p), 1});
    return out;
  };
  f.serialize = [](const WeightedPair& w) { return SerializePair(w.pair); };
  return f;
}

// ----- Trees.

struct TreeCase {
  PairTree tree;
  Mask contract = 0;
  Mask del = 0;
};

std::string SerializeTreeCase(const TreeCase& c) {
  std::string out = SerializePairTree(c.tree);
  if (c.contract != 0 || c.del != 0) {
    absl::StrAppend(&out, ParamLine("contract", Names(c.tree.m.ground, c.contract)),
                    ParamLine("delete", Names(c.tree.m.ground, c.del)));
  }
  return out;
}

absl::StatusOr<TreeCase> ParseTreeCase(absl::string_view text) {
  TreeCase c;
  absl::StatusOr<PairTree> tree = ParsePairTree(text);
  if (!tree.ok()) return tree.status();
  c.tree = *std::move(tree);
  const auto params = ReadParams(text);
  if (auto it = params.find("contract"); it != params.end()) {
    absl::StatusOr<Mask> m = MaskOf(c.tree.m.ground, it->second);
    if (!m.ok()) return m.status();
    c.contract = *m;
  }
  if (auto it = params.find("delete"); it != params.end()) {
    absl::StatusOr<Mask> m = MaskOf(c.tree.m.ground, it->second);
    if (!m.ok()) return m.status();
    c.del = *m;
  }
  return c;
}

// Remaps a mask over the ground of `from` onto the ground of `to` by name.
Mask RemapByName(const std::vector<std::string>& from, const std::vector<std::string>& to,
                 Mask s) {
  Mask out = 0;
  for (int i : Elements(s)) {
    auto it = std::find(to.begin(), to.end(), from[i]);
    if (it != to.end()) out |= Bit(static_cast<int>(it - to.begin()));
  }
  return out;
}

std::vector<TreeCase> ShrinkTreeCase(const TreeCase& c) {
  std::vector<TreeCase> out;
  const std::vector<std::string>& ground = c.tree.m.ground;
  for (int x = 0; x < static_cast<int>(ground.size()); ++x) {
    if (x == c.tree.lower) continue;
    absl::StatusOr<TreeOfMatroids> m = TreeMinor(c.tree.m, {}, {ground[x]});
    absl::StatusOr<TreeOfMatroids> n = TreeMinor(c.tree.n, {}, {ground[x]});
    if (!m.ok() || !n.ok()) continue;
    TreeCase s;
    s.tree.lower = static_cast<int>(
        std::find(m->ground.begin(), m->ground.end(), ground[c.tree.lower]) -
        m->ground.begin());
    s.contract = RemapByName(ground, m->ground, c.contract);
    s.del = RemapByName(ground, m->ground, c.del);
    s.tree.m = *std::move(m);
    s.tree.n = *std::move(n);
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<Wave> WitnessWave(const MatroidPair& pair, int e, Promise p) {
  switch (p) {
    case P::kBot:
      return Wave{};
    case P::kMPlus:
      return FindWaveMSpanning(pair, e);
    case P::kMMinus:
      return FindWaveWithNSide(pair, e);
    case P::kNPlus:
      return FindWaveNSpanning(pair, e);
    case P::kNMinus:
      return FindWaveWithMSide(pair, e);
    case P::kTop:
      return FindWaveBothSpanning(pair, e);
    default:
      return std::nullopt;
  }
}

int TreeGroundCap(const SuiteSpec& spec) { return spec.n; }

Outcome CheckTreeMinorCase(const TreeCase& c, const Deadline&) {
  Outcome o;
  for (const TreeOfMatroids* side : {&c.tree.m, &c.tree.n}) {
    absl::StatusOr<bool> eq = VerifyTreeMinor(*side, c.contract, c.del);
    if (!eq.ok()) {
      o.Fail(eq.status().ToString());
    } else if (!*eq) {
      o.Fail(absl::StrCat("assembled minor differs on the ", side == &c.tree.m ? "M" : "N",
                          " side for contract ", absl::StrJoin(Names(side->ground, c.contract), ","), " delete ",
                          absl::StrJoin(Names(side->ground, c.del), ",")));
    }
  }
  return o;
}

// ----- Tacticians.

struct TacticianLemma {
  const char* name;
  std::array<Promise, 3> q;
  Promise packing_weak;  // its tactics must be N-weak in case (ii)
  std::vector<PromiseSet> improvements;
};

const std::array<TacticianLemma, 2>& TacticianLemmas() {
  static const std::array<TacticianLemma, 2> kLemmas = {
      TacticianLemma{"plus", {P::kMMinus, P::kNPlus, P::kTopStar}, P::kNPlus, {}},
      TacticianLemma{"minus",
                     {P::kMPlus, P::kNMinus, P::kTopStar},
                     P::kNMinus,
                     {SetOf({P::kMMinus, P::kNPlus, P::kTopStar}),
                      SetOf({P::kNMinusStar, P::kMPlusStar, P::kTop})}}};
  return kLemmas;
}

constexpr int kMaxSignatures = 72;
constexpr int64_t kMaxSearchNodes = 1 << 22;
constexpr char kCaseNames[5][4] = {"i", "ii", "iii", "iv", "v"};

// What a tactic offers when challenged at one upper edge: the promise
// there, plus whether the challenge is weak in the sense the lemma's weak
// challenge case for this promise asks about.
int Offer(const TacticianLemma& lemma, Promise q, const Tactic& t, int f) {
  int weak = 0;
  if (q == lemma.packing_weak && !IsNStrong(t, f)) weak = 1;
  if (q == P::kTopStar && !IsMStrong(t, f)) weak = 1;
  return Index(t.phi[f]) * 2 + weak;
}

// Promises available at one upper edge under a partial challenger triple.
struct EdgeState {
  PromiseSet all = 0, pack = 0, cover = 0;
  std::array<PromiseSet, 3> own = {0, 0, 0};
};

struct Item {
  int slot = 0;
  std::array<int, 2> offer = {0, 0};
};

// Bitmask of the lemma's cases realized at an edge; each case only needs
// the offers available there, so it persists as offers are added.
int Fired(const TacticianLemma& lemma, const EdgeState& s) {
  int fired = 0;
  if (Has(s.own[0], lemma.q[0]) && Has(s.own[1], lemma.q[1]) && Has(s.own[2], lemma.q[2])) {
    fired |= 1;
  }
  if (IsBlocking(s.pack)) fired |= 2;
  if (IsBlocking(s.cover)) fired |= 4;
  for (size_t m = 0; m < lemma.improvements.size(); ++m) {
    if (IsSubset(lemma.improvements[m], s.all)) fired |= 8 << m;
  }
  return fired;
}

void AddOffer(const TacticianLemma& lemma, const Item& item, int fi, EdgeState& s) {
  const int offer = item.offer[fi];
  const PromiseSet up = UpClosure(SetOf({FromIndex(offer / 2)}));
  const bool weak = offer & 1;
  const Promise q = lemma.q[item.slot];
  s.all |= up;
  s.own[item.slot] |= up;
  if (q != lemma.packing_weak || weak) s.pack |= up;
  if (q != P::kTopStar || weak) s.cover |= up;
}

// Depth-first search over the upper edge each distinct offer vector is
// sent to. A subtree is closed as soon as some edge realizes a case, and
// all of its challenger triples are credited to the cases found there.
struct TacticianSearch {
  const TacticianLemma& lemma;
  const std::vector<Item>& items;
  int edges;
  TacticianCheck& out;
  const Arena& arena;
  const std::vector<int>& fs;
  int64_t nodes = 0;
  std::vector<int> placement;

  bool Run(size_t i, const std::array<EdgeState, 2>& state) {
    if (++nodes > kMaxSearchNodes) return false;
    int fired = 0;
    for (int fi = 0; fi < edges; ++fi) fired |= Fired(lemma, state[fi]);
    if (fired != 0) {
      out.triples += edges == 2 ? std::ldexp(1.0, static_cast<int>(items.size() - i)) : 1;
      ++out.classes;
      for (int c = 0; c < 5; ++c) {
        if (fired & (1 << c)) {
          ++out.cases[absl::StrCat("tactician-", lemma.name, ":", kCaseNames[c])];
        }
      }
      return true;
    }
    if (i == items.size()) {
      ++out.triples;
      ++out.classes;
      ++out.failures;
      if (out.trace.empty()) {
        std::vector<std::string> parts;
        for (size_t j = 0; j < items.size(); ++j) {
          const int at = placement[j];
          parts.push_back(absl::StrCat(PromiseName(lemma.q[items[j].slot]), "->",
                                       arena.pair.m.ground()[fs[at]], ":",
                                       PromiseName(FromIndex(items[j].offer[at] / 2)),
                                       (items[j].offer[at] & 1) ? "(weak)" : ""));
        }
        out.trace = absl::StrCat("tactician", lemma.name,
                                 ": no listed case for challengers ",
                                 absl::StrJoin(parts, " "));
      }
      return true;
    }
    for (int fi = 0; fi < edges; ++fi) {
      std::array<EdgeState, 2> next = state;
      AddOffer(lemma, items[i], fi, next[fi]);
      placement[i] = fi;
      if (!Run(i + 1, next)) return false;
    }
    return true;
  }
};

}  // namespace

TacticianCheck SpotCheckTacticians(const Arena& arena) {
  TacticianCheck out;
  const std::vector<int> fs = Elements(arena.upper);
  const int k = static_cast<int>(fs.size());
  if (k == 0 || k > 2) {
    out.skipped = true;
    out.trace = k == 0 ? "no upper edges" : "more than two upper edges";
    return out;
  }
  TacticOptions options;
  options.all_circuits = true;
  options.all_sides = true;
  options.limit = 1u << 16;
  std::map<Promise, std::vector<Tactic>> tactics;
  for (const TacticianLemma& lemma : TacticianLemmas()) {
    for (Promise q : lemma.q) {
      if (tactics.count(q)) continue;
      tactics[q] = EnumerateTactics(arena, q, options);
      if (tactics[q].size() >= options.limit) {
        out.skipped = true;
        out.trace = "tactic enumeration limit";
        return out;
      }
    }
  }
  for (const TacticianLemma& lemma : TacticianLemmas()) {
    // Challengers only see each tactic's offers, so tactics with equal
    // offer vectors are interchangeable, and sending all of them to one
    // edge is the hardest choice for the lemma.
    std::vector<Item> items;
    for (int s = 0; s < 3; ++s) {
      std::set<std::array<int, 2>> distinct;
      for (const Tactic& t : tactics[lemma.q[s]]) {
        distinct.insert({Offer(lemma, lemma.q[s], t, fs[0]),
                         k == 2 ? Offer(lemma, lemma.q[s], t, fs[1]) : 0});
      }
      if (static_cast<int>(distinct.size()) > kMaxSignatures) {
        out.skipped = true;
        out.trace = absl::StrCat(PromiseName(lemma.q[s]), " has ", distinct.size(),
                                 " distinct tactic signatures");
        return out;
      }
      for (const auto& o : distinct) items.push_back({s, o});
    }
    // Strong offers first so that cases close subtrees early.
    auto reach = [](const Item& it) {
      return Popcount(UpClosure(SetOf({FromIndex(it.offer[0] / 2)}))) +
             Popcount(UpClosure(SetOf({FromIndex(it.offer[1] / 2)})));
    };
    std::stable_sort(items.begin(), items.end(),
                     [&](const Item& a, const Item& b) { return reach(a) > reach(b); });
    TacticianSearch search{lemma, items, k, out, arena, fs};
    search.placement.assign(items.size(), 0);
    if (!search.Run(0, {})) {
      out.skipped = true;
      out.trace = absl::StrCat("tactician", lemma.name, ": search budget exceeded");
      return out;
    }
  }
  return out;
}

namespace {

std::string SerializeArena(const Arena& a) {
  const std::vector<std::string>& g = a.pair.m.ground();
  return absl::StrCat(SerializePair(a.pair), ParamLine("lower", {g[a.lower]}),
                      ParamLine("upper", Names(g, a.upper)));
}

absl::StatusOr<Arena> ParseArena(absl::string_view text) {
  absl::StatusOr<MatroidPair> pair = ParsePair(text);
  if (!pair.ok()) return pair.status();
  const auto params = ReadParams(text);
  auto lower = params.find("lower");
  if (lower == params.end() || lower->second.size() != 1) {
    return InvalidParameter("missing '# param lower <element>' line");
  }
  absl::StatusOr<Mask> e = MaskOf(pair->m.ground(), lower->second);
  if (!e.ok()) return e.status();
  Mask upper = 0;
  if (auto it = params.find("upper"); it != params.end()) {
    absl::StatusOr<Mask> u = MaskOf(pair->m.ground(), it->second);
    if (!u.ok()) return u.status();
    upper = *u;
  }
  return Arena::Make(*std::move(pair), upper, Elements(*e).front());
}

Outcome CheckTacticianArena(const Arena& arena, const Deadline&) {
  const TacticianCheck c = SpotCheckTacticians(arena);
  if (c.skipped) return Skipped(c.trace);
  Outcome o;
  o.tallies = c.cases;
  o.tallies["challenger-classes"] = c.classes;
  if (c.failures > 0) {
    o.Fail(absl::StrCat(c.failures, " challenger triples without a listed case; first: ",
                        c.trace));
  }
  return o;
}

std::vector<Arena> ShrinkArena(const Arena& a) {
  std::vector<Arena> out;
  for (int x = 0; x < a.size(); ++x) {
    if (x == a.lower) continue;
    const Mask keep = a.pair.ground_mask() & ~Bit(x);
    const Mask upper = Compress(a.upper & keep, keep);
    if (upper == 0) continue;
    const int lower = Popcount(keep & FullMask(a.lower));
    out.push_back(Arena{DeletePairElement(a.pair, x), upper, lower});
  }
  return out;
}

std::vector<Arena> RandomArenas(int n, int64_t trials, uint64_t seed) {
  std::vector<Arena> out;
  for (int64_t i = 0; i < trials; ++i) {
    const uint64_t s = Mix(seed, i);
    std::mt19937_64 rng(s);
    const int k = 2 + static_cast<int>(rng() % (n - 1));
    MatroidPair pair = RandomPair(s, k);
    const int e = static_cast<int>(rng() % k);
    std::vector<int> others;
    for (int x = 0; x < k; ++x) {
      if (x != e) others.push_back(x);
    }
    std::shuffle(others.begin(), others.end(), rng);
    const int size = k >= 3 ? 1 + static_cast<int>(rng() % 2) : 1;
    Mask upper = 0;
    for (int j = 0; j < size; ++j) upper |= Bit(others[j]);
    out.push_back(Arena{std::move(pair), upper, e});
  }
  return out;
}

// ----- Suite table.

struct SuiteInfo {
  std::string name;
  int default_n;
  int max_n;
  int64_t default_trials;
};

const std::vector<SuiteInfo>& SuiteTable() {
  static const std::vector<SuiteInfo> kSuites = {
      {"blockstr", 0, 0, 0},    {"lem5", 0, 0, 0},       {"lem4", 0, 0, 0},
      {"5sets", 4, 5, 0},       {"leqP", 4, 5, 0},       {"pc", 6, 8, 10000},
      {"lemma27", 6, 8, 1000},  {"lemma17", 6, 8, 1000}, {"game", 4, 5, 500},
      {"roundtrip", 4, 5, 500}, {"tominor", 4, 5, 200},  {"runchains", 5, 5, 0},
      {"tacticians", 4, 5, 300},
  };
  return kSuites;
}

const SuiteInfo* FindSuite(absl::string_view name) {
  for (const SuiteInfo& s : SuiteTable()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

absl::StatusOr<SuiteSpec> Resolve(const SuiteSpec& in) {
  const SuiteInfo* info = FindSuite(in.name);
  if (info == nullptr) {
    return InvalidParameter(absl::StrCat("unknown suite '", in.name, "'; expected one of ",
                                         absl::StrJoin(SuiteNames(), ", ")));
  }
  SuiteSpec s = in;
  if (s.n == 0) s.n = info->default_n;
  if (s.trials < 0) s.trials = info->default_trials;
  if (s.nodes == 0) s.nodes = 4;
  if (s.n < 0 || s.n > info->max_n || s.n > GroundCap()) {
    return InvalidParameter(absl::StrCat("--n ", s.n, " outside 1..",
                                         std::min(info->max_n, GroundCap()), " for suite ",
                                         s.name));
  }
  if (s.nodes < 1 || s.nodes > 6) {
    return InvalidParameter(absl::StrCat("--nodes ", s.nodes, " outside 1..6"));
  }
  if (s.instance_seconds <= 0) return InvalidParameter("instance time limit must be positive");
  if (s.name == "tacticians" && s.n < 2) {
    return InvalidParameter("suite tacticians needs --n of at least 2");
  }
  return s;
}

Family<TreeCase> TreeFamily(const SuiteSpec& spec,
                            std::function<Outcome(const TreeCase&, const Deadline&)> check) {
  Family<TreeCase> f;
  for (PairTree& t : GameInstances(spec)) f.instances.push_back({std::move(t), 0, 0});
  f.check = std::move(check);
  f.shrink = ShrinkTreeCase;
  f.serialize = SerializeTreeCase;
  return f;
}

Outcome GameOutcome(const TreeCase& c, const Deadline&, bool roundtrip) {
  const GameCheck g = CheckGameInstance(c.tree);
  Outcome o;
  o.tallies["packer-wins"] = g.packer_wins;
  o.tallies["coverina-wins"] = g.coverina_wins;
  if (roundtrip ? !g.roundtrip : !g.equivalence) o.Fail(g.trace);
  return o;
}

}  // namespace

const std::vector<std::string>& SuiteNames() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> out;
    for (const SuiteInfo& s : SuiteTable()) out.push_back(s.name);
    return out;
  }();
  return kNames;
}

std::vector<PairTree> GameInstances(const SuiteSpec& spec) {
  std::vector<PairTree> out;
  if (spec.nodes >= 4 && spec.n >= 4) out = TemplatePairTrees();
  RandomTreeOptions options;
  options.max_nodes = spec.nodes;
  options.max_node_ground = TreeGroundCap(spec);
  for (int64_t i = 0; i < spec.trials; ++i) {
    out.push_back(RandomPairTree(Mix(spec.seed, i), options));
  }
  return out;
}

GameCheck CheckGameInstance(const PairTree& tree) {
  GameCheck out;
  auto fail_eq = [&](std::string why) {
    if (out.equivalence && out.roundtrip) out.trace = why;
    out.equivalence = false;
  };
  auto fail_rt = [&](std::string why) {
    if (out.equivalence && out.roundtrip) out.trace = why;
    out.roundtrip = false;
  };
  absl::StatusOr<MatroidPair> assembled = Assemble(tree);
  if (!assembled.ok()) {
    fail_eq(assembled.status().ToString());
    fail_rt(assembled.status().ToString());
    return out;
  }
  const int e = tree.lower;
  const PromiseSet attainable = AttainableSet(Arena{*assembled, 0, e}).value();
  const GameTable packing = SolveGameTable(tree, false);
  const GameTable covering = SolveGameTable(tree, true);
  for (Promise p : kPlainPromises) {
    for (int star = 0; star < 2; ++star) {
      const Promise start = star ? Star(p) : p;
      const GameTable& table = star ? covering : packing;
      const bool tactic_wins = Has(table.wins[0], start);
      const std::string game = absl::StrCat(star ? "Covering" : "Packing", " game from ",
                                            PromiseName(start));
      if (tactic_wins != Has(attainable, start)) {
        fail_eq(absl::StrCat(game, ": ", star ? "Coverina" : "Packer",
                             tactic_wins ? " wins but no " : " loses but a ",
                             star ? "cowave" : "wave", " fulfils it"));
      }
      SolveResult r;
      r.start = start;
      r.table = table;
      r.winner = (tactic_wins != static_cast<bool>(star)) ? Player::kPacker : Player::kCoverina;
      if (absl::Status s = VerifySolveResult(tree, r); !s.ok()) {
        fail_eq(absl::StrCat(game, ": ", s.ToString()));
      }
      if (!tactic_wins) continue;
      ++(star ? out.coverina_wins : out.packer_wins);
      const MatroidPair side = star ? assembled->Dual() : *assembled;
      absl::StatusOr<GluedWave> glued = StrategyToWave(tree, start, table.strategy);
      if (!glued.ok()) {
        fail_eq(absl::StrCat(game, ": solver strategy: ", glued.status().ToString()));
      } else if (!FulfilsPlain(side, e, glued->wave, p)) {
        fail_eq(absl::StrCat(game, ": glued wave does not fulfil the promise"));
      }
      const std::optional<Wave> w = WitnessWave(side, e, p);
      if (!w) {
        fail_rt(absl::StrCat(game, ": no witness wave"));
        continue;
      }
      absl::StatusOr<DerivedStrategy> d = WaveToStrategy(tree, start, *w);
      if (!d.ok()) {
        fail_rt(absl::StrCat(game, ": wave to strategy: ", d.status().ToString()));
        continue;
      }
      if (absl::Status s = CheckWinningStrategy(tree, start, d->strategy); !s.ok()) {
        fail_rt(absl::StrCat(game, ": derived strategy: ", s.ToString()));
        continue;
      }
      absl::StatusOr<GluedWave> back = StrategyToWave(tree, start, d->strategy);
      if (!back.ok()) {
        fail_rt(absl::StrCat(game, ": strategy to wave: ", back.status().ToString()));
      } else if (!FulfilsPlain(side, e, back->wave, p)) {
        fail_rt(absl::StrCat(game, ": round-trip wave does not fulfil the promise"));
      }
    }
  }
  return out;
}

absl::StatusOr<Report> RunSuite(const SuiteSpec& requested) {
  absl::StatusOr<SuiteSpec> resolved = Resolve(requested);
  if (!resolved.ok()) return resolved.status();
  const SuiteSpec& spec = *resolved;
  const std::string& name = spec.name;
  if (name == "blockstr") return RunFamily(spec, SweepFamily(VerifyBlockstr));
  if (name == "lem5") return RunFamily(spec, SweepFamily(VerifyLem5Minus));
  if (name == "lem4") return RunFamily(spec, SweepFamily(VerifyLem4Minus));
  if (name == "5sets") {
    return RunFamily(spec, PairFamily(CatalogThenRandom(spec.n, 5, 0, spec.seed),
                                      CheckFiveSets));
  }
  if (name == "leqP") {
    Family<int> f;
    f.instances = {spec.n};
    f.check = [](const int& n, const Deadline& d) { return CheckLeqP(n, d); };
    f.serialize = [](const int& n) { return ParamLine("n", {absl::StrCat(n)}); };
    return RunFamily(spec, f);
  }
  if (name == "pc") {
    return RunFamily(spec, PairFamily(CatalogThenRandom(spec.n, 4, spec.trials, spec.seed),
                                      CheckPC));
  }
  if (name == "lemma27" || name == "lemma17") {
    const bool is27 = name == "lemma27";
    return RunFamily(spec, PairFamily(RandomPairs(1, spec.n, spec.trials, spec.seed),
                                      [is27](const MatroidPair& p, const Deadline& d) {
                                        return CheckLemma(p, d, is27);
                                      }));
  }
  if (name == "game" || name == "roundtrip") {
    const bool roundtrip = name == "roundtrip";
    return RunFamily(spec, TreeFamily(spec, [roundtrip](const TreeCase& c, const Deadline& d) {
                       return GameOutcome(c, d, roundtrip);
                     }));
  }
  if (name == "tominor") {
    Family<TreeCase> f;
    RandomTreeOptions options;
    options.max_nodes = spec.nodes;
    options.max_node_ground = TreeGroundCap(spec);
    for (int64_t i = 0; i < spec.trials; ++i) {
      const uint64_t s = Mix(spec.seed, i);
      TreeCase c;
      c.tree = RandomPairTree(s, options);
      std::mt19937_64 rng(s);
      const Mask full = FullMask(static_cast<int>(c.tree.m.ground.size()));
      c.contract = static_cast<Mask>(rng()) & full;
      c.del = static_cast<Mask>(rng()) & full & ~c.contract;
      f.instances.push_back(std::move(c));
    }
    f.check = CheckTreeMinorCase;
    f.shrink = ShrinkTreeCase;
    f.serialize = SerializeTreeCase;
    return RunFamily(spec, f);
  }
  if (name == "runchains") return RunFamily(spec, ChainFamily(spec.n));
  if (name == "tacticians") {
    Family<Arena> f;
    // The micro arena (U_{1,2}, U_{1,2}) with one upper edge comes first.
    const Matroid u12 = Matroid::Uniform(1, DefaultNames(2)).value();
    f.instances.push_back(Arena{MatroidPair{u12, u12}, Bit(1), 0});
    for (Arena& a : RandomArenas(spec.n, spec.trials, spec.seed)) {
      f.instances.push_back(std::move(a));
    }
    f.check = CheckTacticianArena;
    f.shrink = ShrinkArena;
    f.serialize = SerializeArena;
    return RunFamily(spec, f);
  }
  return InvalidParameter(absl::StrCat("unknown suite '", name, "'"));
}

absl::StatusOr<bool> ReplayCounterexample(absl::string_view suite,
                                          absl::string_view instance) {
  const Deadline deadline(3600);
  const std::string name(suite);
  if (FindSuite(name) == nullptr) {
    return InvalidParameter(absl::StrCat("unknown suite '", name, "'"));
  }
  auto failed = [](const Outcome& o) { return o.verdict == Verdict::kFail; };
  if (name == "blockstr") return failed(FromSweep(VerifyBlockstr(), {}));
  if (name == "lem5") return failed(FromSweep(VerifyLem5Minus(), {}));
  if (name == "lem4") return failed(FromSweep(VerifyLem4Minus(), {}));
  if (name == "leqP") {
    const auto params = ReadParams(instance);
    auto it = params.find("n");
    int n = 4;
    if (it != params.end() && !it->second.empty()) n = std::stoi(it->second.front());
    return failed(CheckLeqP(n, deadline));
  }
  if (name == "game" || name == "roundtrip" || name == "tominor") {
    absl::StatusOr<TreeCase> c = ParseTreeCase(instance);
    if (!c.ok()) return c.status();
    if (name == "tominor") return failed(CheckTreeMinorCase(*c, deadline));
    return failed(GameOutcome(*c, deadline, name == "roundtrip"));
  }
  if (name == "tacticians") {
    absl::StatusOr<Arena> a = ParseArena(instance);
    if (!a.ok()) return a.status();
    return failed(CheckTacticianArena(*a, deadline));
  }
  absl::StatusOr<MatroidPair> pair = ParsePair(instance);
  if (!pair.ok()) return pair.status();
  if (name == "5sets") return failed(CheckFiveSets(*pair, deadline));
  if (name == "pc") return failed(CheckPC(*pair, deadline));
  if (name == "lemma27") return failed(CheckLemma(*pair, deadline, true));
  if (name == "lemma17") return failed(CheckLemma(*pair, deadline, false));
  return failed(CheckChains(*pair, 1, deadline));
}

nlohmann::json ReportJson(const Report& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["spec"] = {{"n", r.spec.n},
               {"nodes", r.spec.nodes},
               {"trials", r.spec.trials},
               {"seed", r.spec.seed}};
  j["instances"] = r.instances;
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  j["skipped"] = r.skipped;
  j["tallies"] = r.tallies;
  if (r.counterexample) {
    j["counterexample"] = {{"index", r.counterexample->index},
                           {"instance", r.counterexample->instance},
                           {"trace", r.counterexample->trace}};
  } else {
    j["counterexample"] = nullptr;
  }
  j["result"] = r.ok() ? "pass" : "fail";
  return j;
}

std::string ReportText(const Report& r) {
  std::string out = absl::StrFormat(
      "suite %s (n=%d nodes=%d trials=%d seed=%d): %s\n"
      "  instances %d, passed %d, failed %d, skipped %d, %.2fs\n",
      r.suite, r.spec.n, r.spec.nodes, r.spec.trials, r.spec.seed,
      r.ok() ? "PASS" : "FAIL", r.instances, r.passed, r.failed, r.skipped,
      r.wall_seconds);
  for (const auto& [k, v] : r.tallies) absl::StrAppend(&out, "  ", k, ": ", v, "\n");
  if (r.counterexample) {
    absl::StrAppend(&out, "  first counterexample (instance ", r.counterexample->index,
                    "): ", r.counterexample->trace, "\n");
    for (absl::string_view line : absl::StrSplit(r.counterexample->instance, '\n',
                                                 absl::SkipEmpty())) {
      absl::StrAppend(&out, "    ", line, "\n");
    }
  }
  return out;
}

}  // namespace pcbench
