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

// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero when any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "absl/strings/str_cat.h"
#include "pcbench/arena.h"
#include "pcbench/promise.h"
#include "pcbench/suites.h"

namespace pcbench {
namespace {

using P = Promise;

struct Verdict {
  bool pass = false;
  std::string detail;
};

SuiteSpec Spec(const std::string& name, int n = 0, int64_t trials = -1) {
  SuiteSpec s;
  s.name = name;
  s.n = n;
  s.trials = trials;
  return s;
}

// Runs a suite and appends a one-line summary to `detail`.
bool Run(const SuiteSpec& spec, std::string& detail) {
  absl::StatusOr<Report> r = RunSuite(spec);
  if (!r.ok()) {
    absl::StrAppend(&detail, spec.name, ": ", r.status().message(), "; ");
    return false;
  }
  absl::StrAppend(&detail, spec.name, " ", r->passed, "/", r->instances, " passed, ",
                  r->skipped, " skipped");
  for (const auto& [k, v] : r->tallies) absl::StrAppend(&detail, ", ", k, "=", v);
  if (r->counterexample) {
    absl::StrAppend(&detail, ", counterexample #", r->counterexample->index, ": ",
                    r->counterexample->trace);
  }
  absl::StrAppend(&detail, "; ");
  return r->ok() && r->skipped == 0;
}

Matroid Uniform(int rank, int size) {
  std::vector<std::string> names;
  for (int i = 0; i < size; ++i) names.push_back(std::string(1, "ef"[i]));
  return Matroid::Uniform(rank, names).value();
}

std::optional<int> ExampleValue(int m_rank, int n_rank, int size) {
  const Arena a =
      Arena::Make(MatroidPair::Make(Uniform(m_rank, size), Uniform(n_rank, size)).value(),
                  0, 0)
          .value();
  absl::StatusOr<PromiseSet> s = AttainableSet(a);
  if (!s.ok()) return std::nullopt;
  return ClassifyAttainable(*s);
}

Verdict FiveSets() {
  Verdict v;
  const std::optional<int> got[] = {ExampleValue(0, 0, 1), ExampleValue(1, 1, 1),
                                    ExampleValue(0, 1, 1), ExampleValue(1, 0, 1),
                                    ExampleValue(1, 1, 2)};
  bool examples = got[0] == 1 && got[1] == 2 && got[4] == 5 &&
                  std::set<std::optional<int>>{got[2], got[3]} ==
                      std::set<std::optional<int>>{3, 4};
  absl::StrAppend(&v.detail, "examples ", examples ? "1,2,3/4,5" : "mismatch", "; ");
  v.pass = examples && Run(Spec("5sets", 4), v.detail);
  return v;
}

Verdict LeqP() {
  Verdict v;
  using Edge = std::pair<P, P>;
  std::set<Edge> expected = {{P::kMPlus, P::kTop},   {P::kNPlus, P::kTop},
                             {P::kMMinus, P::kMPlus}, {P::kNMinus, P::kNPlus},
                             {P::kBot, P::kMMinus},   {P::kBot, P::kNMinus}};
  for (const Edge& e : std::set<Edge>(expected)) {
    expected.insert({Star(e.first), Star(e.second)});
  }
  const std::vector<Edge> hasse = HasseEdges();
  const bool diagram = std::set<Edge>(hasse.begin(), hasse.end()) == expected &&
                       hasse.size() == expected.size();
  absl::StrAppend(&v.detail, "diagram ", diagram ? "matches" : "differs", "; ");
  v.pass = diagram && Run(Spec("leqP", 4), v.detail);
  return v;
}

Verdict Single(const std::vector<SuiteSpec>& specs) {
  Verdict v;
  v.pass = true;
  for (const SuiteSpec& s : specs) v.pass = Run(s, v.detail) && v.pass;
  return v;
}

SuiteSpec TreeSpec(const std::string& name) {
  SuiteSpec s = Spec(name, 4, 500);
  s.nodes = 4;
  return s;
}

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace pcbench

int main() {
  using namespace pcbench;
  SuiteSpec minor = TreeSpec("tominor");
  minor.trials = 200;
  const std::vector<Criterion> criteria = {
      {1, "attainable sets take exactly five values", 60, FiveSets},
      {2, "promise order matches the generated diagram", 60, LeqP},
      {3, "blocking sets are the supersets of the ten minimal sets", 1,
       [] { return Single({Spec("blockstr")}); }},
      {4, "packing/covering partitions verify", 300,
       [] { return Single({Spec("pc", 6, 10000)}); }},
      {5, "trichotomy witnesses verify", 600,
       [] { return Single({Spec("lemma27", 6, 1000), Spec("lemma17", 6, 1000)}); }},
      {6, "up-closed triple enumeration", 60,
       [] { return Single({Spec("lem5"), Spec("lem4")}); }},
      {7, "game winner matches wave existence", 900,
       [] { return Single({TreeSpec("game")}); }},
      {8, "wave/strategy roundtrip keeps fulfilment", 900,
       [] { return Single({TreeSpec("roundtrip")}); }},
      {9, "assembled minors commute with tree minors", 120,
       [minor] { return Single({minor}); }},
      {10, "augmentation chains on pairs up to five elements", 120,
       [] { return Single({Spec("runchains", 5)}); }},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v = c.run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.limit_seconds;
    const bool pass = v.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s) %.2fs/%.0fs%s: %s\n", pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), seconds, c.limit_seconds, in_time ? "" : " over budget",
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
