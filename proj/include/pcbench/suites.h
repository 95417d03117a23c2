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

#ifndef PCBENCH_SUITES_H_
#define PCBENCH_SUITES_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"
#include "pcbench/arena.h"
#include "pcbench/tree.h"

namespace pcbench {

// Zero-valued caps and counts select the suite's default.
struct SuiteSpec {
  std::string name;
  int n = 0;            // maximum ground size
  int nodes = 0;        // maximum tree nodes
  int64_t trials = -1;  // random instances; -1 selects the default
  uint64_t seed = 1;
  int threads = 0;              // 0 uses the hardware concurrency
  double instance_seconds = 120;  // per-instance wall-time guard
  bool minimize = true;
};

struct Counterexample {
  int64_t index = 0;
  // A matroid pair or pair-tree file; suite parameters ride along in
  // "# param ..." comment lines that the parsers skip.
  std::string instance;
  std::string trace;
};

struct Report {
  std::string suite;
  SuiteSpec spec;
  int64_t instances = 0;
  int64_t passed = 0;
  int64_t failed = 0;
  int64_t skipped = 0;
  std::optional<Counterexample> counterexample;
  double wall_seconds = 0;
  std::map<std::string, int64_t> tallies;

  bool ok() const { return failed == 0; }
};

// Suite names accepted by RunSuite, in display order.
const std::vector<std::string>& SuiteNames();

// Runs the named sweep; unknown names and out-of-range caps are
// invalid-parameter errors.
absl::StatusOr<Report> RunSuite(const SuiteSpec& spec);

// Re-checks a serialized counterexample of the named suite; true when it
// still fails.
absl::StatusOr<bool> ReplayCounterexample(absl::string_view suite,
                                          absl::string_view instance);

// Per-promise results of the game sweep on one pair-tree.
struct GameCheck {
  bool equivalence = true;   // Packer wins iff a wave fulfils, dually
  bool roundtrip = true;     // wave to strategy to wave keeps fulfilment
  int64_t packer_wins = 0;   // roundtrips attempted on the Packing side
  int64_t coverina_wins = 0;
  std::string trace;
};
GameCheck CheckGameInstance(const PairTree& tree);

// The instances of the game and roundtrip suites: every template tree
// followed by `trials` random trees.
std::vector<PairTree> GameInstances(const SuiteSpec& spec);

// Outcome of the tactician sweep on one arena.
struct TacticianCheck {
  bool skipped = false;  // F empty or over the enumeration caps
  // Challenger triples are explored in classes that share the edges of
  // their first few distinct offers; a class closes once some edge
  // realizes a case.
  double triples = 0;    // challenger triples covered
  int64_t classes = 0;   // closed classes
  int64_t failures = 0;  // complete triples with no listed case
  std::map<std::string, int64_t> cases;  // closed classes per case
  std::string trace;
};
TacticianCheck SpotCheckTacticians(const Arena& arena);

// Reports as JSON (without wall time, so output is reproducible) or text.
nlohmann::json ReportJson(const Report& report);
std::string ReportText(const Report& report);

}  // namespace pcbench

#endif  // PCBENCH_SUITES_H_
