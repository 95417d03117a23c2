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

#ifndef PCBENCH_TEXTIO_H_
#define PCBENCH_TEXTIO_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "json.hpp"
#include "pcbench/game.h"
#include "pcbench/matroid.h"
#include "pcbench/tree.h"
#include "pcbench/waves.h"

namespace pcbench {

// Matroid files, one directive per line; blank lines and lines starting
// with '#' are ignored:
//   ground a b c
//   uniform 2                      or   circuits {a,b} {b,c}
// Element names are letters, digits, '_' and '\''; a brace set lists names
// separated by commas.
//
// Pair files add a second body line for N; with one body line N = M.
//
// Pair-tree files:
//   node <id> <spec> [| <spec>]    spec = ground <names> (uniform <m> | circuits <sets>)
//   edge <id1> <id2> <dummy>
//   root <id> <lower-edge>
// The second spec of a node is its N matroid; without it N = M.
//
// Syntax errors report "line L, column C"; semantic errors (circuit
// axioms, tree rules) keep their kind and name the offending line.
absl::StatusOr<Matroid> ParseMatroid(absl::string_view text);
absl::StatusOr<MatroidPair> ParsePair(absl::string_view text);
absl::StatusOr<PairTree> ParsePairTree(absl::string_view text);

// Canonical forms: uniform when the matroid is uniform, else circuits in
// increasing mask order.
std::string SerializeMatroid(const Matroid& m);
std::string SerializePair(const MatroidPair& pair);
std::string SerializePairTree(const PairTree& tree);

// Report fragments.
nlohmann::json WaveJson(const Matroid& ground, const Wave& w);
nlohmann::json TacticJson(const Arena& arena, const Tactic& t);
nlohmann::json SolveResultJson(const PairTree& tree, const SolveResult& r);
nlohmann::json TranscriptJson(const PairTree& tree, const Transcript& t);
std::string TranscriptText(const PairTree& tree, const Transcript& t);

}  // namespace pcbench

#endif  // PCBENCH_TEXTIO_H_
