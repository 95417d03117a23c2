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

// Command line front end: suite verification, game solving, assembly and
// Packing/Covering partitions.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "pcbench/game.h"
#include "pcbench/promise.h"
#include "pcbench/suites.h"
#include "pcbench/textio.h"
#include "pcbench/tree.h"
#include "pcbench/waves.h"

namespace pcbench {
namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int Error(const absl::Status& s) {
  std::cerr << "error: " << s.message() << "\n";
  return kExitUsage;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return InvalidParameter(absl::StrCat("cannot read '", path, "'"));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<std::string> Names(const Matroid& m, Mask s) {
  std::vector<std::string> out;
  for (int i : Elements(s)) out.push_back(m.ground()[i]);
  return out;
}

int Verify(const SuiteSpec& spec, const std::string& emit) {
  absl::StatusOr<Report> r = RunSuite(spec);
  if (!r.ok()) return Error(r.status());
  if (emit == "json") {
    std::cout << ReportJson(*r).dump(2) << "\n";
  } else {
    std::cout << ReportText(*r);
  }
  return r->ok() ? 0 : kExitFail;
}

// A complete tactic strategy: the table's winning tactics plus the first
// legal tactic at every other state, so losing plays can be shown too.
TacticStrategy CompleteStrategy(const PairTree& tree, const GameTable& table) {
  TacticStrategy out = table.strategy;
  TacticOptions options;
  options.limit = 1;
  for (int t = 0; t < tree.nodes(); ++t) {
    for (int i = 0; i < 6; ++i) {
      const Promise p = table.starred ? Star(FromIndex(i)) : FromIndex(i);
      if (out.count({t, p})) continue;
      std::vector<Tactic> legal = LegalTactics(tree, t, p, options);
      if (!legal.empty()) out.emplace(GameState{t, p}, legal.front());
    }
  }
  return out;
}

int SolveGame(const std::string& path, const std::string& promise, bool trace,
              const std::string& emit) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return Error(text.status());
  absl::StatusOr<PairTree> tree = ParsePairTree(*text);
  if (!tree.ok()) return Error(tree.status());
  absl::StatusOr<Promise> p0 = ParsePromise(promise);
  if (!p0.ok()) return Error(p0.status());
  absl::StatusOr<SolveResult> r =
      IsStarred(*p0) ? SolveCoveringGame(*tree, *p0) : SolvePackingGame(*tree, *p0);
  if (!r.ok()) return Error(r.status());
  if (absl::Status s = VerifySolveResult(*tree, *r); !s.ok()) return Error(s);
  std::optional<Transcript> transcript;
  if (trace) {
    absl::StatusOr<Transcript> t = PlayTrace(*tree, *p0, CompleteStrategy(*tree, r->table),
                                             LazyChallenger(*tree, r->table));
    if (!t.ok()) return Error(t.status());
    transcript = *std::move(t);
  }
  if (emit == "json") {
    nlohmann::json j = SolveResultJson(*tree, *r);
    if (transcript) j["transcript"] = TranscriptJson(*tree, *transcript);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (IsStarred(*p0) ? "Covering" : "Packing") << " game from "
              << PromiseName(*p0) << ": " << PlayerName(r->winner) << " wins\n";
    if (transcript) std::cout << TranscriptText(*tree, *transcript);
  }
  return 0;
}

int AssembleFile(const std::string& path, const std::string& emit) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return Error(text.status());
  absl::StatusOr<PairTree> tree = ParsePairTree(*text);
  if (!tree.ok()) return Error(tree.status());
  absl::StatusOr<MatroidPair> pair = Assemble(*tree);
  if (!pair.ok()) return Error(pair.status());
  const std::string lower = pair->m.ground()[tree->lower];
  if (emit == "json") {
    nlohmann::json j;
    j["ground"] = pair->m.ground();
    j["lower"] = lower;
    j["m"] = SerializeMatroid(pair->m);
    j["n"] = SerializeMatroid(pair->n);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# lower edge " << lower << "\n" << SerializePair(*pair);
  }
  return 0;
}

int PackingCovering(const std::string& path, const std::string& emit) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return Error(text.status());
  absl::StatusOr<MatroidPair> pair = ParsePair(*text);
  if (!pair.ok()) return Error(pair.status());
  absl::StatusOr<PCPartition> pc = SolvePackingCovering(*pair);
  if (!pc.ok()) return Error(pc.status());
  if (absl::Status s = VerifyPCPartition(*pair, *pc); !s.ok()) return Error(s);
  const Matroid& m = pair->m;
  if (emit == "json") {
    nlohmann::json j;
    j["p"] = Names(m, pc->p);
    j["q"] = Names(m, pc->q);
    j["wave"] = WaveJson(m, pc->packing);
    j["i_m"] = Names(m, pc->i_m);
    j["i_n"] = Names(m, pc->i_n);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "P = " << m.Format(pc->p) << "\nQ = " << m.Format(pc->q)
              << "\nwave X = " << m.Format(pc->packing.x)
              << " S^M = " << m.Format(pc->packing.s_m)
              << " S^N = " << m.Format(pc->packing.s_n) << "\nI_M = " << m.Format(pc->i_m)
              << "\nI_N = " << m.Format(pc->i_n) << "\n";
  }
  return 0;
}

}  // namespace
}  // namespace pcbench

int main(int argc, char** argv) {
  using namespace pcbench;
  CLI::App app{"Packing/Covering workbench for matroid pairs and trees of matroids"};
  app.require_subcommand(1);
  std::string emit = "text";
  auto emit_option = [&](CLI::App* sub) {
    sub->add_option("--emit", emit, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
  };

  SuiteSpec spec;
  CLI::App* verify = app.add_subcommand("verify", "Run an invariant sweep");
  verify->add_option("suite", spec.name, "Suite name")
      ->required()
      ->check(CLI::IsMember(SuiteNames()));
  verify->add_option("--n", spec.n, "Maximum ground size");
  verify->add_option("--nodes", spec.nodes, "Maximum tree nodes");
  verify->add_option("--trials", spec.trials, "Random instances");
  verify->add_option("--seed", spec.seed, "Seed");
  verify->add_option("--threads", spec.threads, "Worker threads (0: all cores)");
  verify->add_option("--instance-seconds", spec.instance_seconds,
                     "Per-instance wall-time guard");
  emit_option(verify);

  std::string file, promise;
  bool trace = false;
  CLI::App* solve = app.add_subcommand("solve-game", "Solve a Packing or Covering game");
  solve->add_option("file", file, "Pair-tree file")->required();
  solve->add_option("--promise", promise, "Start promise: bot, M-, M+, N-, N+, top, with * for the Covering game")
      ->required();
  solve->add_flag("--trace", trace, "Print one play against the lazy challenger");
  emit_option(solve);

  CLI::App* assemble = app.add_subcommand("assemble", "Assemble a pair-tree");
  assemble->add_option("file", file, "Pair-tree file")->required();
  emit_option(assemble);

  CLI::App* pc = app.add_subcommand("packing-covering",
                                    "Packing/Covering partition of a matroid pair");
  pc->add_option("file", file, "Pair file")->required();
  emit_option(pc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (verify->parsed()) return Verify(spec, emit);
  if (solve->parsed()) return SolveGame(file, promise, trace, emit);
  if (assemble->parsed()) return AssembleFile(file, emit);
  return PackingCovering(file, emit);
}
