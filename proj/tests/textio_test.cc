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

#include "pcbench/textio.h"

#include "doctest.h"
#include "pcbench/catalog.h"
#include "test_util.h"

namespace pcbench {
namespace {

using testing::U;

bool Mentions(const absl::Status& s, const std::string& text) {
  return std::string(s.message()).find(text) != std::string::npos;
}

TEST_CASE("matroid examples") {
  CHECK(ParseMatroid("ground e\nuniform 0").value() == U(0, "e"));
  CHECK(ParseMatroid("ground a b\ncircuits {a,b}").value() == U(1, "ab"));
  CHECK(ParseMatroid("# comment\n\nground a b c\ncircuits {a, b} {c}\n").value() ==
        testing::FromCircuits("abc", {"ab", "c"}));
  CHECK(ParseMatroid("ground\nuniform 0").value().size() == 0);
  CHECK(ParseMatroid("ground a b\ncircuits").value() == U(2, "ab"));
}

TEST_CASE("syntax errors carry line and column") {
  const absl::Status bad = ParseMatroid("ground a b\ncircuits {a,{b}").status();
  CHECK(HasKind(bad, "invalid-parameter"));
  CHECK(Mentions(bad, "line 2, column 13"));
  CHECK(Mentions(ParseMatroid("ground a b\nuniform 3").status(), "line 2, column 9"));
  CHECK(Mentions(ParseMatroid("ground a a\nuniform 1").status(), "line 1, column 10"));
  CHECK(Mentions(ParseMatroid("ground a\ncircuits {z}").status(), "'z'"));
  CHECK(Mentions(ParseMatroid("ground a\nrank 1").status(), "line 2, column 1"));
  CHECK(Mentions(ParseMatroid("ground a$").status(), "line 1, column 9"));
  CHECK(Mentions(ParseMatroid("ground a\n").status(), "line 2"));
  CHECK(Mentions(ParseMatroid("ground a\ncircuits {a}\nuniform 1").status(),
                 "line 3"));
  CHECK(Mentions(ParseMatroid("ground a\ncircuits {}").status(), "nonempty"));
  CHECK(Mentions(ParseMatroid("ground a\ncircuits {a").status(), "line 2, column 12"));
  CHECK(HasKind(ParseMatroid("").status(), "invalid-parameter"));
}

TEST_CASE("semantic errors keep their kind") {
  const absl::Status s = ParseMatroid("ground a b\ncircuits {a} {a,b}").status();
  CHECK(HasKind(s, "not-a-matroid"));
  CHECK(Mentions(s, "line 2"));
}

TEST_CASE("matroid round trip") {
  for (int n = 0; n <= 4; ++n) {
    for (const Matroid& m : LabeledMatroids(n)) {
      const std::string text = SerializeMatroid(m);
      const Matroid back = ParseMatroid(text).value();
      CHECK(back == m);
      CHECK(SerializeMatroid(back) == text);
    }
  }
  CHECK(SerializeMatroid(U(1, "ab")) == "ground a b\nuniform 1\n");
  CHECK(SerializeMatroid(testing::FromCircuits("abc", {"ab", "c"})) ==
        "ground a b c\ncircuits {a,b} {c}\n");
}

TEST_CASE("pairs") {
  const MatroidPair p = ParsePair("ground a b\nuniform 1\nuniform 2").value();
  CHECK(p.m == U(1, "ab"));
  CHECK(p.n == U(2, "ab"));
  const MatroidPair same = ParsePair("ground a b\nuniform 1").value();
  CHECK(same.n == same.m);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const MatroidPair r = RandomPair(seed, 5);
    CHECK(ParsePair(SerializePair(r)).value() == r);
  }
}

TEST_CASE("pair trees") {
  const std::string text =
      "# two nodes\n"
      "node r ground e p uniform 1\n"
      "node l ground p g uniform 1 | ground p g circuits {p,g}\n"
      "edge r l p\n"
      "root r e\n";
  const PairTree t = ParsePairTree(text).value();
  CHECK(t.nodes() == 2);
  CHECK(t.m.ground == std::vector<std::string>{"e", "g"});
  CHECK(t.m.ground[t.lower] == "e");
  CHECK(t.n.node[1] == U(1, "pg"));
  const std::string canonical = SerializePairTree(t);
  const PairTree back = ParsePairTree(canonical).value();
  CHECK(SerializePairTree(back) == canonical);

  for (uint64_t seed = 0; seed < 80; ++seed) {
    const PairTree r = RandomPairTree(seed, {});
    const std::string s = SerializePairTree(r);
    const PairTree b = ParsePairTree(s).value();
    CHECK(SerializePairTree(b) == s);
    CHECK(Assemble(b).value() == Assemble(r).value());
  }

  CHECK(Mentions(ParsePairTree("node r ground e uniform 1\n").status(), "root"));
  CHECK(Mentions(ParsePairTree("leaf r\n").status(), "line 1, column 1"));
  CHECK(Mentions(ParsePairTree("node r ground e uniform 1\nroot r e\nroot r e\n")
                     .status(),
                 "line 3"));
  CHECK(HasKind(ParsePairTree("node r ground e p uniform 1\n"
                              "node l ground p e uniform 1\n"
                              "edge r l p\nroot r e\n")
                    .status(),
                "invalid-parameter"));
  CHECK(Mentions(ParsePairTree("node r ground e uniform 1 | ground e uniform 1 | "
                               "ground e uniform 1\nroot r e\n")
                     .status(),
                 "at most two"));
  CHECK(HasKind(ParsePairTree("node r ground e uniform 1 | ground f uniform 1\n"
                              "root r e\n")
                    .status(),
                "invalid-parameter"));
}

TEST_CASE("reports") {
  const PairTree t = ParsePairTree(
                         "node r ground e p uniform 1\n"
                         "node l ground p g uniform 1\n"
                         "edge r l p\nroot r e\n")
                         .value();
  const SolveResult r = SolvePackingGame(t, Promise::kMMinus).value();
  const nlohmann::json j = SolveResultJson(t, r);
  CHECK(j["winner"] == "Packer");
  CHECK(j["game"] == "packing");
  CHECK(j["strategy"].size() == r.table.strategy.size());
  const Transcript tr =
      PlayTrace(t, Promise::kMMinus, r.table.strategy, LazyChallenger(t, r.table))
          .value();
  const nlohmann::json tj = TranscriptJson(t, tr);
  CHECK(tj["moves"].size() == 3);
  CHECK(tj["moves"][1]["challenge"] == "p");
  CHECK(tj["moves"][1]["m_strong"] == true);
  CHECK(tj["moves"][0]["tactic"]["wave"]["s_m"] == nlohmann::json::array({"p"}));
  CHECK(tj["winner"] == "Packer");
  const std::string text = TranscriptText(t, tr);
  CHECK(text.find("Coverina is stuck; Packer wins") != std::string::npos);
  CHECK(text.find("challenge p M-strong N-weak") != std::string::npos);
  CHECK(WaveJson(U(1, "ab"), Wave{3, 1, 2}).dump() ==
        R"({"s_m":["a"],"s_n":["b"],"x":["a","b"]})");
}

}  // namespace
}  // namespace pcbench
