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

#include "pcbench/matroid.h"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace pcbench {
namespace {

absl::Status Tagged(absl::string_view kind, absl::string_view msg,
                    absl::StatusCode code) {
  return absl::Status(code, absl::StrCat(kind, ": ", msg));
}

absl::Status CheckGround(const std::vector<std::string>& ground) {
  if (static_cast<int>(ground.size()) > GroundCap()) {
    return InvalidParameter(absl::StrCat("ground set of size ", ground.size(),
                                         " exceeds the cap ", GroundCap()));
  }
  std::set<std::string> seen;
  for (const std::string& name : ground) {
    if (name.empty()) return InvalidParameter("empty element name");
    if (!seen.insert(name).second) {
      return InvalidParameter(absl::StrCat("duplicate element '", name, "'"));
    }
  }
  return absl::OkStatus();
}

std::vector<uint8_t> RankFromIndependence(int n,
                                          const std::vector<bool>& indep) {
  std::vector<uint8_t> rank(size_t{1} << n, 0);
  for (Mask s = 1; s < (Mask{1} << n); ++s) {
    if (indep[s]) {
      rank[s] = Popcount(s);
      continue;
    }
    uint8_t best = 0;
    for (Mask rest = s; rest; rest &= rest - 1) {
      best = std::max(best, rank[s & ~(rest & -rest)]);
    }
    rank[s] = best;
  }
  return rank;
}

}  // namespace

int GroundCap() {
  static const int cap = [] {
    const char* env = std::getenv("PC_MAX_GROUND");
    if (env == nullptr) return kMaxGround;
    int value = std::atoi(env);
    if (value <= 0) return kMaxGround;
    return std::min(value, kMaxGround);
  }();
  return cap;
}

absl::Status InvalidParameter(absl::string_view msg) {
  return Tagged("invalid-parameter", msg, absl::StatusCode::kInvalidArgument);
}
absl::Status NotAMatroid(absl::string_view msg) {
  return Tagged("not-a-matroid", msg, absl::StatusCode::kFailedPrecondition);
}
absl::Status BasepointDegenerate(absl::string_view msg) {
  return Tagged("basepoint-degenerate", msg,
                absl::StatusCode::kFailedPrecondition);
}
absl::Status TheoremViolation(absl::string_view msg) {
  return Tagged("theorem-violation", msg, absl::StatusCode::kInternal);
}
bool HasKind(const absl::Status& status, absl::string_view kind) {
  absl::string_view msg = status.message();
  return msg.size() > kind.size() && msg.substr(0, kind.size()) == kind &&
         msg[kind.size()] == ':';
}

std::vector<std::string> DefaultNames(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) {
    names.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i))
                           : absl::StrCat("x", i));
  }
  return names;
}

absl::StatusOr<Matroid> Matroid::Uniform(int rank,
                                         std::vector<std::string> ground) {
  if (absl::Status s = CheckGround(ground); !s.ok()) return s;
  const int n = static_cast<int>(ground.size());
  if (rank < 0 || rank > n) {
    return InvalidParameter(
        absl::StrCat("uniform rank ", rank, " outside [0, ", n, "]"));
  }
  std::vector<uint8_t> table(size_t{1} << n);
  for (Mask s = 0; s < table.size(); ++s) {
    table[s] = std::min(Popcount(s), rank);
  }
  return Matroid(std::move(ground), std::move(table));
}

absl::StatusOr<Matroid> Matroid::FromIndependenceTable(
    std::vector<std::string> ground, const std::vector<bool>& independent) {
  if (absl::Status s = CheckGround(ground); !s.ok()) return s;
  const int n = static_cast<int>(ground.size());
  if (independent.size() != (size_t{1} << n)) {
    return InvalidParameter("independence table has the wrong size");
  }
  Matroid m(std::move(ground), RankFromIndependence(n, independent));
  if (absl::Status s = CheckMatroidAxioms(m); !s.ok()) return s;
  return m;
}

absl::StatusOr<Matroid> Matroid::FromIndependents(
    std::vector<std::string> ground, const std::vector<Mask>& independents) {
  if (absl::Status s = CheckGround(ground); !s.ok()) return s;
  const size_t n = ground.size();
  std::vector<bool> table(size_t{1} << n, false);
  for (Mask s : independents) {
    if (s >= table.size()) return InvalidParameter("subset outside ground");
    table[s] = true;
  }
  return FromIndependenceTable(std::move(ground), table);
}

absl::StatusOr<Matroid> Matroid::FromCircuits(std::vector<std::string> ground,
                                              std::vector<Mask> circuits) {
  if (absl::Status s = CheckGround(ground); !s.ok()) return s;
  const int n = static_cast<int>(ground.size());
  const Mask full = FullMask(n);
  std::sort(circuits.begin(), circuits.end());
  circuits.erase(std::unique(circuits.begin(), circuits.end()),
                 circuits.end());
  Matroid shell(ground, {});
  for (Mask c : circuits) {
    if (c == 0) return NotAMatroid("the empty set is not a circuit");
    if (!IsSubset(c, full)) return InvalidParameter("circuit outside ground");
  }
  for (Mask a : circuits) {
    for (Mask b : circuits) {
      if (a != b && IsSubset(a, b)) {
        return NotAMatroid(absl::StrCat("circuit ", shell.Format(a),
                                        " is contained in ", shell.Format(b)));
      }
    }
  }
  std::vector<bool> dependent(size_t{1} << n, false);
  for (Mask c : circuits) dependent[c] = true;
  for (Mask s = 1; s <= full; ++s) {
    if (dependent[s]) continue;
    for (Mask rest = s; rest; rest &= rest - 1) {
      if (dependent[s & ~(rest & -rest)]) {
        dependent[s] = true;
        break;
      }
    }
  }
  for (size_t i = 0; i < circuits.size(); ++i) {
    for (size_t j = i + 1; j < circuits.size(); ++j) {
      const Mask common = circuits[i] & circuits[j];
      for (int x : Elements(common)) {
        if (!dependent[(circuits[i] | circuits[j]) & ~Bit(x)]) {
          return NotAMatroid(absl::StrCat(
              "circuits ", shell.Format(circuits[i]), " and ",
              shell.Format(circuits[j]), " violate elimination at ",
              shell.ground()[x]));
        }
      }
    }
  }
  std::vector<bool> independent(dependent.size());
  for (size_t s = 0; s < dependent.size(); ++s) independent[s] = !dependent[s];
  return FromIndependenceTable(std::move(ground), independent);
}

int Matroid::IndexOf(std::string_view name) const {
  for (int i = 0; i < size(); ++i) {
    if (ground_[i] == name) return i;
  }
  return -1;
}

std::string Matroid::Format(Mask s) const {
  std::vector<std::string> names;
  for (int i : Elements(s)) {
    names.push_back(i < size() ? ground_[i] : absl::StrCat("#", i));
  }
  return absl::StrCat("{", absl::StrJoin(names, ","), "}");
}

Mask Matroid::Closure(Mask s) const {
  Mask out = s;
  const int r = rank_[s];
  for (int x = 0; x < size(); ++x) {
    if (rank_[s | Bit(x)] == r) out |= Bit(x);
  }
  return out;
}

absl::Status Matroid::CheckSubset(Mask s) const {
  if (!IsSubset(s, ground_mask())) {
    return InvalidParameter("subset is not contained in the ground set");
  }
  return absl::OkStatus();
}

absl::StatusOr<int> Matroid::CheckedRank(Mask s) const {
  if (absl::Status st = CheckSubset(s); !st.ok()) return st;
  return Rank(s);
}

absl::StatusOr<Mask> Matroid::CheckedClosure(Mask s) const {
  if (absl::Status st = CheckSubset(s); !st.ok()) return st;
  return Closure(s);
}

std::vector<Mask> Matroid::Independents() const {
  std::vector<Mask> out;
  for (Mask s = 0; s <= ground_mask(); ++s) {
    if (IsIndependent(s)) out.push_back(s);
  }
  return out;
}

std::vector<Mask> Matroid::Bases() const {
  std::vector<Mask> out;
  const int r = Rank();
  for (Mask s = 0; s <= ground_mask(); ++s) {
    if (Popcount(s) == r && IsIndependent(s)) out.push_back(s);
  }
  return out;
}

std::vector<Mask> Matroid::Circuits() const {
  std::vector<Mask> out;
  for (Mask s = 1; s <= ground_mask(); ++s) {
    if (IsIndependent(s)) continue;
    bool minimal = true;
    for (Mask rest = s; rest && minimal; rest &= rest - 1) {
      minimal = IsIndependent(s & ~(rest & -rest));
    }
    if (minimal) out.push_back(s);
  }
  return out;
}

std::vector<Mask> Matroid::Cocircuits() const { return Dual().Circuits(); }

Matroid Matroid::Dual() const {
  const Mask full = ground_mask();
  const int r = Rank();
  std::vector<uint8_t> table(rank_.size());
  for (Mask s = 0; s <= full; ++s) {
    table[s] = Popcount(s) + rank_[full & ~s] - r;
  }
  return Matroid(ground_, std::move(table));
}

absl::StatusOr<Matroid> Matroid::Minor(Mask contract, Mask del) const {
  if (!IsSubset(contract | del, ground_mask())) {
    return InvalidParameter("minor sets must lie in the ground set");
  }
  if (contract & del) {
    return InvalidParameter("contracted and deleted sets overlap");
  }
  Mask basis = 0;
  for (int x : Elements(contract)) {
    if (IsIndependent(basis | Bit(x))) basis |= Bit(x);
  }
  const Mask keep = ground_mask() & ~(contract | del);
  std::vector<std::string> names;
  for (int x : Elements(keep)) names.push_back(ground_[x]);
  const int n = Popcount(keep);
  std::vector<bool> indep(size_t{1} << n);
  for (Mask s = 0; s < indep.size(); ++s) {
    indep[s] = IsIndependent(Expand(s, keep) | basis);
  }
  return Matroid(std::move(names), RankFromIndependence(n, indep));
}

absl::Status CheckMatroidAxioms(const Matroid& m) {
  const Mask full = m.ground_mask();
  if (!m.IsIndependent(0)) return NotAMatroid("empty set is dependent");
  for (Mask s = 0; s <= full; ++s) {
    if (!m.IsIndependent(s)) continue;
    for (int x : Elements(s)) {
      if (!m.IsIndependent(s & ~Bit(x))) {
        return NotAMatroid(absl::StrCat("independent ", m.Format(s),
                                        " has dependent subset ",
                                        m.Format(s & ~Bit(x))));
      }
    }
    // Every superset of s inside its span must have rank |s|.
    Mask span = s;
    for (int x = 0; x < m.size(); ++x) {
      if (!m.IsIndependent(s | Bit(x))) span |= Bit(x);
    }
    if (m.Rank(span) != Popcount(s)) {
      return NotAMatroid(absl::StrCat("augmentation fails: ", m.Format(s),
                                      " is maximal in ", m.Format(span),
                                      " but rank is ", m.Rank(span)));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Matroid> TwoSum(const Matroid& m1, const Matroid& m2,
                               std::string_view basepoint) {
  const int p1 = m1.IndexOf(basepoint);
  const int p2 = m2.IndexOf(basepoint);
  if (p1 < 0 || p2 < 0) {
    return InvalidParameter("basepoint missing from a summand");
  }
  for (const std::string& name : m1.ground()) {
    if (name != basepoint && m2.IndexOf(name) >= 0) {
      return InvalidParameter(
          absl::StrCat("summands share '", name, "' besides the basepoint"));
    }
  }
  if (m1.IsLoop(p1) || m1.IsColoop(p1) || m2.IsLoop(p2) || m2.IsColoop(p2)) {
    return BasepointDegenerate(absl::StrCat(
        "basepoint '", std::string(basepoint), "' is a loop or coloop in a summand"));
  }
  std::vector<std::string> ground;
  for (const std::string& name : m1.ground()) {
    if (name != basepoint) ground.push_back(name);
  }
  for (const std::string& name : m2.ground()) {
    if (name != basepoint) ground.push_back(name);
  }
  const Mask keep1 = m1.ground_mask() & ~Bit(p1);
  const Mask keep2 = m2.ground_mask() & ~Bit(p2);
  const int shift = m1.size() - 1;
  std::vector<Mask> circuits;
  std::vector<Mask> through1, through2;
  for (Mask c : m1.Circuits()) {
    Mask local = Compress(c, keep1);
    if (Contains(c, p1)) {
      through1.push_back(local);
    } else {
      circuits.push_back(local);
    }
  }
  for (Mask c : m2.Circuits()) {
    Mask local = Compress(c, keep2) << shift;
    if (Contains(c, p2)) {
      through2.push_back(local);
    } else {
      circuits.push_back(local);
    }
  }
  for (Mask a : through1) {
    for (Mask b : through2) circuits.push_back(a | b);
  }
  return Matroid::FromCircuits(std::move(ground), std::move(circuits));
}

absl::StatusOr<MatroidPair> MatroidPair::Make(Matroid m, Matroid n) {
  if (m.ground() != n.ground()) {
    return InvalidParameter("M and N must share the same ordered ground set");
  }
  return MatroidPair{std::move(m), std::move(n)};
}

MatroidPair MatroidPair::Reduce(Mask remove, Mask contract_m,
                                Mask contract_n) const {
  const Mask cm = remove & contract_m;
  const Mask cn = remove & contract_n;
  return {*m.Minor(cm, remove & ~cm), *n.Minor(cn, remove & ~cn)};
}

}  // namespace pcbench
