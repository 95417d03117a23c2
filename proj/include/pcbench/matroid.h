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

#ifndef PCBENCH_MATROID_H_
#define PCBENCH_MATROID_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pcbench/bits.h"

namespace pcbench {

inline constexpr int kMaxGround = 16;

// The ground-set cap: kMaxGround, lowered by PC_MAX_GROUND if set.
int GroundCap();

// Error kinds are carried as a "kind: " prefix of the status message.
absl::Status InvalidParameter(absl::string_view msg);
absl::Status NotAMatroid(absl::string_view msg);
absl::Status BasepointDegenerate(absl::string_view msg);
absl::Status TheoremViolation(absl::string_view msg);
bool HasKind(const absl::Status& status, absl::string_view kind);

// A finite matroid on an ordered ground set, stored as its rank function
// over all subsets. Immutable once built.
class Matroid {
 public:
  Matroid() = default;

  static absl::StatusOr<Matroid> Uniform(int rank,
                                         std::vector<std::string> ground);
  static absl::StatusOr<Matroid> FromCircuits(std::vector<std::string> ground,
                                              std::vector<Mask> circuits);
  static absl::StatusOr<Matroid> FromIndependents(
      std::vector<std::string> ground, const std::vector<Mask>& independents);
  // `independent[s]` for every subset s of the ground set.
  static absl::StatusOr<Matroid> FromIndependenceTable(
      std::vector<std::string> ground, const std::vector<bool>& independent);

  int size() const { return static_cast<int>(ground_.size()); }
  const std::vector<std::string>& ground() const { return ground_; }
  Mask ground_mask() const { return FullMask(size()); }
  int IndexOf(std::string_view name) const;
  std::string Format(Mask s) const;

  int Rank(Mask s) const { return rank_[s]; }
  int Rank() const { return rank_[ground_mask()]; }
  bool IsIndependent(Mask s) const { return rank_[s] == Popcount(s); }
  bool Spans(Mask s, Mask x) const { return rank_[s] == rank_[s | x]; }
  Mask Closure(Mask s) const;
  bool IsLoop(int x) const { return rank_[Bit(x)] == 0; }
  bool IsColoop(int x) const { return Rank(ground_mask() & ~Bit(x)) < Rank(); }

  absl::StatusOr<int> CheckedRank(Mask s) const;
  absl::StatusOr<Mask> CheckedClosure(Mask s) const;
  absl::Status CheckSubset(Mask s) const;

  // All families are listed in increasing numeric mask order.
  std::vector<Mask> Independents() const;
  std::vector<Mask> Bases() const;
  std::vector<Mask> Circuits() const;
  std::vector<Mask> Cocircuits() const;

  Matroid Dual() const;
  // Contracts C and deletes D; the result keeps the surviving elements in
  // their original order.
  absl::StatusOr<Matroid> Minor(Mask contract, Mask del) const;
  absl::StatusOr<Matroid> Contract(Mask c) const { return Minor(c, 0); }
  absl::StatusOr<Matroid> Delete(Mask d) const { return Minor(0, d); }
  absl::StatusOr<Matroid> Restrict(Mask keep) const {
    return Minor(0, ground_mask() & ~keep);
  }

  bool operator==(const Matroid& other) const {
    return ground_ == other.ground_ && rank_ == other.rank_;
  }
  bool operator!=(const Matroid& other) const { return !(*this == other); }

 private:
  Matroid(std::vector<std::string> ground, std::vector<uint8_t> rank)
      : ground_(std::move(ground)), rank_(std::move(rank)) {}

  friend absl::StatusOr<Matroid> TwoSum(const Matroid&, const Matroid&,
                                        std::string_view);

  std::vector<std::string> ground_;
  std::vector<uint8_t> rank_;
};

// Exhaustive check of the independence axioms.
absl::Status CheckMatroidAxioms(const Matroid& m);

absl::StatusOr<Matroid> TwoSum(const Matroid& m1, const Matroid& m2,
                               std::string_view basepoint);

// Two matroids on the same ground set.
struct MatroidPair {
  Matroid m;
  Matroid n;

  static absl::StatusOr<MatroidPair> Make(Matroid m, Matroid n);

  int size() const { return m.size(); }
  Mask ground_mask() const { return m.ground_mask(); }
  MatroidPair Dual() const { return {m.Dual(), n.Dual()}; }
  MatroidPair Swapped() const { return {n, m}; }
  // Removes `remove` from both sides; elements of `contract_m` are contracted
  // in M, the rest deleted, and likewise `contract_n` for N.
  MatroidPair Reduce(Mask remove, Mask contract_m, Mask contract_n) const;
  bool operator==(const MatroidPair& o) const { return m == o.m && n == o.n; }
};

std::vector<std::string> DefaultNames(int n);

}  // namespace pcbench

#endif  // PCBENCH_MATROID_H_
