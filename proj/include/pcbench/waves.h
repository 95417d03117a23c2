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

#ifndef PCBENCH_WAVES_H_
#define PCBENCH_WAVES_H_

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pcbench/bits.h"
#include "pcbench/matroid.h"

namespace pcbench {

// (X, S^M, S^N). A cowave is a wave of the dual pair.
struct Wave {
  Mask x = 0;
  Mask s_m = 0;
  Mask s_n = 0;

  bool operator==(const Wave& o) const {
    return x == o.x && s_m == o.s_m && s_n == o.s_n;
  }
  bool operator<(const Wave& o) const {
    return std::tie(x, s_m, s_n) < std::tie(o.x, o.s_m, o.s_n);
  }
};

enum class WaveDefect {
  kNone,
  kOutsideGround,
  kSideOutsideX,
  kSidesOverlap,
  kMNotSpanning,
  kNNotSpanning,
};
const char* WaveDefectName(WaveDefect d);

WaveDefect CheckWave(const MatroidPair& pair, const Wave& w);
inline bool IsWave(const MatroidPair& pair, const Wave& w) {
  return CheckWave(pair, w) == WaveDefect::kNone;
}
inline bool IsCowave(const MatroidPair& pair, const Wave& w) {
  return IsWave(pair.Dual(), w);
}
bool IsHindranceFocusing(const MatroidPair& pair, const Wave& w, int e);
// e lies outside X and in the M-span (N-span) of X.
bool MSpans(const MatroidPair& pair, const Wave& w, int e);
bool NSpans(const MatroidPair& pair, const Wave& w, int e);

std::string FormatWave(const Matroid& m, const Wave& w);

Wave JoinUnchecked(const Wave& a, const Wave& b);
absl::StatusOr<Wave> JoinWaves(const MatroidPair& pair, const Wave& a,
                               const Wave& b);

// A wave with underlying set exactly X, if one exists.
std::optional<Wave> WaveOn(const MatroidPair& pair, Mask x);
Wave MaximalWave(const MatroidPair& pair);
// Every wave of the pair; exponential, intended for small ground sets.
std::vector<Wave> AllWaves(const MatroidPair& pair);

// Witness searches for the fulfilment cases, all relative to element e.
std::optional<Wave> FindWaveMSpanning(const MatroidPair& pair, int e);
std::optional<Wave> FindWaveNSpanning(const MatroidPair& pair, int e);
std::optional<Wave> FindWaveBothSpanning(const MatroidPair& pair, int e);
std::optional<Wave> FindWaveWithNSide(const MatroidPair& pair, int e);
std::optional<Wave> FindWaveWithMSide(const MatroidPair& pair, int e);
std::optional<Wave> FindHindranceFocusing(const MatroidPair& pair, int e);

struct ExchangeChain {
  std::vector<int> nodes;  // y_0, ..., y_n
  bool even = true;
  std::vector<Mask> circuits;  // C_0, ..., C_{n-1}
};

absl::Status CheckExchangeChain(const MatroidPair& pair, Mask i_m, Mask i_n,
                                const ExchangeChain& chain);
// Shortest chain from y to x, lexicographically least among shortest.
absl::StatusOr<std::optional<ExchangeChain>> FindExchangeChain(
    const MatroidPair& pair, Mask i_m, Mask i_n, int y, int x, bool even);
absl::StatusOr<std::pair<Mask, Mask>> AugmentChain(const MatroidPair& pair,
                                                   Mask b_m, Mask b_n,
                                                   const ExchangeChain& chain);
absl::Status CheckAugmentation(const MatroidPair& pair, Mask b_m, Mask b_n,
                               int z, int f, Mask b_m2, Mask b_n2);

struct PCPartition {
  Mask p = 0;
  Mask q = 0;
  Wave packing;
  Mask i_m = 0;
  Mask i_n = 0;
};

absl::StatusOr<PCPartition> SolvePackingCovering(const MatroidPair& pair);
absl::Status VerifyPCPartition(const MatroidPair& pair, const PCPartition& pc);

struct WaveOrCohindrance {
  bool is_wave = false;
  Wave witness;
};
absl::StatusOr<WaveOrCohindrance> FindWaveOrCohindrance(
    const MatroidPair& pair, int e);

// Witnesses are stored in the indexing of the original ground set.
struct LemmaOutcome {
  int case_index = 0;
  Wave witness;
  Mask aux = 0;      // G', H' or J'
  Mask circuit = 0;  // o or b
};

absl::StatusOr<LemmaOutcome> VerifyLemma27(const MatroidPair& pair, Mask g,
                                           Mask h, Mask j, int e);
absl::Status CheckLemma27Outcome(const MatroidPair& pair, Mask g, Mask h,
                                 Mask j, int e, const LemmaOutcome& out);
absl::StatusOr<LemmaOutcome> VerifyLemma17(const MatroidPair& pair, Mask h,
                                           Mask j, int e);
absl::Status CheckLemma17Outcome(const MatroidPair& pair, Mask h, Mask j,
                                 int e, const LemmaOutcome& out);

}  // namespace pcbench

#endif  // PCBENCH_WAVES_H_
