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

#ifndef PCBENCH_BITS_H_
#define PCBENCH_BITS_H_

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace pcbench {

// Subsets of a ground set of at most 16 elements, bit i for element i.
using Mask = uint32_t;

inline int Popcount(Mask m) { return std::popcount(m); }
inline bool Contains(Mask m, int i) { return (m >> i) & 1u; }
inline Mask Bit(int i) { return Mask{1} << i; }
inline bool IsSubset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask FullMask(int n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }

// Packs the bits of `m` that lie in `keep` into consecutive low bits.
inline Mask Compress(Mask m, Mask keep) {
  Mask out = 0;
  int j = 0;
  for (int i = 0; keep >> i; ++i) {
    if (Contains(keep, i)) {
      if (Contains(m, i)) out |= Bit(j);
      ++j;
    }
  }
  return out;
}

// Inverse of Compress: spreads low bits of `m` over the positions of `keep`.
inline Mask Expand(Mask m, Mask keep) {
  Mask out = 0;
  int j = 0;
  for (int i = 0; keep >> i; ++i) {
    if (Contains(keep, i)) {
      if (Contains(m, j)) out |= Bit(i);
      ++j;
    }
  }
  return out;
}

inline std::vector<int> Elements(Mask m) {
  std::vector<int> out;
  for (int i = 0; m >> i; ++i) {
    if (Contains(m, i)) out.push_back(i);
  }
  return out;
}

// Calls f(sub) for every subset of `m`, in increasing numeric order.
template <typename F>
void ForEachSubset(Mask m, F&& f) {
  Mask sub = 0;
  while (true) {
    f(sub);
    if (sub == m) break;
    sub = (sub - m) & m;
  }
}

}  // namespace pcbench

#endif  // PCBENCH_BITS_H_
