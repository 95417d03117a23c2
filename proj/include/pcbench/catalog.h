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

#ifndef PCBENCH_CATALOG_H_
#define PCBENCH_CATALOG_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "pcbench/matroid.h"
#include "pcbench/tree.h"

namespace pcbench {

// Every matroid on the ground DefaultNames(n), ordered by rank and then by
// the basis family. Cached; n <= 6.
const std::vector<Matroid>& LabeledMatroids(int n);
// Every ordered pair of labeled matroids on n elements.
std::vector<MatroidPair> LabeledPairs(int n);

struct PairOrbit {
  MatroidPair representative;
  int64_t size = 0;  // number of labeled pairs in the orbit
};
// One representative per orbit of the symmetric group acting on both
// matroids simultaneously; the first pair of each orbit in LabeledPairs order.
std::vector<PairOrbit> PairOrbits(int n);

enum class RandomModel {
  kUniformRandomRank,
  kRepairedDownwardClosed,
  kGraphicSample,
};
absl::StatusOr<RandomModel> ParseRandomModel(absl::string_view name);
std::string RandomModelName(RandomModel model);

// Deterministic in (seed, n, model). Elements are DefaultNames(n) unless
// names are given.
Matroid RandomMatroid(uint64_t seed, int n, RandomModel model);
Matroid RandomMatroidOn(std::mt19937_64& rng, std::vector<std::string> names,
                        RandomModel model);
// Both sides drawn with a model chosen from the seed.
MatroidPair RandomPair(uint64_t seed, int n);

struct RandomTreeOptions {
  int max_nodes = 4;
  int max_node_ground = 4;  // including dummies
};
// A random pair-tree: random shape, node grounds of at least one element,
// random node matroids, lower edge in the root.
PairTree RandomPairTree(uint64_t seed, const RandomTreeOptions& options);

// A fixed family of small pair-trees covering every shape with up to four
// nodes and small node matroids.
std::vector<PairTree> TemplatePairTrees();

}  // namespace pcbench

#endif  // PCBENCH_CATALOG_H_
