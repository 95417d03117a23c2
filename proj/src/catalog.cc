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

#include "pcbench/catalog.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace pcbench {
namespace {

// Every basis family of rank r on n elements satisfying the exchange axiom.
void AddRank(int n, int r, std::vector<Matroid>& out) {
  std::vector<Mask> sets;
  for (Mask s = 0; s <= FullMask(n); ++s) {
    if (Popcount(s) == r) sets.push_back(s);
  }
  const int k = static_cast<int>(sets.size());
  std::vector<bool> member(size_t{1} << n, false);
  for (uint64_t pick = 1; pick < (uint64_t{1} << k); ++pick) {
    std::vector<Mask> bases;
    for (int i = 0; i < k; ++i) {
      const bool in = (pick >> i) & 1;
      member[sets[i]] = in;
      if (in) bases.push_back(sets[i]);
    }
    bool ok = true;
    for (size_t a = 0; a < bases.size() && ok; ++a) {
      for (size_t b = 0; b < bases.size() && ok; ++b) {
        for (int x : Elements(bases[a] & ~bases[b])) {
          bool found = false;
          for (int y : Elements(bases[b] & ~bases[a])) {
            if (member[(bases[a] & ~Bit(x)) | Bit(y)]) {
              found = true;
              break;
            }
          }
          if (!found) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;
    std::vector<bool> table(size_t{1} << n, false);
    for (Mask s = 0; s <= FullMask(n); ++s) {
      for (Mask b : bases) {
        if (IsSubset(s, b)) {
          table[s] = true;
          break;
        }
      }
    }
    out.push_back(Matroid::FromIndependenceTable(DefaultNames(n), table).value());
  }
}

Matroid Permute(const Matroid& m, const std::vector<int>& perm) {
  const int n = m.size();
  std::vector<bool> table(size_t{1} << n, false);
  for (Mask s = 0; s <= FullMask(n); ++s) {
    if (!m.IsIndependent(s)) continue;
    Mask image = 0;
    for (int i : Elements(s)) image |= Bit(perm[i]);
    table[image] = true;
  }
  return Matroid::FromIndependenceTable(m.ground(), table).value();
}

// Downward closure of the family in place.
void DownClose(std::vector<bool>& fam, int n) {
  for (Mask s = FullMask(n);; --s) {
    if (fam[s]) {
      for (int x : Elements(s)) fam[s & ~Bit(x)] = true;
    }
    if (s == 0) break;
  }
}

Matroid UniformOn(std::mt19937_64& rng, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  const int r = std::uniform_int_distribution<int>(0, n)(rng);
  return Matroid::Uniform(r, names).value();
}

// A random downward-closed family, repaired by adding I + x for the least
// x of J \ I whenever augmentation fails for |J| = |I| + 1.
Matroid RepairedOn(std::mt19937_64& rng, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  std::vector<bool> fam(size_t{1} << n, false);
  fam[0] = true;
  std::bernoulli_distribution keep(0.35);
  const int cap = std::uniform_int_distribution<int>(0, n)(rng);
  for (Mask s = 1; s <= FullMask(n); ++s) {
    if (Popcount(s) <= cap && keep(rng)) fam[s] = true;
  }
  DownClose(fam, n);
  for (bool changed = true; changed;) {
    changed = false;
    for (Mask i = 0; i <= FullMask(n); ++i) {
      if (!fam[i]) continue;
      for (Mask j = 0; j <= FullMask(n); ++j) {
        if (!fam[j] || Popcount(j) != Popcount(i) + 1) continue;
        bool augments = false;
        for (int x : Elements(j & ~i)) augments |= fam[i | Bit(x)];
        if (augments) continue;
        fam[i | Bit(Elements(j & ~i).front())] = true;
        DownClose(fam, n);
        changed = true;
      }
    }
  }
  return Matroid::FromIndependenceTable(names, fam).value();
}

// The cycle matroid of a random multigraph with one edge per element.
Matroid GraphicOn(std::mt19937_64& rng, const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  const int vertices = std::uniform_int_distribution<int>(1, n + 1)(rng);
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.push_back({pick(rng), pick(rng)});
  std::vector<bool> table(size_t{1} << n, false);
  for (Mask s = 0; s <= FullMask(n); ++s) {
    std::vector<int> root(vertices);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int v) {
      while (root[v] != v) v = root[v] = root[root[v]];
      return v;
    };
    bool forest = true;
    for (int i : Elements(s)) {
      const int a = find(edges[i].first), b = find(edges[i].second);
      if (a == b) {
        forest = false;
        break;
      }
      root[a] = b;
    }
    table[s] = forest;
  }
  return Matroid::FromIndependenceTable(names, table).value();
}

}  // namespace

const std::vector<Matroid>& LabeledMatroids(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<Matroid>>* cache =
      new std::map<int, std::vector<Matroid>>();
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache->find(n);
  if (it != cache->end()) return it->second;
  std::vector<Matroid> out;
  for (int r = 0; r <= n; ++r) AddRank(n, r, out);
  return cache->emplace(n, std::move(out)).first->second;
}

std::vector<MatroidPair> LabeledPairs(int n) {
  std::vector<MatroidPair> out;
  const std::vector<Matroid>& ms = LabeledMatroids(n);
  out.reserve(ms.size() * ms.size());
  for (const Matroid& m : ms) {
    for (const Matroid& k : ms) out.push_back({m, k});
  }
  return out;
}

std::vector<PairOrbit> PairOrbits(int n) {
  const std::vector<Matroid>& ms = LabeledMatroids(n);
  const size_t k = ms.size();
  std::map<std::vector<Mask>, size_t> index;
  for (size_t i = 0; i < k; ++i) index[ms[i].Bases()] = i;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<size_t>> image;  // image[p][i]
  do {
    std::vector<size_t> row;
    for (const Matroid& m : ms) row.push_back(index.at(Permute(m, perm).Bases()));
    image.push_back(std::move(row));
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<bool> seen(k * k, false);
  std::vector<PairOrbit> out;
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) {
      if (seen[i * k + j]) continue;
      int64_t size = 0;
      for (const auto& row : image) {
        const size_t key = row[i] * k + row[j];
        if (!seen[key]) {
          seen[key] = true;
          ++size;
        }
      }
      out.push_back({{ms[i], ms[j]}, size});
    }
  }
  return out;
}

absl::StatusOr<RandomModel> ParseRandomModel(absl::string_view name) {
  for (RandomModel m : {RandomModel::kUniformRandomRank,
                        RandomModel::kRepairedDownwardClosed,
                        RandomModel::kGraphicSample}) {
    if (RandomModelName(m) == name) return m;
  }
  return InvalidParameter(absl::StrCat(
      "unknown model '", name,
      "', expected uniform-random-rank, random-downward-closed-repaired or "
      "graphic-sample"));
}

std::string RandomModelName(RandomModel model) {
  switch (model) {
    case RandomModel::kUniformRandomRank:
      return "uniform-random-rank";
    case RandomModel::kRepairedDownwardClosed:
      return "random-downward-closed-repaired";
    case RandomModel::kGraphicSample:
      return "graphic-sample";
  }
  return "";
}

Matroid RandomMatroidOn(std::mt19937_64& rng, std::vector<std::string> names,
                        RandomModel model) {
  switch (model) {
    case RandomModel::kUniformRandomRank:
      return UniformOn(rng, names);
    case RandomModel::kRepairedDownwardClosed:
      return RepairedOn(rng, names);
    case RandomModel::kGraphicSample:
      return GraphicOn(rng, names);
  }
  return UniformOn(rng, names);
}

Matroid RandomMatroid(uint64_t seed, int n, RandomModel model) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(n), static_cast<uint32_t>(model)};
  std::mt19937_64 rng(seq);
  return RandomMatroidOn(rng, DefaultNames(n), model);
}

namespace {

RandomModel PickModel(std::mt19937_64& rng) {
  return static_cast<RandomModel>(std::uniform_int_distribution<int>(0, 2)(rng));
}

}  // namespace

MatroidPair RandomPair(uint64_t seed, int n) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(n), 0x9a1du};
  std::mt19937_64 rng(seq);
  Matroid m = RandomMatroidOn(rng, DefaultNames(n), PickModel(rng));
  Matroid k = RandomMatroidOn(rng, DefaultNames(n), PickModel(rng));
  return {std::move(m), std::move(k)};
}

PairTree RandomPairTree(uint64_t seed, const RandomTreeOptions& options) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(options.max_nodes),
                    static_cast<uint32_t>(options.max_node_ground), 0x7ee5u};
  std::mt19937_64 rng(seq);
  const int max_ground = std::max(2, options.max_node_ground);
  const int k = std::uniform_int_distribution<int>(1, std::max(1, options.max_nodes))(rng);
  std::vector<int> parent = {-1};
  std::vector<int> degree(k, 0);
  for (int t = 1; t < k; ++t) {
    // Attach below a node that still has room for another dummy.
    std::vector<int> room;
    for (int p = 0; p < t; ++p) {
      const int need = degree[p] + 1 + (p == 0 ? 1 : 0);
      if (need <= max_ground) room.push_back(p);
    }
    const int p = room[std::uniform_int_distribution<int>(0, int(room.size()) - 1)(rng)];
    parent.push_back(p);
    ++degree[p];
    ++degree[t];
  }
  int next_name = 0;
  auto fresh = [&]() {
    const int i = next_name++;
    return DefaultNames(i + 1)[i];
  };
  std::vector<std::vector<std::string>> grounds(k);
  std::vector<TreeEdge> edges;
  for (int t = 1; t < k; ++t) {
    const std::string d = absl::StrCat("d", t);
    grounds[parent[t]].push_back(d);
    grounds[t].push_back(d);
    edges.push_back({absl::StrCat("t", parent[t]), absl::StrCat("t", t), d});
  }
  std::string lower;
  for (int t = 0; t < k; ++t) {
    const int lo = t == 0 ? 1 : 0;
    const int hi = max_ground - degree[t];
    const int own = std::uniform_int_distribution<int>(lo, std::max(lo, hi))(rng);
    for (int i = 0; i < own; ++i) {
      const std::string name = fresh();
      if (t == 0 && i == 0) lower = name;
      grounds[t].push_back(name);
    }
  }
  std::vector<std::pair<std::string, MatroidPair>> nodes;
  for (int t = 0; t < k; ++t) {
    Matroid m = RandomMatroidOn(rng, grounds[t], PickModel(rng));
    Matroid n = RandomMatroidOn(rng, grounds[t], PickModel(rng));
    nodes.push_back({absl::StrCat("t", t), {std::move(m), std::move(n)}});
  }
  return PairTree::Make(nodes, edges, "t0", lower).value();
}

std::vector<PairTree> TemplatePairTrees() {
  const std::vector<std::vector<int>> shapes = {
      {-1},          {-1, 0},          {-1, 0, 1},       {-1, 0, 0},
      {-1, 0, 1, 2}, {-1, 0, 0, 0},    {-1, 0, 1, 1},    {-1, 0, 0, 1},
  };
  // Per-shape budget of node-matroid combinations; larger spaces are
  // sampled with a fixed stride.
  constexpr int64_t kBudget = 1500;
  std::vector<PairTree> out;
  for (const std::vector<int>& parent : shapes) {
    const int k = static_cast<int>(parent.size());
    std::vector<std::vector<std::string>> grounds(k);
    std::vector<TreeEdge> edges;
    for (int t = 1; t < k; ++t) {
      const std::string d = absl::StrCat("p", t);
      grounds[parent[t]].push_back(d);
      grounds[t].push_back(d);
      edges.push_back({absl::StrCat("t", parent[t]), absl::StrCat("t", t), d});
    }
    grounds[0].insert(grounds[0].begin(), "e");
    for (int t = 1; t < k; ++t) grounds[t].push_back(DefaultNames(t + 6)[t + 5]);
    // Options per node: every pair of uniform matroids on its ground.
    std::vector<std::vector<MatroidPair>> options(k);
    int64_t total = 1;
    for (int t = 0; t < k; ++t) {
      const int size = static_cast<int>(grounds[t].size());
      for (int r = 0; r <= size; ++r) {
        for (int s = 0; s <= size; ++s) {
          options[t].push_back({Matroid::Uniform(r, grounds[t]).value(),
                                Matroid::Uniform(s, grounds[t]).value()});
        }
      }
      total *= static_cast<int64_t>(options[t].size());
    }
    const int64_t stride = std::max<int64_t>(1, total / kBudget);
    for (int64_t code = 0; code < total; code += stride) {
      std::vector<std::pair<std::string, MatroidPair>> nodes;
      int64_t c = code;
      for (int t = 0; t < k; ++t) {
        const int64_t size = static_cast<int64_t>(options[t].size());
        nodes.push_back({absl::StrCat("t", t), options[t][c % size]});
        c /= size;
      }
      out.push_back(PairTree::Make(nodes, edges, "t0", "e").value());
    }
  }
  return out;
}

}  // namespace pcbench
