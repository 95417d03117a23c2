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

#ifndef PCBENCH_TREE_H_
#define PCBENCH_TREE_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pcbench/arena.h"
#include "pcbench/bits.h"
#include "pcbench/matroid.h"

namespace pcbench {

// An edge of the tree together with its dummy element.
struct TreeEdge {
  std::string a;
  std::string b;
  std::string dummy;
};

// The shape of a rooted tree of matroids of overlap 1. Nodes are stored in
// breadth-first order from the root, children in input order.
struct TreeShape {
  std::vector<std::string> ids;
  std::vector<int> parent;               // -1 at the root
  std::vector<std::vector<int>> children;
  std::vector<std::string> dummy;        // dummy[t] = e(t^- t); "" at the root
  std::vector<int> up_local;             // index of dummy[t] in node t; -1
  std::vector<int> down_local;           // index of dummy[t] in the parent

  int size() const { return static_cast<int>(ids.size()); }
  // Nodes of the subtree rooted at t, in breadth-first order.
  std::vector<int> Below(int t) const;
};

// A tree of matroids with its assembled ground set E(T): the non-dummy
// elements ordered by node, then by position in the node.
struct TreeOfMatroids {
  TreeShape shape;
  std::vector<Matroid> node;
  std::vector<std::string> ground;
  std::vector<std::vector<int>> global;  // per node: local -> E(T) or -1

  static absl::StatusOr<TreeOfMatroids> Make(
      const std::vector<std::pair<std::string, Matroid>>& nodes,
      const std::vector<TreeEdge>& edges, const std::string& root);

  int size() const { return static_cast<int>(ground.size()); }
  // Non-dummy elements of node t as a mask over E(T).
  Mask NodeGround(int t) const;
  // Local mask of node t for a mask over E(T).
  Mask ToLocal(int t, Mask global_mask) const;
  // Mask over E(T) for the non-dummy part of a local mask of node t.
  Mask ToGlobal(int t, Mask local_mask) const;
  TreeOfMatroids Dual() const;
  // The subtree T_{t^- -> t}; its dummy to the parent becomes an ordinary
  // element. Returns the tree and the original node index of each node.
  std::pair<TreeOfMatroids, std::vector<int>> Subtree(int t) const;
};

// A connected subtree S with a circuit of each node matroid in S.
struct Precircuit {
  std::vector<bool> in;  // per node
  std::vector<Mask> o;   // per node, local; 0 outside S

  bool operator==(const Precircuit& other) const {
    return in == other.in && o == other.o;
  }
};

absl::Status CheckPrecircuit(const TreeOfMatroids& tree, const Precircuit& p);
Mask Underlying(const TreeOfMatroids& tree, const Precircuit& p);

struct WitnessedSet {
  Mask set = 0;
  Precircuit witness;
};
// Every distinct nonempty underlying set with one witnessing precircuit,
// in increasing mask order.
std::vector<WitnessedSet> EnumerateUnderlyingSets(const TreeOfMatroids& tree);
// The minimal ones.
std::vector<WitnessedSet> EnumeratePsiCircuits(const TreeOfMatroids& tree);
// The matroid on E(T) whose circuits are the Psi-circuits.
absl::StatusOr<Matroid> Assemble(const TreeOfMatroids& tree);
// Iterated 2-sum over the tree edges; fails on degenerate dummy edges.
absl::StatusOr<Matroid> AssembleByTwoSums(const TreeOfMatroids& tree);

// Node-wise minor. Elements are named; dummy names are rejected.
absl::StatusOr<TreeOfMatroids> TreeMinor(const TreeOfMatroids& tree,
                                         const std::vector<std::string>& c,
                                         const std::vector<std::string>& d);
// assemble(tree_minor(T, C, D)) == assemble(T) / C \ D for masks over E(T).
absl::StatusOr<bool> VerifyTreeMinor(const TreeOfMatroids& tree, Mask c,
                                     Mask d);

// Compatible witnessing precircuits. Entry t (in the original node
// indexing) is set exactly for the nodes of U: non-root nodes whose parent
// dummy is spanned by X in the assembled subtree below it, plus the root
// when `root_element` is given and spanned by X minus itself. Entries
// describe precircuits of the subtree at t, indexed by the original nodes.
std::vector<std::optional<Precircuit>> PickCompatiblePrecircuits(
    const TreeOfMatroids& tree, Mask x, std::optional<int> root_element);

// Two trees of matroids over the same shape and node grounds, with the lower
// edge at the root.
struct PairTree {
  TreeOfMatroids m;
  TreeOfMatroids n;
  int lower = 0;  // index into E(T)

  static absl::StatusOr<PairTree> Make(
      const std::vector<std::pair<std::string, MatroidPair>>& nodes,
      const std::vector<TreeEdge>& edges, const std::string& root,
      const std::string& lower);

  const TreeShape& shape() const { return m.shape; }
  int nodes() const { return m.shape.size(); }
  MatroidPair NodePair(int t) const { return {m.node[t], n.node[t]}; }
  PairTree Dual() const { return {m.Dual(), n.Dual(), lower}; }
};

absl::StatusOr<MatroidPair> Assemble(const PairTree& tree);

// The arena at node t: upper edges are dummies toward children and the
// lower edge is the dummy toward the parent, or the lower edge at the root.
Arena ArenaAt(const PairTree& tree, int t);

}  // namespace pcbench

#endif  // PCBENCH_TREE_H_
