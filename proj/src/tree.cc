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

#include "pcbench/tree.h"

#include <algorithm>
#include <map>
#include <set>

#include "absl/strings/str_cat.h"

namespace pcbench {
namespace {

// Fills ground and global from the shape and node matroids.
void Finalize(TreeOfMatroids& tree) {
  std::set<std::string> dummies;
  for (int t = 1; t < tree.shape.size(); ++t) dummies.insert(tree.shape.dummy[t]);
  tree.ground.clear();
  tree.global.assign(tree.shape.size(), {});
  for (int t = 0; t < tree.shape.size(); ++t) {
    for (const std::string& name : tree.node[t].ground()) {
      if (dummies.count(name)) {
        tree.global[t].push_back(-1);
      } else {
        tree.global[t].push_back(static_cast<int>(tree.ground.size()));
        tree.ground.push_back(name);
      }
    }
  }
}

// The matroid `m` with its ground reordered to `names`.
Matroid Reorder(const Matroid& m, const std::vector<std::string>& names) {
  std::vector<int> pos;
  for (const std::string& name : names) pos.push_back(m.IndexOf(name));
  std::vector<bool> table(size_t{1} << names.size());
  for (Mask s = 0; s < table.size(); ++s) {
    Mask orig = 0;
    for (int i : Elements(s)) orig |= Bit(pos[i]);
    table[s] = m.IsIndependent(orig);
  }
  return Matroid::FromIndependenceTable(names, table).value();
}

using Options = std::map<Mask, Precircuit>;

// Precircuits restricted to the subtree at t with t in S, with the parent
// dummy in o(t) exactly when `parent_in`.
const Options& Grow(const TreeOfMatroids& tree, int t, bool parent_in,
                    std::vector<std::optional<Options>>& memo_in,
                    std::vector<std::optional<Options>>& memo_out) {
  auto& memo = parent_in ? memo_in : memo_out;
  if (memo[t]) return *memo[t];
  const TreeShape& shape = tree.shape;
  Options result;
  for (Mask c : tree.node[t].Circuits()) {
    if (shape.up_local[t] >= 0 && Contains(c, shape.up_local[t]) != parent_in) {
      continue;
    }
    Precircuit base;
    base.in.assign(shape.size(), false);
    base.o.assign(shape.size(), 0);
    base.in[t] = true;
    base.o[t] = c;
    Options partial = {{tree.ToGlobal(t, c), base}};
    for (int s : shape.children[t]) {
      if (!Contains(c, shape.down_local[s])) continue;
      const Options& below = Grow(tree, s, true, memo_in, memo_out);
      Options next;
      for (const auto& [m1, p1] : partial) {
        for (const auto& [m2, p2] : below) {
          if (next.count(m1 | m2)) continue;
          Precircuit merged = p1;
          for (int v = 0; v < shape.size(); ++v) {
            if (p2.in[v]) {
              merged.in[v] = true;
              merged.o[v] = p2.o[v];
            }
          }
          next.emplace(m1 | m2, std::move(merged));
        }
      }
      partial = std::move(next);
    }
    for (auto& [mask, pc] : partial) result.emplace(mask, std::move(pc));
  }
  memo[t] = std::move(result);
  return *memo[t];
}

// Mask over `sub`'s ground of the elements of `x` (over `tree`'s ground).
Mask MapMask(const TreeOfMatroids& tree, const TreeOfMatroids& sub, Mask x) {
  Mask out = 0;
  for (int i = 0; i < sub.size(); ++i) {
    auto it = std::find(tree.ground.begin(), tree.ground.end(), sub.ground[i]);
    if (it != tree.ground.end() && Contains(x, int(it - tree.ground.begin()))) {
      out |= Bit(i);
    }
  }
  return out;
}

// A precircuit of a subtree, re-indexed by the original nodes.
Precircuit Widen(const Precircuit& p, const std::vector<int>& nodes, int total) {
  Precircuit out;
  out.in.assign(total, false);
  out.o.assign(total, 0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    out.in[nodes[i]] = p.in[i];
    out.o[nodes[i]] = p.o[i];
  }
  return out;
}

}  // namespace

std::vector<int> TreeShape::Below(int t) const {
  std::vector<int> out = {t};
  for (size_t i = 0; i < out.size(); ++i) {
    for (int c : children[out[i]]) out.push_back(c);
  }
  return out;
}

absl::StatusOr<TreeOfMatroids> TreeOfMatroids::Make(
    const std::vector<std::pair<std::string, Matroid>>& nodes,
    const std::vector<TreeEdge>& edges, const std::string& root) {
  const int n = static_cast<int>(nodes.size());
  if (n == 0) return InvalidParameter("a tree needs at least one node");
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) {
    if (!index.emplace(nodes[i].first, i).second) {
      return InvalidParameter(absl::StrCat("duplicate node '", nodes[i].first, "'"));
    }
  }
  if (!index.count(root)) {
    return InvalidParameter(absl::StrCat("unknown root node '", root, "'"));
  }
  if (static_cast<int>(edges.size()) != n - 1) {
    return InvalidParameter(absl::StrCat("a tree on ", n, " nodes needs ", n - 1,
                                         " edges, got ", edges.size()));
  }
  std::vector<std::vector<std::pair<int, std::string>>> adj(n);
  std::set<std::pair<int, int>> adjacent;
  for (const TreeEdge& e : edges) {
    if (!index.count(e.a) || !index.count(e.b)) {
      return InvalidParameter(
          absl::StrCat("edge ", e.a, " ", e.b, " names an unknown node"));
    }
    const int a = index[e.a], b = index[e.b];
    if (a == b) return InvalidParameter(absl::StrCat("self-loop at ", e.a));
    if (!adjacent.insert({std::min(a, b), std::max(a, b)}).second) {
      return InvalidParameter(absl::StrCat("repeated edge ", e.a, " ", e.b));
    }
    for (int v : {a, b}) {
      if (nodes[v].second.IndexOf(e.dummy) < 0) {
        return InvalidParameter(absl::StrCat("dummy '", e.dummy,
                                             "' is not in the ground of node ",
                                             nodes[v].first));
      }
    }
    adj[a].push_back({b, e.dummy});
    adj[b].push_back({a, e.dummy});
  }
  // Shared names must be exactly the dummies of tree edges.
  std::map<std::string, std::vector<int>> owners;
  for (int i = 0; i < n; ++i) {
    for (const std::string& name : nodes[i].second.ground()) {
      owners[name].push_back(i);
    }
  }
  for (const auto& [name, who] : owners) {
    if (who.size() == 1) continue;
    if (who.size() > 2) {
      return InvalidParameter(
          absl::StrCat("element '", name, "' lies in more than two nodes"));
    }
    bool is_dummy = false;
    for (const auto& [nb, d] : adj[who[0]]) {
      if (nb == who[1] && d == name) is_dummy = true;
    }
    if (!is_dummy) {
      return InvalidParameter(absl::StrCat(
          "nodes ", nodes[who[0]].first, " and ", nodes[who[1]].first,
          " share '", name, "', which is not the dummy of an edge between them"));
    }
  }
  TreeOfMatroids tree;
  TreeShape& shape = tree.shape;
  std::vector<int> order = {index[root]};
  std::vector<int> new_index(n, -1);
  new_index[index[root]] = 0;
  shape.parent = {-1};
  shape.dummy = {""};
  for (size_t i = 0; i < order.size(); ++i) {
    for (const auto& [nb, d] : adj[order[i]]) {
      if (new_index[nb] >= 0) continue;
      new_index[nb] = static_cast<int>(order.size());
      order.push_back(nb);
      shape.parent.push_back(static_cast<int>(i));
      shape.dummy.push_back(d);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    return InvalidParameter("the tree is not connected");
  }
  shape.children.assign(n, {});
  shape.up_local.assign(n, -1);
  shape.down_local.assign(n, -1);
  for (int t = 0; t < n; ++t) {
    shape.ids.push_back(nodes[order[t]].first);
    tree.node.push_back(nodes[order[t]].second);
  }
  for (int t = 1; t < n; ++t) {
    const int p = shape.parent[t];
    shape.children[p].push_back(t);
    shape.up_local[t] = tree.node[t].IndexOf(shape.dummy[t]);
    shape.down_local[t] = tree.node[p].IndexOf(shape.dummy[t]);
  }
  Finalize(tree);
  if (tree.size() > GroundCap()) {
    return InvalidParameter(absl::StrCat("assembled ground of size ", tree.size(),
                                         " exceeds the cap ", GroundCap()));
  }
  return tree;
}

Mask TreeOfMatroids::NodeGround(int t) const {
  Mask out = 0;
  for (int g : global[t]) {
    if (g >= 0) out |= Bit(g);
  }
  return out;
}

Mask TreeOfMatroids::ToLocal(int t, Mask global_mask) const {
  Mask out = 0;
  for (size_t i = 0; i < global[t].size(); ++i) {
    if (global[t][i] >= 0 && Contains(global_mask, global[t][i])) {
      out |= Bit(static_cast<int>(i));
    }
  }
  return out;
}

Mask TreeOfMatroids::ToGlobal(int t, Mask local_mask) const {
  Mask out = 0;
  for (int i : Elements(local_mask)) {
    if (global[t][i] >= 0) out |= Bit(global[t][i]);
  }
  return out;
}

TreeOfMatroids TreeOfMatroids::Dual() const {
  TreeOfMatroids out = *this;
  for (Matroid& m : out.node) m = m.Dual();
  return out;
}

std::pair<TreeOfMatroids, std::vector<int>> TreeOfMatroids::Subtree(
    int t) const {
  const std::vector<int> nodes = shape.Below(t);
  std::vector<int> pos(shape.size(), -1);
  for (size_t i = 0; i < nodes.size(); ++i) pos[nodes[i]] = static_cast<int>(i);
  TreeOfMatroids sub;
  TreeShape& s = sub.shape;
  const int k = static_cast<int>(nodes.size());
  s.children.assign(k, {});
  for (int i = 0; i < k; ++i) {
    const int v = nodes[i];
    s.ids.push_back(shape.ids[v]);
    sub.node.push_back(node[v]);
    s.parent.push_back(i == 0 ? -1 : pos[shape.parent[v]]);
    s.dummy.push_back(i == 0 ? "" : shape.dummy[v]);
    s.up_local.push_back(i == 0 ? -1 : shape.up_local[v]);
    s.down_local.push_back(i == 0 ? -1 : shape.down_local[v]);
    if (i > 0) s.children[pos[shape.parent[v]]].push_back(i);
  }
  Finalize(sub);
  return {std::move(sub), nodes};
}

absl::Status CheckPrecircuit(const TreeOfMatroids& tree, const Precircuit& p) {
  const TreeShape& shape = tree.shape;
  if (static_cast<int>(p.in.size()) != shape.size() ||
      static_cast<int>(p.o.size()) != shape.size()) {
    return InvalidParameter("precircuit must cover every node");
  }
  int count = 0, tops = 0;
  for (int t = 0; t < shape.size(); ++t) {
    if (!p.in[t]) {
      if (p.o[t] != 0) return InvalidParameter("circuit outside the subtree");
      continue;
    }
    ++count;
    if (t == 0 || !p.in[shape.parent[t]]) ++tops;
    const Matroid& m = tree.node[t];
    const Mask c = p.o[t];
    bool circuit = c != 0 && !m.IsIndependent(c);
    for (int x : Elements(c)) circuit &= m.IsIndependent(c & ~Bit(x));
    if (!circuit) {
      return InvalidParameter(
          absl::StrCat("o(", shape.ids[t], ") is not a circuit"));
    }
    if (t > 0 && Contains(c, shape.up_local[t]) != p.in[shape.parent[t]]) {
      return InvalidParameter(absl::StrCat("parent dummy rule fails at ",
                                           shape.ids[t]));
    }
    for (int s : shape.children[t]) {
      if (Contains(c, shape.down_local[s]) != p.in[s]) {
        return InvalidParameter(
            absl::StrCat("child dummy rule fails at ", shape.ids[t]));
      }
    }
  }
  if (count == 0) return InvalidParameter("empty subtree");
  if (tops != 1) return InvalidParameter("subtree is not connected");
  return absl::OkStatus();
}

Mask Underlying(const TreeOfMatroids& tree, const Precircuit& p) {
  Mask out = 0;
  for (int t = 0; t < tree.shape.size(); ++t) {
    if (p.in[t]) out |= tree.ToGlobal(t, p.o[t]);
  }
  return out;
}

std::vector<WitnessedSet> EnumerateUnderlyingSets(const TreeOfMatroids& tree) {
  const int n = tree.shape.size();
  std::vector<std::optional<Options>> memo_in(n), memo_out(n);
  Options all;
  for (int t = 0; t < n; ++t) {
    for (const auto& [mask, pc] : Grow(tree, t, false, memo_in, memo_out)) {
      if (mask != 0) all.emplace(mask, pc);
    }
  }
  std::vector<WitnessedSet> out;
  for (auto& [mask, pc] : all) out.push_back({mask, std::move(pc)});
  return out;
}

std::vector<WitnessedSet> EnumeratePsiCircuits(const TreeOfMatroids& tree) {
  std::vector<WitnessedSet> out;
  for (WitnessedSet& w : EnumerateUnderlyingSets(tree)) {
    bool minimal = true;
    for (const WitnessedSet& k : out) {
      if (IsSubset(k.set, w.set)) minimal = false;
    }
    if (minimal) out.push_back(std::move(w));
  }
  return out;
}

absl::StatusOr<Matroid> Assemble(const TreeOfMatroids& tree) {
  std::vector<Mask> circuits;
  for (const WitnessedSet& w : EnumeratePsiCircuits(tree)) {
    circuits.push_back(w.set);
  }
  return Matroid::FromCircuits(tree.ground, circuits);
}

absl::StatusOr<Matroid> AssembleByTwoSums(const TreeOfMatroids& tree) {
  Matroid current = tree.node[0];
  for (int t = 1; t < tree.shape.size(); ++t) {
    absl::StatusOr<Matroid> next =
        TwoSum(current, tree.node[t], tree.shape.dummy[t]);
    if (!next.ok()) return next.status();
    current = *std::move(next);
  }
  return Reorder(current, tree.ground);
}

absl::StatusOr<TreeOfMatroids> TreeMinor(const TreeOfMatroids& tree,
                                         const std::vector<std::string>& c,
                                         const std::vector<std::string>& d) {
  auto to_mask = [&](const std::vector<std::string>& names) -> absl::StatusOr<Mask> {
    Mask out = 0;
    for (const std::string& name : names) {
      auto it = std::find(tree.ground.begin(), tree.ground.end(), name);
      if (it == tree.ground.end()) {
        for (const std::string& dummy : tree.shape.dummy) {
          if (dummy == name && !name.empty()) {
            return InvalidParameter(
                absl::StrCat("'", name, "' is a dummy edge and cannot be removed"));
          }
        }
        return InvalidParameter(absl::StrCat("unknown element '", name, "'"));
      }
      out |= Bit(static_cast<int>(it - tree.ground.begin()));
    }
    return out;
  };
  absl::StatusOr<Mask> cm = to_mask(c);
  if (!cm.ok()) return cm.status();
  absl::StatusOr<Mask> dm = to_mask(d);
  if (!dm.ok()) return dm.status();
  if (*cm & *dm) return InvalidParameter("contracted and deleted sets overlap");
  std::vector<std::pair<std::string, Matroid>> nodes;
  for (int t = 0; t < tree.shape.size(); ++t) {
    absl::StatusOr<Matroid> minor =
        tree.node[t].Minor(tree.ToLocal(t, *cm), tree.ToLocal(t, *dm));
    if (!minor.ok()) return minor.status();
    nodes.push_back({tree.shape.ids[t], *std::move(minor)});
  }
  std::vector<TreeEdge> edges;
  for (int t = 1; t < tree.shape.size(); ++t) {
    edges.push_back({tree.shape.ids[tree.shape.parent[t]], tree.shape.ids[t],
                     tree.shape.dummy[t]});
  }
  return TreeOfMatroids::Make(nodes, edges, tree.shape.ids[0]);
}

absl::StatusOr<bool> VerifyTreeMinor(const TreeOfMatroids& tree, Mask c,
                                     Mask d) {
  auto names = [&](Mask s) {
    std::vector<std::string> out;
    for (int i : Elements(s)) out.push_back(tree.ground[i]);
    return out;
  };
  absl::StatusOr<TreeOfMatroids> minor = TreeMinor(tree, names(c), names(d));
  if (!minor.ok()) return minor.status();
  absl::StatusOr<Matroid> lhs = Assemble(*minor);
  if (!lhs.ok()) return lhs.status();
  absl::StatusOr<Matroid> whole = Assemble(tree);
  if (!whole.ok()) return whole.status();
  absl::StatusOr<Matroid> rhs = whole->Minor(c, d);
  if (!rhs.ok()) return rhs.status();
  return *lhs == *rhs;
}

std::vector<std::optional<Precircuit>> PickCompatiblePrecircuits(
    const TreeOfMatroids& tree, Mask x, std::optional<int> root_element) {
  const TreeShape& shape = tree.shape;
  const int n = shape.size();
  std::vector<std::optional<Precircuit>> out(n);
  for (int t = 0; t < n; ++t) {
    TreeOfMatroids sub;
    std::vector<int> nodes;
    int d = -1;
    Mask xs = 0;
    if (t == 0) {
      if (!root_element) continue;
      sub = tree;
      nodes = shape.Below(0);
      d = *root_element;
      xs = x & ~Bit(d);
    } else {
      std::tie(sub, nodes) = tree.Subtree(t);
      xs = MapMask(tree, sub, x);
      d = static_cast<int>(std::find(sub.ground.begin(), sub.ground.end(),
                                     shape.dummy[t]) -
                           sub.ground.begin());
    }
    absl::StatusOr<Matroid> assembled = Assemble(sub);
    if (!assembled.ok() || !assembled->Spans(xs, Bit(d))) continue;
    // Reuse the precircuit of the highest ancestor whose subtree has t.
    std::vector<int> path;
    for (int u = shape.parent[t]; u >= 0; u = shape.parent[u]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    for (int u : path) {
      if (!out[u] || !out[u]->in[t]) continue;
      Precircuit p;
      p.in.assign(n, false);
      p.o.assign(n, 0);
      for (int v : nodes) {
        p.in[v] = out[u]->in[v];
        p.o[v] = out[u]->o[v];
      }
      out[t] = std::move(p);
      break;
    }
    if (out[t]) continue;
    for (const WitnessedSet& w : EnumerateUnderlyingSets(sub)) {
      if (Contains(w.set, d) && IsSubset(w.set, xs | Bit(d))) {
        out[t] = Widen(w.witness, nodes, n);
        break;
      }
    }
  }
  return out;
}

absl::StatusOr<PairTree> PairTree::Make(
    const std::vector<std::pair<std::string, MatroidPair>>& nodes,
    const std::vector<TreeEdge>& edges, const std::string& root,
    const std::string& lower) {
  std::vector<std::pair<std::string, Matroid>> ms, ns;
  for (const auto& [id, pair] : nodes) {
    ms.push_back({id, pair.m});
    ns.push_back({id, pair.n});
  }
  absl::StatusOr<TreeOfMatroids> m = TreeOfMatroids::Make(ms, edges, root);
  if (!m.ok()) return m.status();
  absl::StatusOr<TreeOfMatroids> n = TreeOfMatroids::Make(ns, edges, root);
  if (!n.ok()) return n.status();
  const int root_local = m->node[0].IndexOf(lower);
  if (root_local < 0 || m->global[0][root_local] < 0) {
    return InvalidParameter(absl::StrCat(
        "lower edge '", lower, "' is not a non-dummy element of the root node"));
  }
  const int lower_index = m->global[0][root_local];
  return PairTree{*std::move(m), *std::move(n), lower_index};
}

absl::StatusOr<MatroidPair> Assemble(const PairTree& tree) {
  absl::StatusOr<Matroid> m = Assemble(tree.m);
  if (!m.ok()) return m.status();
  absl::StatusOr<Matroid> n = Assemble(tree.n);
  if (!n.ok()) return n.status();
  return MatroidPair::Make(*std::move(m), *std::move(n));
}

Arena ArenaAt(const PairTree& tree, int t) {
  const TreeShape& shape = tree.shape();
  Mask upper = 0;
  for (int c : shape.children[t]) upper |= Bit(shape.down_local[c]);
  int lower = shape.up_local[t];
  if (t == 0) {
    const auto& g = tree.m.global[0];
    lower = static_cast<int>(std::find(g.begin(), g.end(), tree.lower) - g.begin());
  }
  return Arena::Make(tree.NodePair(t), upper, lower).value();
}

}  // namespace pcbench
