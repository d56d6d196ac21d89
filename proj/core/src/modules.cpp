// Copyright 2026 The decstruct Authors
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
#include "decstruct/modules.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace decstruct {
namespace {

std::vector<bool> mask_of(const DecisionStructure& z, const NodeSet& x) {
  std::vector<bool> inside(z.size(), false);
  for (int v : x) inside.at(v) = true;
  return inside;
}

// Source of x within its induced subgraph, or -1 if x does not induce a
// decision structure (no unique source, or not every member reachable).
int induced_source(const DecisionStructure& z, const NodeSet& x,
                   const std::vector<bool>& inside) {
  int source = -1;
  for (int v : x) {
    bool internal_in = false;
    for (int a : z.in_arcs(v)) internal_in |= inside[z.arcs()[a].tail];
    if (!internal_in) {
      if (source != -1) return -1;
      source = v;
    }
  }
  if (source == -1) return -1;
  std::vector<bool> seen(z.size(), false);
  std::vector<int> queue{source};
  seen[source] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int a : z.out_arcs(queue[i])) {
      int w = z.arcs()[a].head;
      if (inside[w] && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return queue.size() == x.size() ? source : -1;
}

NodeSet normalized(NodeSet x) {
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

std::optional<Module> check_module(const DecisionStructure& z, const NodeSet& raw) {
  NodeSet x = normalized(raw);
  if (x.empty()) return std::nullopt;
  auto inside = mask_of(z, x);
  int source = induced_source(z, x, inside);
  if (source < 0) return std::nullopt;

  for (int v : x) {
    if (v == source) continue;
    for (int a : z.in_arcs(v)) {
      if (!inside[z.arcs()[a].tail]) return std::nullopt;
    }
  }

  Module m{x, source, {}};
  for (int v : x) {
    for (int a : z.out_arcs(v)) {
      const Arc& arc = z.arcs()[a];
      if (inside[arc.head]) continue;
      auto [it, fresh] = m.external_successors.emplace(arc.label, arc.head);
      if (!fresh && it->second != arc.head) return std::nullopt;
    }
  }
  for (const auto& [label, target] : m.external_successors) {
    for (int v : x) {
      if (!z.successor(v, label)) return std::nullopt;
    }
  }
  return m;
}

bool is_path(const DecisionStructure& q, ReturnValue* label) {
  if (q.size() < 2 || q.arcs().size() != q.size() - 1) return false;
  for (int v = 0; v < static_cast<int>(q.size()); ++v) {
    if (q.out_arcs(v).size() > 1) return false;
  }
  if (q.labels().size() != 1) return false;
  *label = q.labels().front();
  return true;
}

bool contains(const NodeSet& big, const NodeSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool overlap(const NodeSet& a, const NodeSet& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    a[i] < b[j] ? ++i : ++j;
  }
  return false;
}

NodeSet lift(const NodeSet& local, const NodeSet& members) {
  NodeSet out;
  for (int v : local) out.push_back(members[v]);
  return out;
}

DecompositionNode decompose_members(const DecisionStructure& z, const NodeSet& members);

// Partition of sub into blocks, with quotient nodes in topological order.
DecompositionNode make_level(const DecisionStructure& z, const NodeSet& members,
                             const DecisionStructure& sub, std::vector<NodeSet> blocks) {
  std::vector<int> rank(sub.size());
  for (std::size_t i = 0; i < sub.topological_order().size(); ++i) {
    rank[sub.topological_order()[i]] = static_cast<int>(i);
  }
  auto block_rank = [&](const NodeSet& b) {
    int r = static_cast<int>(sub.size());
    for (int v : b) r = std::min(r, rank[v]);
    return r;
  };
  std::sort(blocks.begin(), blocks.end(),
            [&](const NodeSet& a, const NodeSet& b) { return block_rank(a) < block_rank(b); });

  DecompositionNode node;
  node.members = members;
  DecisionStructure q = quotient(sub, blocks);
  ReturnValue label;
  node.kind = is_path(q, &label) ? DecompositionKind::Path : DecompositionKind::Prime;
  node.label = node.kind == DecompositionKind::Path ? label : ReturnValue{};
  for (const NodeSet& b : blocks) node.factors.push_back(decompose_members(z, lift(b, members)));
  node.quotient = std::move(q);
  return node;
}

DecompositionNode decompose_members(const DecisionStructure& z, const NodeSet& members) {
  if (members.size() == 1) {
    DecompositionNode leaf;
    leaf.kind = DecompositionKind::Leaf;
    leaf.members = members;
    return leaf;
  }
  DecisionStructure sub = induced(z, members);
  const int n = static_cast<int>(sub.size());

  std::vector<NodeSet> proper;
  for (const Module& m : find_modules(sub)) {
    if (static_cast<int>(m.members.size()) < n) proper.push_back(m.members);
  }
  std::vector<NodeSet> maximal;
  for (const NodeSet& x : proper) {
    bool dominated = false;
    for (const NodeSet& y : proper) {
      if (y.size() > x.size() && contains(y, x)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(x);
  }
  bool disjoint = true;
  for (std::size_t i = 0; i < maximal.size() && disjoint; ++i) {
    for (std::size_t j = i + 1; j < maximal.size() && disjoint; ++j) {
      disjoint = !overlap(maximal[i], maximal[j]);
    }
  }

  std::vector<NodeSet> blocks;
  if (disjoint) {
    std::vector<bool> covered(n, false);
    for (const NodeSet& x : maximal) {
      blocks.push_back(x);
      for (int v : x) covered[v] = true;
    }
    for (int v = 0; v < n; ++v) {
      if (!covered[v]) blocks.push_back({v});
    }
    return make_level(z, members, sub, std::move(blocks));
  }

  // Overlapping maximal modules: the quotient is a path. The source-containing
  // proper modules whose complement is also a module form a chain; consecutive
  // differences are the blocks of the longest path partition.
  std::vector<NodeSet> chain;
  std::vector<NodeSet> candidates = proper;
  for (int v = 0; v < n; ++v) candidates.push_back({v});
  for (const NodeSet& x : candidates) {
    if (!std::binary_search(x.begin(), x.end(), sub.source())) continue;
    NodeSet rest;
    for (int v = 0; v < n; ++v) {
      if (!std::binary_search(x.begin(), x.end(), v)) rest.push_back(v);
    }
    if (is_module(sub, rest)) chain.push_back(x);
  }
  std::sort(chain.begin(), chain.end(),
            [](const NodeSet& a, const NodeSet& b) { return a.size() < b.size(); });
  NodeSet previous;
  chain.push_back({});
  for (int v = 0; v < n; ++v) chain.back().push_back(v);
  for (const NodeSet& x : chain) {
    if (!contains(x, previous) || x.size() == previous.size()) {
      throw std::logic_error("path modules do not form a chain");
    }
    NodeSet block;
    std::set_difference(x.begin(), x.end(), previous.begin(), previous.end(),
                        std::back_inserter(block));
    blocks.push_back(block);
    previous = x;
  }
  DecompositionNode node = make_level(z, members, sub, std::move(blocks));
  if (node.kind != DecompositionKind::Path) {
    throw std::logic_error("path partition does not yield a uniformly labelled path");
  }
  return node;
}

}  // namespace

bool is_module(const DecisionStructure& z, const NodeSet& x) {
  return check_module(z, x).has_value();
}

Module make_module(const DecisionStructure& z, const NodeSet& x) {
  auto m = check_module(z, x);
  if (!m) {
    std::ostringstream os;
    os << "node set {";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << z.id(x[i]);
    os << "} is not a module";
    throw ModuleError(ModuleErrorKind::NotAModule, x, os.str());
  }
  return *m;
}

std::vector<Module> find_modules(const DecisionStructure& z) {
  const int n = static_cast<int>(z.size());
  const auto& labels = z.labels();
  const int k = static_cast<int>(labels.size());
  const auto& topo = z.topological_order();

  // Augmented successor lists: one target per label, n + c standing for the
  // auxiliary sink of label c.
  std::vector<std::vector<int>> succ(n, std::vector<int>(k));
  std::vector<int> indegree(n + k, 0);
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < k; ++c) {
      auto w = z.successor(v, labels[c]);
      succ[v][c] = w ? *w : n + c;
      ++indegree[succ[v][c]];
    }
  }

  std::vector<Module> result;
  std::vector<int> remaining(n + k, -1);
  std::vector<int> pair_count(static_cast<std::size_t>(n + k) * std::max(k, 1), 0);
  std::vector<int> touched;
  std::vector<int> touched_pairs;
  std::vector<bool> inside(n, false);

  for (std::size_t p = 0; p < topo.size(); ++p) {
    NodeSet members;
    int distinct_pairs = 0;
    auto absorb = [&](int v) {
      members.push_back(v);
      inside[v] = true;
      for (int c = 0; c < k; ++c) {
        int w = succ[v][c];
        if (remaining[w] < 0) {
          remaining[w] = indegree[w];
          touched.push_back(w);
        }
        --remaining[w];
        std::size_t slot = static_cast<std::size_t>(w) * k + c;
        if (pair_count[slot]++ == 0) {
          ++distinct_pairs;
          touched_pairs.push_back(static_cast<int>(slot));
        }
      }
      // Arcs into v from the members absorbed so far are internal now.
      for (int a : z.in_arcs(v)) {
        int t = z.arcs()[a].tail;
        if (!inside[t]) continue;
        int c = static_cast<int>(std::lower_bound(labels.begin(), labels.end(),
                                                  z.arcs()[a].label) - labels.begin());
        std::size_t slot = static_cast<std::size_t>(v) * k + c;
        if (--pair_count[slot] == 0) --distinct_pairs;
      }
    };

    absorb(topo[p]);
    for (std::size_t q = p + 1; q < topo.size(); ++q) {
      int w = topo[q];
      if (remaining[w] != 0) continue;
      absorb(w);
      if (distinct_pairs == k) {
        Module m{members, topo[p], {}};
        std::sort(m.members.begin(), m.members.end());
        for (int slot : touched_pairs) {
          int target = slot / k;
          if (pair_count[slot] > 0 && target < n) {
            m.external_successors.emplace(labels[slot % k], target);
          }
        }
        result.push_back(std::move(m));
      }
    }

    for (int w : touched) remaining[w] = -1;
    for (int s : touched_pairs) pair_count[s] = 0;
    for (int v : members) inside[v] = false;
    touched.clear();
    touched_pairs.clear();
  }

  std::sort(result.begin(), result.end(), [](const Module& a, const Module& b) {
    if (a.source != b.source) return a.source < b.source;
    return a.members < b.members;
  });
  return result;
}

std::vector<NodeSet> nontrivial_modules(const DecisionStructure& z) {
  std::vector<NodeSet> out;
  for (const Module& m : find_modules(z)) {
    if (m.members.size() < z.size()) out.push_back(m.members);
  }
  return out;
}

std::string contracted_action(const DecisionStructure& z, const NodeSet& x) {
  std::vector<NodeId> ids;
  for (int v : x) ids.push_back(z.id(v));
  std::sort(ids.begin(), ids.end());
  std::string name = "mod(";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) name += ",";
    name += std::to_string(ids[i]);
  }
  return name + ")";
}

DecisionStructure quotient(const DecisionStructure& z,
                           const std::vector<NodeSet>& partition) {
  std::vector<int> block(z.size(), -1);
  for (std::size_t b = 0; b < partition.size(); ++b) {
    if (partition[b].empty()) {
      throw ModuleError(ModuleErrorKind::NotAPartition, {}, "partition has an empty block");
    }
    for (int v : partition[b]) {
      if (v < 0 || v >= static_cast<int>(z.size()) || block[v] != -1) {
        throw ModuleError(ModuleErrorKind::NotAPartition, partition[b],
                          "blocks overlap or name unknown nodes");
      }
      block[v] = static_cast<int>(b);
    }
  }
  for (int v = 0; v < static_cast<int>(z.size()); ++v) {
    if (block[v] == -1) {
      throw ModuleError(ModuleErrorKind::NotAPartition, {v},
                        "node " + std::to_string(z.id(v)) + " is in no block");
    }
  }

  std::vector<NodeDecl> nodes;
  for (const NodeSet& raw : partition) {
    NodeSet x = normalized(raw);
    make_module(z, x);
    if (x.size() == 1) {
      nodes.push_back({z.id(x[0]), z.action(x[0])});
    } else {
      NodeId smallest = z.id(x[0]);
      for (int v : x) smallest = std::min(smallest, z.id(v));
      nodes.push_back({smallest, contracted_action(z, x)});
    }
  }
  std::set<std::tuple<int, int, ReturnValue>> seen;
  std::vector<ArcDecl> arcs;
  for (const Arc& a : z.arcs()) {
    int bt = block[a.tail], bh = block[a.head];
    if (bt == bh) continue;
    if (seen.emplace(bt, bh, a.label).second) {
      arcs.push_back({nodes[bt].id, nodes[bh].id, a.label});
    }
  }
  return validate(nodes, arcs);
}

DecisionStructure contract(const DecisionStructure& z, const NodeSet& q) {
  Module m = make_module(z, q);
  std::vector<NodeSet> partition;
  std::vector<bool> inside = mask_of(z, m.members);
  for (int v = 0; v < static_cast<int>(z.size()); ++v) {
    if (v == m.source) {
      partition.push_back(m.members);
    } else if (!inside[v]) {
      partition.push_back({v});
    }
  }
  return quotient(z, partition);
}

Expansion expand_at(const DecisionStructure& z, int v, const DecisionStructure& q) {
  if (v < 0 || v >= static_cast<int>(z.size())) throw Error("expansion node out of range");
  std::set<NodeId> used;
  NodeId top = 0;
  for (int u = 0; u < static_cast<int>(z.size()); ++u) {
    if (u != v) used.insert(z.id(u));
    top = std::max(top, z.id(u));
  }
  std::vector<NodeId> qids;
  for (int u = 0; u < static_cast<int>(q.size()); ++u) {
    NodeId id = q.id(u);
    if (used.count(id)) id = ++top;
    used.insert(id);
    qids.push_back(id);
  }

  std::vector<int> inserted;
  std::vector<NodeDecl> nodes;
  for (int u = 0; u < static_cast<int>(z.size()); ++u) {
    if (u != v) {
      nodes.push_back({z.id(u), z.action(u)});
      continue;
    }
    for (int x = 0; x < static_cast<int>(q.size()); ++x) {
      inserted.push_back(static_cast<int>(nodes.size()));
      nodes.push_back({qids[x], q.action(x)});
    }
  }
  std::vector<ArcDecl> arcs;
  for (const Arc& a : z.arcs()) {
    if (a.tail == v) continue;
    NodeId head = a.head == v ? qids[q.source()] : z.id(a.head);
    arcs.push_back({z.id(a.tail), head, a.label});
  }
  for (const Arc& a : q.arcs()) arcs.push_back({qids[a.tail], qids[a.head], a.label});
  for (int a : z.out_arcs(v)) {
    const Arc& arc = z.arcs()[a];
    for (int x = 0; x < static_cast<int>(q.size()); ++x) {
      if (!q.successor(x, arc.label)) arcs.push_back({qids[x], z.id(arc.head), arc.label});
    }
  }
  return Expansion{validate(nodes, arcs), std::move(inserted)};
}

DecisionStructure expand(const DecisionStructure& z, int v, const DecisionStructure& q) {
  return expand_at(z, v, q).structure;
}

const char* to_string(DecompositionKind kind) {
  switch (kind) {
    case DecompositionKind::Leaf: return "leaf";
    case DecompositionKind::Prime: return "prime";
    case DecompositionKind::Path: return "path";
  }
  return "unknown";
}

DecompositionNode decompose(const DecisionStructure& z) {
  NodeSet all(z.size());
  for (std::size_t v = 0; v < z.size(); ++v) all[v] = static_cast<int>(v);
  return decompose_members(z, all);
}

std::vector<std::vector<NodeSet>> enumerate_modular_partitions(const DecisionStructure& z,
                                                               std::size_t max_nodes) {
  const int n = static_cast<int>(z.size());
  if (z.size() > max_nodes) {
    throw ModuleError(ModuleErrorKind::SizeLimitExceeded, {},
                      "partition enumeration is limited to " + std::to_string(max_nodes) +
                          " nodes");
  }
  std::vector<int> module_cache(1u << n, -1);
  auto block_ok = [&](unsigned mask) {
    if (module_cache[mask] < 0) {
      NodeSet x;
      for (int v = 0; v < n; ++v) {
        if (mask >> v & 1u) x.push_back(v);
      }
      module_cache[mask] = is_module(z, x) ? 1 : 0;
    }
    return module_cache[mask] == 1;
  };

  std::vector<std::vector<NodeSet>> result;
  std::vector<int> assign(n, 0);
  std::function<void(int, int)> rec = [&](int v, int blocks) {
    if (v == n) {
      std::vector<unsigned> masks(blocks, 0);
      for (int u = 0; u < n; ++u) masks[assign[u]] |= 1u << u;
      for (unsigned m : masks) {
        if (!block_ok(m)) return;
      }
      std::vector<NodeSet> partition(blocks);
      for (int u = 0; u < n; ++u) partition[assign[u]].push_back(u);
      result.push_back(std::move(partition));
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      assign[v] = b;
      rec(v + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return result;
}

}  // namespace decstruct
