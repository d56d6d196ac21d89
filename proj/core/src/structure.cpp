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
#include "decstruct/structure.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace decstruct {
namespace {

std::string join_ids(const std::vector<NodeId>& ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) os << ", ";
    os << ids[i];
  }
  return os.str();
}

[[noreturn]] void fail(ValidationErrorKind kind, std::vector<NodeId> nodes,
                       const std::string& detail) {
  throw ValidationError(kind, std::move(nodes), detail);
}

}  // namespace

const char* to_string(ValidationErrorKind kind) {
  switch (kind) {
    case ValidationErrorKind::Empty: return "Empty";
    case ValidationErrorKind::DuplicateNodeId: return "DuplicateNodeId";
    case ValidationErrorKind::UnknownNode: return "UnknownNode";
    case ValidationErrorKind::EmptyLabel: return "EmptyLabel";
    case ValidationErrorKind::ParallelArcs: return "ParallelArcs";
    case ValidationErrorKind::DuplicateArcLabel: return "DuplicateArcLabel";
    case ValidationErrorKind::CycleFound: return "CycleFound";
    case ValidationErrorKind::MultipleSources: return "MultipleSources";
    case ValidationErrorKind::NoSource: return "NoSource";
    case ValidationErrorKind::UnreachableNode: return "UnreachableNode";
  }
  return "Unknown";
}

ValidationError::ValidationError(ValidationErrorKind kind,
                                 std::vector<NodeId> nodes,
                                 const std::string& detail)
    : Error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      nodes_(std::move(nodes)) {}

std::optional<int> DecisionStructure::find(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int DecisionStructure::index(NodeId id) const {
  auto v = find(id);
  if (!v) throw Error("unknown node id " + std::to_string(id));
  return *v;
}

std::optional<int> DecisionStructure::successor(int v,
                                                const ReturnValue& label) const {
  for (int a : out_[v]) {
    if (arcs_[a].label == label) return arcs_[a].head;
  }
  return std::nullopt;
}

std::vector<int> DecisionStructure::sinks() const {
  std::vector<int> result;
  for (int v = 0; v < static_cast<int>(size()); ++v) {
    if (out_[v].empty()) result.push_back(v);
  }
  return result;
}

std::vector<NodeDecl> DecisionStructure::node_decls() const {
  std::vector<NodeDecl> result;
  for (std::size_t v = 0; v < size(); ++v) result.push_back({ids_[v], actions_[v]});
  return result;
}

std::vector<ArcDecl> DecisionStructure::arc_decls() const {
  std::vector<ArcDecl> result;
  for (const Arc& a : arcs_) result.push_back({ids_[a.tail], ids_[a.head], a.label});
  return result;
}

DecisionStructure validate(const std::vector<NodeDecl>& nodes,
                           const std::vector<ArcDecl>& arcs) {
  if (nodes.empty()) fail(ValidationErrorKind::Empty, {}, "structure has no nodes");

  DecisionStructure z;
  const int n = static_cast<int>(nodes.size());
  for (int v = 0; v < n; ++v) {
    if (!z.index_.emplace(nodes[v].id, v).second) {
      fail(ValidationErrorKind::DuplicateNodeId, {nodes[v].id},
           "node id " + std::to_string(nodes[v].id) + " declared twice");
    }
    z.ids_.push_back(nodes[v].id);
    z.actions_.push_back(nodes[v].action);
  }
  z.out_.assign(n, {});
  z.in_.assign(n, {});

  std::set<std::pair<int, int>> pairs;
  std::set<std::pair<int, ReturnValue>> tail_labels;
  std::set<ReturnValue> labels;
  for (const ArcDecl& decl : arcs) {
    auto t = z.find(decl.tail);
    auto h = z.find(decl.head);
    if (!t || !h) {
      NodeId missing = t ? decl.head : decl.tail;
      fail(ValidationErrorKind::UnknownNode, {missing},
           "arc endpoint " + std::to_string(missing) + " is not a node");
    }
    if (decl.label.empty()) {
      fail(ValidationErrorKind::EmptyLabel, {decl.tail, decl.head},
           "arc " + std::to_string(decl.tail) + " -> " +
               std::to_string(decl.head) + " has an empty label");
    }
    if (!pairs.emplace(*t, *h).second) {
      fail(ValidationErrorKind::ParallelArcs, {decl.tail, decl.head},
           "more than one arc from " + std::to_string(decl.tail) + " to " +
               std::to_string(decl.head));
    }
    if (!tail_labels.emplace(*t, decl.label).second) {
      fail(ValidationErrorKind::DuplicateArcLabel, {decl.tail},
           "node " + std::to_string(decl.tail) + " has two arcs labelled '" +
               decl.label + "'");
    }
    labels.insert(decl.label);
    z.arcs_.push_back({*t, *h, decl.label});
  }
  z.labels_.assign(labels.begin(), labels.end());

  std::vector<int> order(z.arcs_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return z.arcs_[x].label < z.arcs_[y].label;
  });
  for (int a : order) {
    z.out_[z.arcs_[a].tail].push_back(a);
    z.in_[z.arcs_[a].head].push_back(a);
  }

  // Cycle detection by iterative DFS, reporting the cycle itself.
  std::vector<int> color(n, 0), parent(n, -1);
  for (int root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < z.out_[v].size()) {
        int w = z.arcs_[z.out_[v][next++]].head;
        if (color[w] == 1) {
          std::vector<NodeId> cycle{z.ids_[w]};
          std::vector<NodeId> back;
          for (int u = v; u != w; u = parent[u]) back.push_back(z.ids_[u]);
          cycle.insert(cycle.end(), back.rbegin(), back.rend());
          fail(ValidationErrorKind::CycleFound, cycle,
               "cycle through nodes " + join_ids(cycle));
        }
        if (color[w] == 0) {
          color[w] = 1;
          parent[w] = v;
          stack.push_back({w, 0});
        }
      } else {
        color[v] = 2;
        stack.pop_back();
      }
    }
  }

  std::vector<NodeId> sources;
  for (int v = 0; v < n; ++v) {
    if (z.in_[v].empty()) sources.push_back(z.ids_[v]);
  }
  if (sources.empty()) fail(ValidationErrorKind::NoSource, {}, "no node has in-degree 0");
  if (sources.size() > 1) {
    fail(ValidationErrorKind::MultipleSources, sources,
         "several nodes have in-degree 0: " + join_ids(sources));
  }
  z.source_ = z.index_.at(sources.front());

  std::vector<bool> seen(n, false);
  std::vector<int> queue{z.source_};
  seen[z.source_] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (int a : z.out_[queue[i]]) {
      int w = z.arcs_[a].head;
      if (!seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!seen[v]) {
      fail(ValidationErrorKind::UnreachableNode, {z.ids_[v]},
           "node " + std::to_string(z.ids_[v]) + " is not reachable from the source");
    }
  }

  // Kahn's algorithm, smallest index first, so the order is deterministic.
  std::vector<int> indegree(n);
  for (int v = 0; v < n; ++v) indegree[v] = static_cast<int>(z.in_[v].size());
  std::set<int> ready{z.source_};
  while (!ready.empty()) {
    int v = *ready.begin();
    ready.erase(ready.begin());
    z.topo_.push_back(v);
    for (int a : z.out_[v]) {
      if (--indegree[z.arcs_[a].head] == 0) ready.insert(z.arcs_[a].head);
    }
  }
  return z;
}

DecisionStructure build(const std::vector<std::string>& actions,
                        const std::vector<ArcDecl>& arcs) {
  std::vector<NodeDecl> nodes;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    nodes.push_back({static_cast<NodeId>(i), actions[i]});
  }
  return validate(nodes, arcs);
}

std::vector<int> selection_path(const DecisionStructure& z,
                                const AbstractState& w) {
  std::vector<int> path{z.source()};
  for (;;) {
    int v = path.back();
    auto it = w.find(z.action(v));
    if (it == w.end()) break;
    auto next = z.successor(v, it->second);
    if (!next) break;
    path.push_back(*next);
  }
  return path;
}

int select(const DecisionStructure& z, const AbstractState& w) {
  return selection_path(z, w).back();
}

std::optional<ReturnValue> derived_return(const DecisionStructure& z,
                                          const AbstractState& w) {
  auto it = w.find(z.action(select(z, w)));
  if (it == w.end()) return std::nullopt;
  return it->second;
}

std::optional<Isomorphism> structurally_equivalent(const DecisionStructure& a,
                                                   const DecisionStructure& b,
                                                   bool match_actions) {
  const int n = static_cast<int>(a.size());
  if (a.size() != b.size() || a.arcs().size() != b.arcs().size()) return std::nullopt;

  std::vector<int> map(n, -1), inverse(n, -1);
  auto bind = [&](int x, int y) {
    if (map[x] == -1 && inverse[y] == -1) {
      if (match_actions && a.action(x) != b.action(y)) return false;
      map[x] = y;
      inverse[y] = x;
      return true;
    }
    return map[x] == y;
  };
  if (!bind(a.source(), b.source())) return std::nullopt;

  // Out-arcs are sorted by label, so corresponding arcs line up pairwise.
  for (int x : a.topological_order()) {
    int y = map[x];
    if (y < 0) return std::nullopt;
    const auto& ax = a.out_arcs(x);
    const auto& by = b.out_arcs(y);
    if (ax.size() != by.size()) return std::nullopt;
    for (std::size_t i = 0; i < ax.size(); ++i) {
      const Arc& p = a.arcs()[ax[i]];
      const Arc& q = b.arcs()[by[i]];
      if (p.label != q.label || !bind(p.head, q.head)) return std::nullopt;
    }
  }
  return Isomorphism{map};
}

DecisionStructure induced(const DecisionStructure& z,
                          const std::vector<int>& members) {
  std::vector<int> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  std::vector<bool> inside(z.size(), false);
  std::vector<NodeDecl> nodes;
  for (int v : sorted) {
    inside[v] = true;
    nodes.push_back({z.id(v), z.action(v)});
  }
  std::vector<ArcDecl> arcs;
  for (const Arc& a : z.arcs()) {
    if (inside[a.tail] && inside[a.head]) {
      arcs.push_back({z.id(a.tail), z.id(a.head), a.label});
    }
  }
  return validate(nodes, arcs);
}

}  // namespace decstruct
