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
#include "decstruct/architectures.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "decstruct/modules.hpp"

namespace decstruct {

Kbt Kbt::leaf(std::string action) { return Kbt{std::move(action), {}, {}}; }

Kbt Kbt::node(ReturnValue op, std::vector<Kbt> children) {
  if (children.empty()) throw Error("operator '" + op + "' needs at least one child");
  return Kbt{{}, std::move(op), std::move(children)};
}

Dt Dt::leaf(std::string action) { return Dt{std::move(action), {}}; }

Dt Dt::predicate(std::string action, Dt if_true, Dt if_false) {
  return Dt{std::move(action), {std::move(if_true), std::move(if_false)}};
}

namespace {

void collect_leaves(const Kbt& t, std::vector<std::string>& out) {
  if (t.is_leaf()) {
    out.push_back(t.action);
    return;
  }
  for (const Kbt& c : t.children) collect_leaves(c, out);
}

void collect_ops(const Kbt& t, std::set<ReturnValue>& out) {
  if (t.is_leaf()) return;
  out.insert(t.op);
  for (const Kbt& c : t.children) collect_ops(c, out);
}

int count_leaves(const Kbt& t) {
  if (t.is_leaf()) return 1;
  int n = 0;
  for (const Kbt& c : t.children) n += count_leaves(c);
  return n;
}

// cont maps a value to the leaf ticked next when the current subtree returns
// that value; values missing from cont end the tick.
void emit_kbt(const Kbt& t, const std::map<ReturnValue, int>& cont, int& next_leaf,
              std::vector<NodeDecl>& nodes, std::vector<ArcDecl>& arcs) {
  if (t.is_leaf()) {
    int me = next_leaf++;
    nodes.push_back({me, t.action});
    for (const auto& [value, target] : cont) arcs.push_back({me, target, value});
    return;
  }
  if (t.op.empty()) throw Error("operator with an empty return value");
  int first = next_leaf;
  std::vector<int> starts;
  for (const Kbt& c : t.children) {
    starts.push_back(first);
    first += count_leaves(c);
  }
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    std::map<ReturnValue, int> inner = cont;
    if (i + 1 < t.children.size()) inner[t.op] = starts[i + 1];
    emit_kbt(t.children[i], inner, next_leaf, nodes, arcs);
  }
}

void emit_dt(const Dt& t, std::vector<NodeDecl>& nodes, std::vector<ArcDecl>& arcs) {
  int me = static_cast<int>(nodes.size());
  nodes.push_back({me, t.action});
  if (t.is_leaf()) return;
  if (t.branches.size() != 2) throw Error("decision tree predicate needs two branches");
  int yes = static_cast<int>(nodes.size());
  emit_dt(t.branches[0], nodes, arcs);
  int no = static_cast<int>(nodes.size());
  emit_dt(t.branches[1], nodes, arcs);
  arcs.push_back({me, yes, kTrue});
  arcs.push_back({me, no, kFalse});
}

std::optional<Kbt> extract_from(const DecisionStructure& z, const DecompositionNode& d) {
  if (d.kind == DecompositionKind::Leaf) return Kbt::leaf(z.action(d.members.front()));
  if (d.kind != DecompositionKind::Path) return std::nullopt;
  std::vector<Kbt> children;
  for (int q : d.quotient->topological_order()) {
    auto child = extract_from(z, d.factors[q]);
    if (!child) return std::nullopt;
    children.push_back(std::move(*child));
  }
  return Kbt::node(d.label, std::move(children));
}

Dt extract_tree(const DecisionStructure& z, int v, const ReturnValue& yes,
                const ReturnValue& no) {
  if (z.out_arcs(v).empty()) return Dt::leaf(z.action(v));
  return Dt::predicate(z.action(v), extract_tree(z, *z.successor(v, yes), yes, no),
                       extract_tree(z, *z.successor(v, no), yes, no));
}

}  // namespace

std::vector<std::string> leaves(const Kbt& t) {
  std::vector<std::string> out;
  collect_leaves(t, out);
  return out;
}

std::vector<ReturnValue> operator_values(const Kbt& t) {
  std::set<ReturnValue> ops;
  collect_ops(t, ops);
  return {ops.begin(), ops.end()};
}

DecisionStructure construct_kbt(const Kbt& t) {
  std::vector<NodeDecl> nodes;
  std::vector<ArcDecl> arcs;
  int next_leaf = 0;
  emit_kbt(t, {}, next_leaf, nodes, arcs);
  return validate(nodes, arcs);
}

DecisionStructure construct_bt(const Kbt& t) {
  for (const ReturnValue& op : operator_values(t)) {
    if (op != kSuccess && op != kFailure) {
      throw Error("operator '" + op + "' is not a Sequence (s) or Fallback (f)");
    }
  }
  return construct_kbt(t);
}

DecisionStructure construct_dt(const Dt& t) {
  std::vector<NodeDecl> nodes;
  std::vector<ArcDecl> arcs;
  emit_dt(t, nodes, arcs);
  return validate(nodes, arcs);
}

DecisionStructure construct_tr(const TrProgram& p) {
  if (p.items.empty()) throw Error("teleo-reactive program has no rules");
  std::vector<ArcDecl> arcs;
  for (std::size_t i = 0; i + 1 < p.items.size(); ++i) {
    arcs.push_back({static_cast<int>(i), static_cast<int>(i + 1), kRuleValue});
  }
  return build(p.items, arcs);
}

Kbt compress(const Kbt& t) {
  if (t.is_leaf()) return t;
  std::vector<Kbt> children;
  for (const Kbt& c : t.children) {
    Kbt cc = compress(c);
    if (!cc.is_leaf() && cc.op == t.op) {
      for (Kbt& g : cc.children) children.push_back(std::move(g));
    } else {
      children.push_back(std::move(cc));
    }
  }
  if (children.size() == 1) return children.front();
  return Kbt::node(t.op, std::move(children));
}

std::optional<Kbt> extract_kbt(const DecisionStructure& z) {
  auto t = extract_from(z, decompose(z));
  if (!t) return std::nullopt;
  return compress(*t);
}

std::optional<Dt> extract_dt(const DecisionStructure& z,
                             std::optional<ReturnValue> true_label) {
  if (z.size() == 1) return Dt::leaf(z.action(0));
  const auto& labels = z.labels();
  if (labels.size() != 2) return std::nullopt;
  for (int v = 0; v < static_cast<int>(z.size()); ++v) {
    if (v != z.source() && z.in_arcs(v).size() != 1) return std::nullopt;
    std::size_t out = z.out_arcs(v).size();
    if (out != 0 && out != 2) return std::nullopt;
  }
  ReturnValue yes;
  if (true_label) {
    yes = *true_label;
  } else if (std::find(labels.begin(), labels.end(), kTrue) != labels.end()) {
    yes = kTrue;
  } else {
    yes = labels.front();
  }
  if (std::find(labels.begin(), labels.end(), yes) == labels.end()) return std::nullopt;
  ReturnValue no = labels[0] == yes ? labels[1] : labels[0];
  return extract_tree(z, z.source(), yes, no);
}

DecisionStructure construct(const Architecture& a) {
  return std::visit(
      [](const auto& x) -> DecisionStructure {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Kbt>) {
          return construct_kbt(x);
        } else if constexpr (std::is_same_v<T, Dt>) {
          return construct_dt(x);
        } else {
          return construct_tr(x);
        }
      },
      a);
}

}  // namespace decstruct
