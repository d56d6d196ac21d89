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
#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include <gtest/gtest.h>

#include "decstruct/modules.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "support/properties.hpp"

namespace decstruct {
namespace {

using corpus::nodes;

std::vector<NodeSet> sorted(std::vector<NodeSet> sets) {
  std::sort(sets.begin(), sets.end());
  return sets;
}

DecisionStructure path(int n, const ReturnValue& label) {
  std::vector<std::string> actions;
  std::vector<ArcDecl> arcs;
  for (int i = 0; i < n; ++i) {
    actions.push_back("p" + std::to_string(i));
    if (i > 0) arcs.push_back({i - 1, i, label});
  }
  return build(actions, arcs);
}

// Every set partition of {0..n-1}, blocks sorted.
void set_partitions(int n, const std::function<void(const std::vector<NodeSet>&)>& f) {
  std::vector<NodeSet> blocks;
  std::function<void(int)> place = [&](int v) {
    if (v == n) {
      f(blocks);
      return;
    }
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      blocks[i].push_back(v);
      place(v + 1);
      blocks[i].pop_back();
    }
    blocks.push_back({v});
    place(v + 1);
    blocks.pop_back();
  };
  place(0);
}

std::uint32_t mask_of(const NodeSet& x) {
  std::uint32_t m = 0;
  for (int v : x) m |= 1u << v;
  return m;
}

TEST(IsModule, TrivialSets) {
  DecisionStructure z = corpus::structure("fig5.ds");
  NodeSet all(z.size());
  for (int v = 0; v < static_cast<int>(z.size()); ++v) all[v] = v;
  EXPECT_TRUE(is_module(z, all));
  for (int v = 0; v < static_cast<int>(z.size()); ++v) EXPECT_TRUE(is_module(z, {v}));
}

TEST(IsModule, CorpusExamples) {
  DecisionStructure fig5 = corpus::structure("fig5.ds");
  EXPECT_TRUE(is_module(fig5, nodes(fig5, {"d", "e", "f"})));
  EXPECT_FALSE(is_module(fig5, nodes(fig5, {"c", "d"})));
  DecisionStructure t = corpus::structure("not_bt.ds");
  EXPECT_FALSE(is_module(t, nodes(t, {"a", "b"})));
  EXPECT_TRUE(is_module(t, nodes(t, {"a", "b", "c", "d"})));
  EXPECT_THROW(make_module(t, nodes(t, {"a", "b"})), ModuleError);
}

TEST(MakeModule, ExternalSuccessors) {
  DecisionStructure z2 = corpus::structure("z2.ds");
  Module h = make_module(z2, nodes(z2, {"b0", "bLow", "calm", "bHigh", "bright", "Land", "Avoid"}));
  EXPECT_EQ(h.source, corpus::node(z2, "b0"));
  EXPECT_EQ(h.external_successors, (std::map<ReturnValue, int>{{"s", corpus::node(z2, "goal")}}));
  Module h2 = make_module(
      z2, nodes(z2, {"goal", "at", "GoTo", "Photograph", "Descend", "Ascend", "Circle"}));
  EXPECT_TRUE(h2.external_successors.empty());
}

TEST(FindModules, PathHasEveryConnectedSubset) {
  for (int n = 2; n <= 6; ++n) {
    std::vector<NodeSet> expected;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        NodeSet x;
        for (int v = i; v <= j; ++v) x.push_back(v);
        expected.push_back(x);
      }
    }
    std::vector<NodeSet> found;
    for (const Module& m : find_modules(path(n, "s"))) found.push_back(m.members);
    EXPECT_EQ(sorted(found), sorted(expected)) << n;
  }
}

TEST(FindModules, Fig5) {
  DecisionStructure z = corpus::structure("fig5.ds");
  std::vector<NodeSet> expected{
      nodes(z, {"a", "b"}),
      nodes(z, {"h", "i"}),
      nodes(z, {"d", "e"}),
      nodes(z, {"e", "f"}),
      nodes(z, {"d", "e", "f"}),
      nodes(z, {"d", "e", "f", "g"}),
      nodes(z, {"d", "e", "f", "g", "h", "i"}),
      nodes(z, {"c", "d", "e", "f", "g", "h", "i"}),
  };
  EXPECT_EQ(sorted(nontrivial_modules(z)), sorted(expected));
  EXPECT_EQ(find_modules(z).size(), expected.size() + 1);
}

TEST(FindModules, NotBt) {
  DecisionStructure t = corpus::structure("not_bt.ds");
  EXPECT_EQ(nontrivial_modules(t), std::vector<NodeSet>{nodes(t, {"a", "b", "c", "d"})});
}

TEST(FindModules, SingleNodeHasNone) {
  EXPECT_TRUE(find_modules(path(1, "s")).empty());
}

TEST(FindModules, SortedBySourceThenMembers) {
  auto modules = find_modules(corpus::structure("z2.ds"));
  for (std::size_t i = 1; i < modules.size(); ++i) {
    EXPECT_TRUE(std::tie(modules[i - 1].source, modules[i - 1].members) <
                std::tie(modules[i].source, modules[i].members));
  }
}

TEST(FindModules, DroneModulesFromTheText) {
  DecisionStructure z2 = corpus::structure("z2.ds");
  auto modules = nontrivial_modules(z2);
  auto has = [&](const NodeSet& x) {
    return std::find(modules.begin(), modules.end(), x) != modules.end();
  };
  EXPECT_TRUE(has(nodes(z2, {"GoTo", "Ascend"})));
  EXPECT_TRUE(has(nodes(z2, {"at", "GoTo", "Ascend", "Photograph", "Descend"})));
  EXPECT_FALSE(has(nodes(z2, {"GoTo", "Photograph"})));
}

TEST(Quotient, Fig5Blocks) {
  DecisionStructure z = corpus::structure("fig5.ds");
  std::vector<NodeSet> p{nodes(z, {"a", "b"}), nodes(z, {"c"}),
                         nodes(z, {"d", "e", "f", "g", "h", "i"})};
  DecisionStructure q = quotient(z, p);
  ASSERT_EQ(q.size(), 3u);
  EXPECT_EQ(q.successor(0, "f"), 1);
  EXPECT_EQ(q.successor(1, "s"), 2);
  EXPECT_EQ(q.arcs().size(), 2u);
  EXPECT_EQ(q.action(1), "c");
  EXPECT_EQ(q.action(0), contracted_action(z, p[0]));
}

TEST(Quotient, TrivialPartitions) {
  DecisionStructure z = corpus::structure("fig5.ds");
  std::vector<NodeSet> singletons;
  NodeSet all;
  for (int v = 0; v < static_cast<int>(z.size()); ++v) {
    singletons.push_back({v});
    all.push_back(v);
  }
  EXPECT_TRUE(structurally_equivalent(quotient(z, singletons), z, true));
  EXPECT_EQ(quotient(z, {all}).size(), 1u);
}

TEST(Quotient, RejectsBadPartitions) {
  DecisionStructure z = corpus::structure("not_bt.ds");
  try {
    quotient(z, {{0, 1}, {2, 3, 4}});
    FAIL();
  } catch (const ModuleError& e) {
    EXPECT_EQ(e.kind(), ModuleErrorKind::NotAModule);
  }
  try {
    quotient(z, {{0, 1}, {1, 2, 3, 4}});
    FAIL();
  } catch (const ModuleError& e) {
    EXPECT_EQ(e.kind(), ModuleErrorKind::NotAPartition);
  }
  EXPECT_THROW(quotient(z, {{0}, {1, 2, 3}}), ModuleError);
}

TEST(Contract, SingletonIsIdentity) {
  DecisionStructure z = corpus::structure("z2.ds");
  EXPECT_TRUE(structurally_equivalent(contract(z, {3}), z, true));
}

TEST(Contract, DroneSafetyModule) {
  DecisionStructure z2 = corpus::structure("z2.ds");
  NodeSet h = nodes(z2, {"b0", "bLow", "calm", "bHigh", "bright", "Land", "Avoid"});
  DecisionStructure c = contract(z2, h);
  EXPECT_EQ(c.size(), 8u);
  EXPECT_EQ(c.action(c.source()), contracted_action(z2, h));
  EXPECT_EQ(c.action(c.source()), "mod(0,1,2,3,4,5,6)");
  DecisionStructure back = expand(c, c.source(), corpus::structure("k.ds"));
  EXPECT_TRUE(structurally_equivalent(back, z2, true));
}

TEST(Expand, SingleNodeRelabels) {
  DecisionStructure z = path(3, "s");
  DecisionStructure one = validate({{0, "x"}}, {});
  DecisionStructure e = expand(z, 1, one);
  EXPECT_TRUE(structurally_equivalent(e, z));
  EXPECT_EQ(e.action(1), "x");
}

TEST(Expand, SinkByPath) {
  // B |-> E, with E expanded by the path E1 -s-> E2.
  DecisionStructure outer = build({"B", "E"}, {{0, 1, "f"}});
  DecisionStructure inner = build({"E1", "E2"}, {{0, 1, "s"}});
  Expansion x = expand_at(outer, 1, inner);
  DecisionStructure expected = build({"B", "E1", "E2"}, {{0, 1, "f"}, {1, 2, "s"}});
  EXPECT_TRUE(structurally_equivalent(x.structure, expected, true));
  EXPECT_EQ(x.inserted.size(), 2u);
}

TEST(Expand, ExitArcsFromEveryNodeLackingTheLabel) {
  DecisionStructure outer = build({"A", "B"}, {{0, 1, "f"}});
  DecisionStructure inner = build({"x", "y"}, {{0, 1, "s"}});
  DecisionStructure e = expand(outer, 0, inner);
  // x keeps its s-arc to y; both x and y get an f-arc to B.
  DecisionStructure expected =
      build({"x", "y", "B"}, {{0, 1, "s"}, {0, 2, "f"}, {1, 2, "f"}});
  EXPECT_TRUE(structurally_equivalent(e, expected, true));
}

TEST(Expand, RandomContractInverts) {
  oracle::Rng rng(oracle::kSeed + 2);
  for (int i = 0; i < 200; ++i) {
    DecisionStructure z = oracle::random_structure(rng, 1 + i % 6, 1 + i % 3);
    DecisionStructure q = oracle::random_structure(rng, 1 + (i / 3) % 4, 1 + (i / 2) % 3);
    int v = std::uniform_int_distribution<int>(0, static_cast<int>(z.size()) - 1)(rng);
    Expansion x = expand_at(z, v, q);
    NodeSet inserted = x.inserted;
    std::sort(inserted.begin(), inserted.end());
    ASSERT_TRUE(is_module(x.structure, inserted));
    EXPECT_TRUE(structurally_equivalent(contract(x.structure, inserted), z));
  }
}

TEST(Decompose, SingleNodeIsLeaf) {
  DecompositionNode d = decompose(path(1, "s"));
  EXPECT_EQ(d.kind, DecompositionKind::Leaf);
  EXPECT_FALSE(d.quotient.has_value());
}

TEST(Decompose, DroneStructure) {
  DecisionStructure z2 = corpus::structure("z2.ds");
  DecompositionNode d = decompose(z2);
  EXPECT_EQ(d.kind, DecompositionKind::Path);
  EXPECT_EQ(d.label, "s");
  ASSERT_EQ(d.factors.size(), 2u);
  EXPECT_EQ(d.factors[0].members,
            nodes(z2, {"b0", "bLow", "calm", "bHigh", "bright", "Land", "Avoid"}));
  EXPECT_EQ(d.factors[0].kind, DecompositionKind::Prime);
  EXPECT_EQ(d.factors[1].members,
            nodes(z2, {"goal", "at", "GoTo", "Photograph", "Descend", "Ascend", "Circle"}));
}

TEST(Decompose, Fig5QuotientsArePaths) {
  DecisionStructure z = corpus::structure("fig5.ds");
  auto modules = nontrivial_modules(z);
  std::vector<const DecompositionNode*> stack;
  DecompositionNode root = decompose(z);
  stack.push_back(&root);
  while (!stack.empty()) {
    const DecompositionNode* d = stack.back();
    stack.pop_back();
    EXPECT_NE(d->kind, DecompositionKind::Prime);
    if (d->kind != DecompositionKind::Leaf && d->members.size() < z.size()) {
      EXPECT_NE(std::find(modules.begin(), modules.end(), d->members), modules.end());
    }
    for (const auto& f : d->factors) stack.push_back(&f);
  }
}

TEST(ModularPartitions, SmallCases) {
  EXPECT_EQ(enumerate_modular_partitions(path(1, "s")).size(), 1u);
  EXPECT_EQ(enumerate_modular_partitions(path(2, "s")).size(), 2u);
  EXPECT_THROW(enumerate_modular_partitions(path(9, "s")), ModuleError);
}

TEST(ModularPartitions, MatchFilteredSetPartitions) {
  oracle::Rng rng(oracle::kSeed + 3);
  std::vector<DecisionStructure> cases{corpus::structure("not_bt.ds")};
  for (int i = 0; i < 30; ++i) cases.push_back(oracle::random_structure(rng, 1 + i % 6, 2));
  for (const auto& z : cases) {
    std::vector<std::vector<NodeSet>> expected;
    set_partitions(static_cast<int>(z.size()), [&](const std::vector<NodeSet>& p) {
      for (const NodeSet& b : p) {
        if (!oracle::module_by_definition(z, mask_of(b))) return;
      }
      std::vector<NodeSet> copy = p;
      std::sort(copy.begin(), copy.end());
      expected.push_back(copy);
    });
    std::vector<std::vector<NodeSet>> found;
    for (auto p : enumerate_modular_partitions(z)) {
      std::sort(p.begin(), p.end());
      found.push_back(p);
    }
    std::sort(expected.begin(), expected.end());
    std::sort(found.begin(), found.end());
    EXPECT_EQ(found, expected);
  }
  EXPECT_EQ(enumerate_modular_partitions(corpus::structure("not_bt.ds")).size(), 3u);
}

TEST(Properties, FindModulesMatchesSubsetEnumeration) {
  auto r = oracle::check_find_modules(oracle::kSeed, 250);
  EXPECT_GE(r.cases, 200u);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Properties, DecompositionShapeAndRefold) {
  auto r = oracle::check_decomposition(oracle::kSeed, 250);
  EXPECT_GE(r.cases, 200u);
  EXPECT_TRUE(r.ok()) << r.first_failure;
}

TEST(Properties, ModulesNest) {
  oracle::Rng rng(oracle::kSeed + 4);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    DecisionStructure z = oracle::random_structure(rng, 3 + i % 6, 1 + i % 3);
    auto modules = nontrivial_modules(z);
    if (modules.empty()) continue;
    const NodeSet& y = modules[i % modules.size()];
    DecisionStructure zy = induced(z, y);
    for (std::uint32_t sub = 1; sub < (1u << y.size()); ++sub) {
      NodeSet x, x_inner;
      for (std::size_t b = 0; b < y.size(); ++b) {
        if (!(sub >> b & 1u)) continue;
        x.push_back(y[b]);
        x_inner.push_back(*zy.find(z.id(y[b])));
      }
      std::sort(x_inner.begin(), x_inner.end());
      EXPECT_EQ(is_module(z, x), is_module(zy, x_inner));
      ++checked;
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(Properties, PathQuotientsShareTheirLabel) {
  oracle::Rng rng(oracle::kSeed + 5);
  for (int i = 0; i < 200; ++i) {
    DecisionStructure z = oracle::random_structure(rng, 2 + i % 6, 1 + i % 3);
    std::set<ReturnValue> labels;
    for (const auto& p : enumerate_modular_partitions(z)) {
      if (p.size() < 2) continue;
      DecisionStructure q = quotient(z, p);
      bool is_path = q.arcs().size() + 1 == q.size();
      for (int v = 0; v < static_cast<int>(q.size()); ++v) {
        if (q.out_arcs(v).size() > 1) is_path = false;
      }
      std::set<ReturnValue> used;
      for (const Arc& a : q.arcs()) used.insert(a.label);
      if (is_path && used.size() == 1) labels.insert(*used.begin());
    }
    EXPECT_LE(labels.size(), 1u);
  }
}

}  // namespace
}  // namespace decstruct
