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

#include <gtest/gtest.h>

#include "decstruct/structure.hpp"

namespace decstruct {
namespace {

ValidationErrorKind failure_kind(const std::vector<NodeDecl>& nodes,
                                 const std::vector<ArcDecl>& arcs) {
  try {
    validate(nodes, arcs);
  } catch (const ValidationError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "structure was accepted";
  return ValidationErrorKind::Empty;
}

// a |-> (b -> c): a fails over to b, b succeeds into c.
DecisionStructure fallback_then_sequence() {
  return build({"a", "b", "c"}, {{0, 1, "f"}, {1, 2, "s"}});
}

TEST(Validate, AcceptsSingleNode) {
  DecisionStructure z = validate({{7, "a"}}, {});
  EXPECT_EQ(z.size(), 1u);
  EXPECT_EQ(z.source(), 0);
  EXPECT_EQ(z.id(0), 7);
  EXPECT_TRUE(z.arcs().empty());
  EXPECT_EQ(z.sinks(), std::vector<int>{0});
}

TEST(Validate, ReportsEachViolation) {
  EXPECT_EQ(failure_kind({}, {}), ValidationErrorKind::Empty);
  EXPECT_EQ(failure_kind({{1, "a"}, {1, "b"}}, {}), ValidationErrorKind::DuplicateNodeId);
  EXPECT_EQ(failure_kind({{1, "a"}}, {{1, 2, "s"}}), ValidationErrorKind::UnknownNode);
  EXPECT_EQ(failure_kind({{1, "a"}, {2, "b"}}, {{1, 2, ""}}), ValidationErrorKind::EmptyLabel);
  EXPECT_EQ(failure_kind({{1, "a"}, {2, "b"}}, {{1, 2, "s"}, {1, 2, "f"}}),
            ValidationErrorKind::ParallelArcs);
  EXPECT_EQ(failure_kind({{1, "a"}, {2, "b"}, {3, "c"}}, {{1, 2, "s"}, {1, 3, "s"}}),
            ValidationErrorKind::DuplicateArcLabel);
  EXPECT_EQ(failure_kind({{1, "a"}, {2, "b"}, {3, "c"}},
                         {{1, 2, "s"}, {2, 3, "s"}, {3, 2, "f"}}),
            ValidationErrorKind::CycleFound);
  EXPECT_EQ(failure_kind({{1, "a"}, {2, "b"}, {3, "c"}}, {{1, 3, "s"}, {2, 3, "f"}}),
            ValidationErrorKind::MultipleSources);
}

TEST(Validate, CycleErrorListsTheCycle) {
  try {
    validate({{1, "a"}, {2, "b"}, {3, "c"}}, {{1, 2, "s"}, {2, 3, "s"}, {3, 2, "f"}});
    FAIL();
  } catch (const ValidationError& e) {
    ASSERT_EQ(e.kind(), ValidationErrorKind::CycleFound);
    std::vector<NodeId> cycle = e.nodes();
    std::sort(cycle.begin(), cycle.end());
    EXPECT_EQ(cycle, (std::vector<NodeId>{2, 3}));
  }
}

TEST(Validate, IndexesArcsAndLabels) {
  DecisionStructure z = build({"a", "b", "c", "d"},
                              {{0, 1, "s"}, {0, 2, "f"}, {1, 2, "f"}, {2, 3, "s"}});
  EXPECT_EQ(z.labels(), (std::vector<ReturnValue>{"f", "s"}));
  EXPECT_EQ(z.successor(0, "s"), 1);
  EXPECT_EQ(z.successor(0, "f"), 2);
  EXPECT_EQ(z.successor(3, "s"), std::nullopt);
  EXPECT_EQ(z.in_arcs(2).size(), 2u);
  EXPECT_EQ(z.topological_order(), (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(z.sinks(), std::vector<int>{3});
  EXPECT_EQ(z.index(2), 2);
  EXPECT_FALSE(z.find(9).has_value());
  EXPECT_THROW(z.index(9), Error);
}

TEST(Select, FollowsMatchingArcs) {
  DecisionStructure z = fallback_then_sequence();
  EXPECT_EQ(select(z, {{"a", "s"}}), 0);
  EXPECT_EQ(select(z, {}), 0);
  EXPECT_EQ(select(z, {{"a", "f"}, {"b", "f"}}), 1);
  EXPECT_EQ(select(z, {{"a", "f"}, {"b", "s"}}), 2);
  EXPECT_EQ(selection_path(z, {{"a", "f"}, {"b", "s"}}), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(derived_return(z, {{"a", "f"}, {"b", "s"}, {"c", "m"}}), ReturnValue("m"));
  EXPECT_EQ(derived_return(z, {{"a", "f"}, {"b", "s"}}), std::nullopt);
}

TEST(StructuralEquivalence, IgnoresIdsAndOrder) {
  DecisionStructure a = build({"a", "b", "c"}, {{0, 1, "f"}, {1, 2, "s"}});
  DecisionStructure b = validate({{30, "c"}, {10, "a"}, {20, "b"}},
                                 {{20, 30, "s"}, {10, 20, "f"}});
  auto iso = structurally_equivalent(a, b, true);
  ASSERT_TRUE(iso.has_value());
  EXPECT_EQ(iso->mapping, (std::vector<int>{1, 2, 0}));
}

TEST(StructuralEquivalence, RespectsLabels) {
  DecisionStructure a = build({"a", "b"}, {{0, 1, "f"}});
  DecisionStructure b = build({"a", "b"}, {{0, 1, "s"}});
  DecisionStructure c = build({"x", "y"}, {{0, 1, "f"}});
  EXPECT_FALSE(structurally_equivalent(a, b).has_value());
  EXPECT_TRUE(structurally_equivalent(a, c).has_value());
  EXPECT_FALSE(structurally_equivalent(a, c, true).has_value());
}

TEST(StructuralEquivalence, DistinguishesShapesWithEqualCounts) {
  // Same node, arc and label counts; different wiring.
  DecisionStructure a = build({"a", "b", "c", "d"}, {{0, 1, "s"}, {0, 2, "f"}, {1, 3, "s"}});
  DecisionStructure b = build({"a", "b", "c", "d"}, {{0, 1, "s"}, {0, 2, "f"}, {2, 3, "s"}});
  EXPECT_FALSE(structurally_equivalent(a, b).has_value());
}

TEST(Induced, KeepsInternalArcs) {
  DecisionStructure z = build({"a", "b", "c", "d"},
                              {{0, 1, "s"}, {0, 2, "f"}, {1, 2, "f"}, {2, 3, "s"}});
  DecisionStructure sub = induced(z, {1, 2, 3});
  EXPECT_EQ(sub.size(), 3u);
  EXPECT_EQ(sub.arcs().size(), 2u);
  EXPECT_EQ(sub.action(sub.source()), "b");
  EXPECT_THROW(induced(z, {1, 3}), ValidationError);
}

}  // namespace
}  // namespace decstruct
