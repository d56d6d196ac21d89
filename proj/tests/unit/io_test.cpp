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
#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "decstruct/architectures.hpp"
#include "decstruct/io.hpp"
#include "decstruct/modules.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace decstruct {
namespace {

TEST(ParseStructure, Basic) {
  DecisionStructure z = parse_structure(
      "decstruct v1\n# comment\nnode 4 a\nnode 9 b\n\nnode 2 c\narc 4 9 s\narc 4 2 f\n"
      "source 4\n");
  EXPECT_EQ(z.size(), 3u);
  EXPECT_EQ(z.id(z.source()), 4);
  EXPECT_EQ(z.arcs().size(), 2u);
  EXPECT_EQ(z.action(*z.successor(z.source(), "f")), "c");
}

TEST(ParseStructure, Errors) {
  auto line_of = [](const std::string& text) {
    try {
      parse_structure(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("node 0 a\n"), 1);
  EXPECT_EQ(line_of("decstruct v2\n"), 1);
  EXPECT_EQ(line_of("decstruct v1\nnode x a\n"), 2);
  EXPECT_EQ(line_of("decstruct v1\nnode 0 a\narc 0 1\n"), 3);
  EXPECT_EQ(line_of("decstruct v1\nnode 0 a\nfoo\n"), 3);
  EXPECT_EQ(line_of("decstruct v1\nnode 0 a\nnode 1 b\narc 0 1 s\nsource 1\n"), 5);
  EXPECT_THROW(parse_structure(""), ParseError);
  EXPECT_THROW(parse_structure("decstruct v1\nnode 0 a\nnode 1 b\n"), ValidationError);
}

TEST(FormatStructure, RoundTrip) {
  oracle::Rng rng(oracle::kSeed + 30);
  for (int i = 0; i < 100; ++i) {
    DecisionStructure z = oracle::random_structure(rng, 2 + i % 12, 1 + i % 4);
    DecisionStructure back = parse_structure(format_structure(z));
    EXPECT_EQ(back.ids(), z.ids());
    EXPECT_EQ(back.actions(), z.actions());
    EXPECT_EQ(back.arc_decls().size(), z.arc_decls().size());
    EXPECT_TRUE(structurally_equivalent(back, z, true));
    EXPECT_EQ(format_structure(back), format_structure(z));
  }
  for (const char* name : {"z1.ds", "z2.ds", "not_bt.ds"}) {
    DecisionStructure z = corpus::structure(name);
    EXPECT_EQ(format_structure(parse_structure(format_structure(z))), format_structure(z));
  }
}

TEST(RenderDot, SingleNode) {
  DecisionStructure z = validate({{3, "only"}}, {});
  EXPECT_EQ(render_dot(z),
            "digraph decstruct {\n  node [shape=box];\n  n3 [label=\"only\", peripheries=2];\n}\n");
}

TEST(RenderDot, QuotesLabels) {
  DecisionStructure z = build({"say \"hi\"", "b"}, {{0, 1, "s"}});
  std::string dot = render_dot(z);
  EXPECT_NE(dot.find(R"(label="say \"hi\"")"), std::string::npos);
  EXPECT_NE(dot.find("n0 -> n1 [label=\"s\"];"), std::string::npos);
}

void count_factors(const DecompositionNode& d, int& n) {
  for (const auto& f : d.factors) {
    if (f.kind == DecompositionKind::Leaf) continue;
    ++n;
    count_factors(f, n);
  }
}

TEST(RenderDot, ClustersAreModules) {
  DecisionStructure z = construct(parse_architecture(read_file(corpus::path("fig5.arch"))));
  DecompositionNode d = decompose(z);
  std::string dot = render_dot(z, &d);
  int expected = 0;
  count_factors(d, expected);
  EXPECT_GT(expected, 0);

  std::istringstream in(dot);
  std::string line;
  int clusters = 0;
  bool member_line = false;
  while (std::getline(in, line)) {
    if (line.find("subgraph cluster_") != std::string::npos) {
      ++clusters;
      std::getline(in, line);  // label
      member_line = true;
      continue;
    }
    if (!member_line) continue;
    member_line = false;
    std::istringstream words(line);
    std::string word;
    NodeSet members;
    while (words >> word) {
      ASSERT_EQ(word.front(), 'n');
      members.push_back(z.index(std::stoi(word.substr(1))));
    }
    std::sort(members.begin(), members.end());
    EXPECT_TRUE(is_module(z, members)) << line;
  }
  EXPECT_EQ(clusters, expected);
  EXPECT_EQ(dot.find("peripheries=2"), dot.rfind("peripheries=2"));
}

TEST(ReadFile, MissingFile) {
  EXPECT_THROW(read_file("/nonexistent/decstruct.ds"), Error);
  EXPECT_FALSE(read_file(corpus::path("z1.ds")).empty());
}

}  // namespace
}  // namespace decstruct
