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

#include "decstruct/checker.hpp"
#include "decstruct/ltl.hpp"
#include "decstruct/world.hpp"
#include "support/oracles.hpp"

namespace decstruct {
namespace {

WorldModel pq() { return parse_world("bool p q\n"); }

Ltl f(const WorldModel& w, const std::string& text) { return w.resolve(parse_ltl(text)); }

TEST(Entails, Valid) {
  WorldModel w = pq();
  EXPECT_TRUE(entails(f(w, "G p"), f(w, "F p"), w).holds);
  EXPECT_TRUE(entails(f(w, "p U q"), f(w, "F q"), w).holds);
  EXPECT_TRUE(entails(f(w, "G F p & G (p -> X q)"), f(w, "G F q"), w).holds);
  EXPECT_TRUE(entails(f(w, "true"), f(w, "p | !p"), w).holds);
  EXPECT_TRUE(entails(f(w, "false"), f(w, "p"), w).holds);
  EXPECT_TRUE(entails(f(w, "!(p R q)"), f(w, "!p U !q"), w).holds);
}

TEST(Entails, InvalidGivesReplayableLasso) {
  WorldModel w = pq();
  Ltl premise = f(w, "p");
  Ltl conclusion = f(w, "G p");
  Verdict v = entails(premise, conclusion, w);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.counterexample);
  EXPECT_FALSE(v.counterexample->cycle.empty());
  EXPECT_TRUE(oracle::lasso_satisfies(premise, w, *v.counterexample));
  EXPECT_FALSE(oracle::lasso_satisfies(conclusion, w, *v.counterexample));
  EXPECT_GT(v.states_explored, 0u);
}

TEST(Entails, ReportsFailedConjunct) {
  WorldModel w = pq();
  Verdict v = entails(f(w, "G p"), f(w, "F p & G q & p"), w);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(v.failed_conjunct, 1u);
  CheckOptions whole;
  whole.split_conclusion = false;
  Verdict joint = entails(f(w, "G p"), f(w, "F p & G q & p"), w, whole);
  EXPECT_FALSE(joint.holds);
  EXPECT_EQ(joint.failed_conjunct, 0u);
}

TEST(Entails, WorldDomainsRespected) {
  WorldModel w = parse_world("var C { red green blue }\n");
  // Exactly one colour holds in every letter.
  EXPECT_TRUE(entails(f(w, "G !red & G !green"), f(w, "G blue"), w).holds);
  EXPECT_FALSE(entails(f(w, "G !red"), f(w, "G blue"), w).holds);
}

TEST(Entails, StateLimit) {
  WorldModel w = parse_world("bool a b c d e\n");
  CheckOptions options;
  options.max_states = 3;
  EXPECT_THROW(entails(f(w, "G F a & G F b"), f(w, "G F (a & b) | F G c"), w, options),
               ResourceLimitError);
}

TEST(Entails, BoundTruncatesSearch) {
  WorldModel w = pq();
  Ltl premise = f(w, "X X X X !p");
  Ltl conclusion = f(w, "G p");
  CheckOptions shallow;
  shallow.bound = 1;
  Verdict near = entails(f(w, "G p"), f(w, "G F p"), w, shallow);
  EXPECT_TRUE(near.holds);
  Verdict missed = entails(premise, conclusion, w, shallow);
  EXPECT_TRUE(missed.holds);
  EXPECT_TRUE(missed.bounded);
  CheckOptions deep;
  deep.bound = 12;
  Verdict found = entails(premise, conclusion, w, deep);
  EXPECT_FALSE(found.holds);
  ASSERT_TRUE(found.counterexample);
  EXPECT_TRUE(oracle::lasso_satisfies(premise, w, *found.counterexample));
  EXPECT_FALSE(oracle::lasso_satisfies(conclusion, w, *found.counterexample));
  EXPECT_FALSE(entails(premise, conclusion, w).bounded);
}

TEST(FindLasso, SatisfiableAndNot) {
  WorldModel w = pq();
  auto trace = find_lasso(f(w, "F G p & G F !q"), w);
  ASSERT_TRUE(trace);
  EXPECT_TRUE(oracle::lasso_satisfies(f(w, "F G p & G F !q"), w, *trace));
  EXPECT_FALSE(find_lasso(f(w, "G p & F !p"), w));
  EXPECT_FALSE(find_lasso(f(w, "G F p & F G !p"), w));
}

TEST(FindLasso, RandomFormulasAgreeWithReplay) {
  WorldModel w = parse_world("var X { x0 x1 x2 }\nbool p\n");
  oracle::Rng rng(oracle::kSeed + 20);
  int satisfiable = 0;
  for (int i = 0; i < 150; ++i) {
    Ltl g = oracle::random_ltl(rng, w, 3);
    auto trace = find_lasso(g, w);
    auto negated = find_lasso(ltl::negate(g), w);
    // Every infinite word satisfies g or its negation.
    EXPECT_TRUE(trace || negated) << to_string(g);
    if (trace) {
      ++satisfiable;
      EXPECT_TRUE(oracle::lasso_satisfies(g, w, *trace)) << to_string(g);
    }
    if (negated) EXPECT_FALSE(oracle::lasso_satisfies(g, w, *negated)) << to_string(g);
  }
  EXPECT_GT(satisfiable, 0);
}

}  // namespace
}  // namespace decstruct
