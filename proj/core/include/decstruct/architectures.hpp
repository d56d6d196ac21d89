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
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "decstruct/structure.hpp"

namespace decstruct {

inline const ReturnValue kSuccess = "s";
inline const ReturnValue kFailure = "f";
inline const ReturnValue kTrue = "top";
inline const ReturnValue kFalse = "bot";
inline const ReturnValue kRuleValue = "d";

// A k-BT: either a leaf naming an action or an operator *_op over an ordered
// list of children. Sequence is *_s and Fallback is *_f.
struct Kbt {
  std::string action;
  ReturnValue op;
  std::vector<Kbt> children;

  bool is_leaf() const { return children.empty(); }

  static Kbt leaf(std::string action);
  static Kbt node(ReturnValue op, std::vector<Kbt> children);

  friend bool operator==(const Kbt&, const Kbt&) = default;
};

// A decision tree. Leaves have no branches; predicates have exactly two,
// the true branch first.
struct Dt {
  std::string action;
  std::vector<Dt> branches;

  bool is_leaf() const { return branches.empty(); }

  static Dt leaf(std::string action);
  static Dt predicate(std::string action, Dt if_true, Dt if_false);

  friend bool operator==(const Dt&, const Dt&) = default;
};

// A teleo-reactive program: rules scanned in order. Each item's action returns
// the value d while its precondition does not hold.
struct TrProgram {
  std::vector<std::string> items;

  friend bool operator==(const TrProgram&, const TrProgram&) = default;
};

using Architecture = std::variant<Kbt, Dt, TrProgram>;

// Leaves of t, left to right.
std::vector<std::string> leaves(const Kbt& t);

// Distinct operator values used in t, sorted.
std::vector<ReturnValue> operator_values(const Kbt& t);

// Node i of the result is leaf i of t (left to right) with id i.
DecisionStructure construct_kbt(const Kbt& t);
// As construct_kbt, but rejects operators other than s and f.
DecisionStructure construct_bt(const Kbt& t);
// Preorder numbering; true branches labelled "top", false branches "bot".
DecisionStructure construct_dt(const Dt& t);
DecisionStructure construct_tr(const TrProgram& p);

// Merges parent/child operators with equal values and removes single-child
// operators.
Kbt compress(const Kbt& t);

// Equivalent compressed k-BT if every quotient of the module decomposition is
// a path.
std::optional<Kbt> extract_kbt(const DecisionStructure& z);

// Equivalent decision tree if z is a binary out-tree using exactly two labels
// (or a single node). true_label selects the branch printed first; when
// omitted it is "top" if present, otherwise the smaller label.
std::optional<Dt> extract_dt(const DecisionStructure& z,
                             std::optional<ReturnValue> true_label = std::nullopt);

// Parenthesised prefix syntax: (seq a (fb b c)), (op m a b), (dt p a b),
// (tr a b c). Bare identifiers are leaves.
Architecture parse_architecture(const std::string& text);
std::string to_dsl(const Kbt& t);
std::string to_dsl(const Dt& t);
std::string to_dsl(const TrProgram& p);
std::string to_dsl(const Architecture& a);

DecisionStructure construct(const Architecture& a);

}  // namespace decstruct
