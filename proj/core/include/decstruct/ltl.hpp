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

#include <memory>
#include <string>
#include <vector>

#include "decstruct/error.hpp"

namespace decstruct {

enum class LtlKind {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Next,
  Until,
  Release,
  Eventually,
  Always,
};

struct LtlNode;
using Ltl = std::shared_ptr<const LtlNode>;

// An atom is either a bare name (var empty, value holds the name) or an
// explicit Var=value pair. WorldModel::resolve turns bare names into pairs.
struct LtlNode {
  LtlKind kind;
  std::string var;
  std::string value;
  std::vector<Ltl> args;
};

namespace ltl {

Ltl truth();
Ltl falsity();
Ltl atom(std::string name);
Ltl atom(std::string var, std::string value);
Ltl negate(Ltl a);
Ltl conj(Ltl a, Ltl b);
Ltl disj(Ltl a, Ltl b);
// Left-nested; an empty list gives True (resp. False).
Ltl conj(const std::vector<Ltl>& parts);
Ltl disj(const std::vector<Ltl>& parts);
Ltl implies(Ltl a, Ltl b);
Ltl next(Ltl a);
Ltl until(Ltl a, Ltl b);
Ltl release(Ltl a, Ltl b);
Ltl eventually(Ltl a);
Ltl always(Ltl a);

}  // namespace ltl

// Concrete syntax, loosest binding first: "->" (right associative), "|", "&",
// "U" and "R" (right associative), then the prefix operators "!", "X", "F",
// "G". Atoms are names or Var=value; "true" and "false" are constants.
Ltl parse_ltl(const std::string& text);

// Prints with the fewest parentheses that parse back to the same tree.
std::string to_string(const Ltl& f);

bool equal(const Ltl& a, const Ltl& b);
bool is_propositional(const Ltl& f);

// Operands of a top-level chain of conjunctions, left to right.
std::vector<Ltl> conjuncts(const Ltl& f);

}  // namespace decstruct
