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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decstruct/ltl.hpp"

namespace decstruct {

class UnknownAtomError : public Error {
 public:
  using Error::Error;
};

// Set of world states (letters), stored as a bit vector.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t size, bool full = false);

  std::size_t size() const { return size_; }
  bool contains(std::size_t letter) const { return bits_[letter / 64] >> (letter % 64) & 1u; }
  void insert(std::size_t letter) { bits_[letter / 64] |= std::uint64_t{1} << (letter % 64); }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool full() const { return count() == size_; }
  std::vector<std::size_t> elements() const;

  StateSet operator&(const StateSet& o) const;
  StateSet operator|(const StateSet& o) const;
  StateSet operator~() const;
  StateSet& operator&=(const StateSet& o);
  StateSet& operator|=(const StateSet& o);
  bool operator==(const StateSet& o) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct Variable {
  std::string name;
  std::vector<std::string> values;
  bool boolean = false;
};

// Finite world: multi-valued variables, named LTL rules and an initial
// condition. A letter is one full assignment of values to variables, encoded
// in mixed radix with the first variable most significant, so letter order
// follows declaration order of the domains.
class WorldModel {
 public:
  void add_variable(std::string name, std::vector<std::string> values);
  // Domain {false, true}; the bare name stands for name=true.
  void add_boolean(std::string name);
  void add_rule(std::string name, const Ltl& formula);
  void set_init(const Ltl& formula);

  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<std::pair<std::string, Ltl>>& rules() const { return rules_; }
  const Ltl& init() const { return init_; }

  std::size_t letter_count() const { return letters_; }
  int value(std::size_t letter, int var) const { return table_[letter * vars_.size() + var]; }

  // (variable index, value index) of an atom; throws UnknownAtomError.
  std::pair<int, int> resolve_atom(const std::string& var, const std::string& value) const;
  // Copy of f with every atom in Var=value form; throws UnknownAtomError.
  Ltl resolve(const Ltl& f) const;

  // Truth of a propositional formula in a letter.
  bool holds(const Ltl& prop, std::size_t letter) const;
  StateSet states(const Ltl& prop) const;
  StateSet all_states() const { return StateSet(letters_, true); }

  // Compact rendering: value names alone when unambiguous, Boolean atoms by
  // their variable name.
  std::string format(const Ltl& f) const;
  std::string format_letter(std::size_t letter) const;
  std::string atom_text(int var, int value) const;

  // Propositional formula denoting exactly the given set, built as a decision
  // diagram over the variables in declaration order.
  Ltl to_formula(const StateSet& set) const;

  // "Exactly one value" constraints for every non-Boolean variable.
  std::vector<Ltl> disjointedness() const;
  // Conjunction of all rules.
  Ltl rules_conjunction() const;

 private:
  void rebuild();
  Ltl formula_for(std::size_t var, std::size_t first, const StateSet& set) const;

  std::vector<Variable> vars_;
  std::vector<std::pair<std::string, Ltl>> rules_;
  Ltl init_ = ltl::truth();
  std::size_t letters_ = 1;
  std::vector<std::size_t> stride_;
  std::vector<std::uint8_t> table_;
};

// Lines of the form
//   var Battery { b0 bLow bMid bHigh }
//   bool at
//   rule progression: calm -> X !storm
//   init: !storm & bHigh
// with '#' comments.
WorldModel parse_world(const std::string& text);

}  // namespace decstruct
