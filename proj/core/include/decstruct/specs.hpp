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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "decstruct/structure.hpp"
#include "decstruct/world.hpp"

namespace decstruct {

class MissingSpecError : public Error {
 public:
  using Error::Error;
};

// Return conditions (propositional, in declaration order) and an LTL model.
// When conditions of two values overlap, the value declared first wins in
// the overlap.
struct ActionSpec {
  std::string name;
  std::vector<std::pair<ReturnValue, Ltl>> returns;
  Ltl model = ltl::truth();
};

// Pure condition action: returns s where cond holds and f elsewhere, model
// True.
ActionSpec condition_action(std::string name, const Ltl& cond);

using SpecTable = std::map<std::string, ActionSpec>;

enum class OverlapPolicy {
  // Earlier return values take precedence where conditions overlap.
  FirstMatch,
  // Overlapping conditions are rejected.
  Strict,
};

// States in which spec returns r, after applying declaration priority.
StateSet returns_in(const ActionSpec& spec, const ReturnValue& r, const WorldModel& world);
std::optional<ReturnValue> return_value(const ActionSpec& spec, const WorldModel& world,
                                        std::size_t letter);

// Pairs of return values whose declared conditions share a state.
std::vector<std::pair<ReturnValue, ReturnValue>> overlapping_returns(const ActionSpec& spec,
                                                                     const WorldModel& world);

// Return values of every action in specs at the given letter.
AbstractState abstract_state(const SpecTable& specs, const WorldModel& world,
                             std::size_t letter);

// Action file syntax:
//   action GoTo { model: <ltl>; returns s: at; returns f: !at & windy }
//   condition b0: b0
// Atoms are resolved against world.
SpecTable parse_actions(const std::string& text, const WorldModel& world,
                        OverlapPolicy policy = OverlapPolicy::FirstMatch);

std::string format_actions(const SpecTable& specs, const WorldModel& world);

enum class PropKind { True, False, WorldAtom, ReturnAtom, Not, And, Or };

struct PropNode;
using Prop = std::shared_ptr<const PropNode>;

// Propositional formula over world atoms (var=value) or return atoms
// (action returns value). Subformulas are shared, so the selection
// conditions of a whole structure form a DAG of linear size.
struct PropNode {
  PropKind kind;
  std::string name;
  std::string value;
  std::vector<Prop> args;
};

namespace prop {
Prop truth();
Prop falsity();
Prop returns(std::string action, ReturnValue value);
Prop world_atom(std::string var, std::string value);
Prop negate(Prop a);
Prop conj(std::vector<Prop> parts);
Prop disj(std::vector<Prop> parts);
}  // namespace prop

std::string to_string(const Prop& p);
// Evaluates return atoms against an abstract state; world atoms are rejected.
bool evaluate(const Prop& p, const AbstractState& w);
// Grounds return atoms through specs.
StateSet ground(const Prop& p, const SpecTable& specs, const WorldModel& world);

// Condition under which select() stops at each node, in terms of return
// atoms.
std::vector<Prop> selection_conditions(const DecisionStructure& z);
Prop selection_condition(const DecisionStructure& z, int v);
Prop return_condition(const DecisionStructure& z, const ReturnValue& r);

// Grounded variants.
std::vector<StateSet> selection_sets(const DecisionStructure& z, const SpecTable& specs,
                                     const WorldModel& world);
StateSet return_set(const DecisionStructure& z, const ReturnValue& r, const SpecTable& specs,
                    const WorldModel& world);

// Disjunction over actions a of (states selecting a node labelled a) & model(a).
Ltl build_psi(const DecisionStructure& z, const SpecTable& specs, const WorldModel& world);

// Specification of z used as a single action: return conditions for the
// given labels (omitting labels never returned) and model build_psi(z).
ActionSpec derived_spec(const DecisionStructure& z, const SpecTable& specs,
                        const WorldModel& world, std::string name,
                        const std::vector<ReturnValue>& labels);

}  // namespace decstruct
